#pragma once

// Pauli algebra and stabilizer codes on up to 64 qubits (dense routines: up to 12).
//
// A Pauli is stored in letter form i^phase · P_0 ⊗ … ⊗ P_{n-1}, with bit j of the x/z
// masks describing qubit j (X: x, Z: z, Y: both). Qubit 0 is the most significant
// tensor factor, matching RegisterLayout order.

#include "locbound/error.hpp"
#include "locbound/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace locbound {

inline constexpr std::size_t kMaxPauliQubits = 64;
inline constexpr std::size_t kMaxDenseQubits = 12;

class Pauli {
 public:
  Pauli() = default;

  Pauli(std::size_t n, std::uint64_t x, std::uint64_t z, int phase = 0) : n_(n), x_(x), z_(z), phase_(phase & 3) {
    if (n > kMaxPauliQubits) throw CapacityError("Pauli operators support at most 64 qubits");
    const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    if ((x & ~mask) || (z & ~mask)) throw InputError("Pauli mask exceeds qubit count");
  }

  static Pauli identity(std::size_t n) { return Pauli(n, 0, 0, 0); }

  /// Single-qubit letter (X, Y or Z) on `qubit`.
  static Pauli single(std::size_t n, std::size_t qubit, char letter) {
    if (qubit >= n) throw InputError("qubit index out of range");
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    switch (letter) {
      case 'I': return Pauli(n, 0, 0);
      case 'X': return Pauli(n, bit, 0);
      case 'Y': return Pauli(n, bit, bit);
      case 'Z': return Pauli(n, 0, bit);
      default: throw InputError(std::string("bad Pauli letter '") + letter + "'");
    }
  }

  /// Parses "[+|-][i]LETTERS" with letters from {I, X, Y, Z}; `_` is accepted for I.
  static Pauli parse(std::string_view text) {
    int phase = 0;
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      if (text[pos] == '-') phase = 2;
      ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
      phase += 1;
      ++pos;
    }
    const auto letters = text.substr(pos);
    if (letters.empty()) throw InputError("empty Pauli string");
    if (letters.size() > kMaxPauliQubits) throw CapacityError("Pauli operators support at most 64 qubits");
    std::uint64_t x = 0, z = 0;
    for (std::size_t j = 0; j < letters.size(); ++j) {
      const std::uint64_t bit = std::uint64_t{1} << j;
      switch (letters[j]) {
        case 'I':
        case '_': break;
        case 'X': x |= bit; break;
        case 'Y': x |= bit; z |= bit; break;
        case 'Z': z |= bit; break;
        default:
          throw InputError("bad character '" + std::string(1, letters[j]) + "' in Pauli string '" +
                           std::string(text) + "'");
      }
    }
    return Pauli(letters.size(), x, z, phase);
  }

  std::size_t n() const noexcept { return n_; }
  std::uint64_t x() const noexcept { return x_; }
  std::uint64_t z() const noexcept { return z_; }
  int phase() const noexcept { return phase_; }

  char letter(std::size_t j) const {
    const bool xb = (x_ >> j) & 1, zb = (z_ >> j) & 1;
    return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }

  std::size_t weight() const noexcept { return static_cast<std::size_t>(std::popcount(x_ | z_)); }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n_; ++j) {
      if (((x_ | z_) >> j) & 1) out.push_back(j);
    }
    return out;
  }

  bool is_hermitian() const noexcept { return (phase_ & 1) == 0; }
  bool is_identity_up_to_phase() const noexcept { return x_ == 0 && z_ == 0; }

  std::string to_string() const {
    static constexpr const char* kPrefix[] = {"+", "+i", "-", "-i"};
    std::string out = kPrefix[phase_];
    for (std::size_t j = 0; j < n_; ++j) out += letter(j);
    return out;
  }

  bool commutes(const Pauli& other) const {
    require_same_size(other);
    return std::popcount((x_ & other.z_) ^ (z_ & other.x_)) % 2 == 0;
  }

  bool equal_up_to_phase(const Pauli& other) const { return n_ == other.n_ && x_ == other.x_ && z_ == other.z_; }

  friend bool operator==(const Pauli&, const Pauli&) = default;

  friend Pauli operator*(const Pauli& a, const Pauli& b) {
    a.require_same_size(b);
    // Work in X^x Z^z form, where Y = i X Z.
    const int pa = a.phase_ + std::popcount(a.x_ & a.z_);
    const int pb = b.phase_ + std::popcount(b.x_ & b.z_);
    const std::uint64_t x = a.x_ ^ b.x_, z = a.z_ ^ b.z_;
    const int p = pa + pb + 2 * std::popcount(a.z_ & b.x_) - std::popcount(x & z);
    return Pauli(a.n_, x, z, ((p % 4) + 4) % 4);
  }

  /// Dense 2^n × 2^n matrix.
  Matrix matrix() const {
    require_dense();
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_);
    Matrix m = Matrix::Identity(d, d);
    apply_left(m);
    return m;
  }

  /// v <- P v on a 2^n-dimensional vector.
  Vector apply(const Vector& v) const {
    require_dense();
    Vector out(v.size());
    const auto [xi, zi, scale] = index_form();
    for (Eigen::Index b = 0; b < v.size(); ++b) {
      const auto ub = static_cast<std::uint64_t>(b);
      const double sign = std::popcount(ub & zi) % 2 ? -1.0 : 1.0;
      out(static_cast<Eigen::Index>(ub ^ xi)) = scale * sign * v(b);
    }
    return out;
  }

  /// m <- P m.
  void apply_left(Matrix& m) const {
    require_dense();
    const Matrix copy = m;
    const auto [xi, zi, scale] = index_form();
    for (Eigen::Index b = 0; b < m.rows(); ++b) {
      const auto ub = static_cast<std::uint64_t>(b);
      const double sign = std::popcount(ub & zi) % 2 ? -1.0 : 1.0;
      m.row(static_cast<Eigen::Index>(ub ^ xi)) = (scale * sign) * copy.row(b);
    }
  }

 private:
  struct IndexForm {
    std::uint64_t x, z;
    Complex scale;
  };

  // Masks over basis-state indices (qubit j is index bit n-1-j) and the scalar in front
  // of X^x Z^z.
  IndexForm index_form() const {
    std::uint64_t xi = 0, zi = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      if ((x_ >> j) & 1) xi |= std::uint64_t{1} << (n_ - 1 - j);
      if ((z_ >> j) & 1) zi |= std::uint64_t{1} << (n_ - 1 - j);
    }
    static constexpr Complex kI[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return {xi, zi, kI[(phase_ + std::popcount(x_ & z_)) % 4]};
  }

  void require_same_size(const Pauli& other) const {
    if (n_ != other.n_) throw InputError("Pauli operators act on different qubit counts");
  }

  void require_dense() const {
    if (n_ > kMaxDenseQubits) throw CapacityError("dense Pauli matrices support at most 12 qubits");
  }

  std::size_t n_ = 0;
  std::uint64_t x_ = 0, z_ = 0;
  int phase_ = 0;
};

inline Pauli parse_pauli(std::string_view text) { return Pauli::parse(text); }
inline bool commutes(const Pauli& a, const Pauli& b) { return a.commutes(b); }

namespace detail {

/// Symplectic vector (x, z) with a record of which generators were combined into it.
struct SymplecticRow {
  std::uint64_t x = 0, z = 0;
  std::uint64_t combo = 0;

  bool zero() const { return x == 0 && z == 0; }
  bool bit(std::size_t i, std::size_t n) const { return i < n ? (x >> i) & 1 : (z >> (i - n)) & 1; }
  void add(const SymplecticRow& o) {
    x ^= o.x;
    z ^= o.z;
    combo ^= o.combo;
  }
};

inline int symplectic_form(std::uint64_t x1, std::uint64_t z1, std::uint64_t x2, std::uint64_t z2) {
  return std::popcount((x1 & z2) ^ (z1 & x2)) & 1;
}

}  // namespace detail

class StabilizerCode {
 public:
  /// Validates `generators`: uniform size, Hermitian, pairwise commuting, independent,
  /// and -I not in the generated group.
  explicit StabilizerCode(std::vector<Pauli> generators) : generators_(std::move(generators)) {
    if (generators_.empty()) throw InputError("stabilizer code needs at least one generator");
    n_ = generators_.front().n();
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      const auto& g = generators_[i];
      if (g.n() != n_) throw InputError("generators act on different qubit counts");
      if (!g.is_hermitian()) throw InputError("generator " + std::to_string(i) + " is not Hermitian");
      for (std::size_t j = 0; j < i; ++j) {
        if (!g.commutes(generators_[j])) {
          throw InputError("generators " + std::to_string(j) + " (" + generators_[j].to_string() + ") and " +
                           std::to_string(i) + " (" + g.to_string() + ") do not commute");
        }
      }
    }
    if (generators_.size() > kMaxPauliQubits) throw InputError("dependent generators: more generators than qubits");

    // Gaussian elimination over GF(2); a row that reduces to zero is a product of
    // generators equal to ±I.
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      detail::SymplecticRow row{generators_[i].x(), generators_[i].z(), std::uint64_t{1} << i};
      reduce(row);
      if (row.zero()) {
        const Pauli prod = product(row.combo);
        if (prod.phase() != 0) throw InputError("-I in stabilizer group (generators " + combo_string(row.combo) + ")");
        throw InputError("dependent generators (" + combo_string(row.combo) + ")");
      }
      insert_pivot(row);
    }
    compute_logicals();
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return n_ - generators_.size(); }
  std::size_t rank() const noexcept { return generators_.size(); }
  const std::vector<Pauli>& generators() const noexcept { return generators_; }
  const std::vector<Pauli>& logical_x() const noexcept { return logical_x_; }
  const std::vector<Pauli>& logical_z() const noexcept { return logical_z_; }

  /// Generator rows as (x mask, z mask).
  std::vector<std::pair<std::uint64_t, std::uint64_t>> symplectic_rows() const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (const auto& g : generators_) out.emplace_back(g.x(), g.z());
    return out;
  }

  /// Bit i is set iff `p` anticommutes with generator i.
  std::uint64_t syndrome_of(const Pauli& p) const {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (!generators_[i].commutes(p)) s |= std::uint64_t{1} << i;
    }
    return s;
  }

  bool in_centralizer(std::uint64_t x, std::uint64_t z) const {
    return std::all_of(generators_.begin(), generators_.end(),
                       [&](const Pauli& g) { return detail::symplectic_form(g.x(), g.z(), x, z) == 0; });
  }

  /// The group element with the given masks (with its sign), if any.
  std::optional<Pauli> group_element(std::uint64_t x, std::uint64_t z) const {
    detail::SymplecticRow row{x, z, 0};
    reduce(row);
    if (!row.zero()) return std::nullopt;
    return product(row.combo);
  }

  bool in_group_up_to_phase(const Pauli& p) const { return group_element(p.x(), p.z()).has_value(); }

  /// Product of the generators selected by the bit mask.
  Pauli product(std::uint64_t combo) const {
    Pauli out = Pauli::identity(n_);
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if ((combo >> i) & 1) out = out * generators_[i];
    }
    return out;
  }

 private:
  void reduce(detail::SymplecticRow& row) const {
    for (std::size_t p = 0; p < pivots_.size(); ++p) {
      if (row.bit(pivot_cols_[p], n_)) row.add(pivots_[p]);
    }
  }

  void insert_pivot(const detail::SymplecticRow& row) {
    std::size_t col = 0;
    while (!row.bit(col, n_)) ++col;
    // Keep earlier pivots reduced against the new pivot column.
    for (auto& p : pivots_) {
      if (p.bit(col, n_)) p.add(row);
    }
    pivots_.push_back(row);
    pivot_cols_.push_back(col);
  }

  std::string combo_string(std::uint64_t combo) const {
    std::string out;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if ((combo >> i) & 1) out += (out.empty() ? "" : ", ") + std::to_string(i);
    }
    return out;
  }

  void compute_logicals() {
    // Centralizer basis: null space of the symplectic form against the generators.
    const std::size_t cols = 2 * n_;
    std::vector<detail::SymplecticRow> eqs;
    for (const auto& g : generators_) eqs.push_back({g.z(), g.x(), 0});  // ⟨g, v⟩ = g.z·v.x + g.x·v.z
    std::vector<std::size_t> pivot_of_row;
    std::vector<int> pivot_row_of_col(cols, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < eqs.size(); ++c) {
      std::size_t sel = r;
      while (sel < eqs.size() && !eqs[sel].bit(c, n_)) ++sel;
      if (sel == eqs.size()) continue;
      std::swap(eqs[sel], eqs[r]);
      for (std::size_t i = 0; i < eqs.size(); ++i) {
        if (i != r && eqs[i].bit(c, n_)) eqs[i].add(eqs[r]);
      }
      pivot_row_of_col[c] = static_cast<int>(r);
      ++r;
    }
    std::vector<detail::SymplecticRow> pool;
    for (std::size_t free = 0; free < cols; ++free) {
      if (pivot_row_of_col[free] >= 0) continue;
      detail::SymplecticRow v;
      auto set = [&](std::size_t c) {
        if (c < n_) v.x ^= std::uint64_t{1} << c;
        else v.z ^= std::uint64_t{1} << (c - n_);
      };
      set(free);
      for (std::size_t c = 0; c < cols; ++c) {
        const int pr = pivot_row_of_col[c];
        if (pr >= 0 && eqs[static_cast<std::size_t>(pr)].bit(free, n_)) set(c);
      }
      pool.push_back(v);
    }
    // Drop the stabilizer directions: keep vectors independent modulo the group.
    std::vector<detail::SymplecticRow> basis = pivots_;
    std::vector<std::size_t> basis_cols = pivot_cols_;
    std::vector<detail::SymplecticRow> quotient;
    for (auto v : pool) {
      for (std::size_t b = 0; b < basis.size(); ++b) {
        if (v.bit(basis_cols[b], n_)) v.add(basis[b]);
      }
      if (v.zero()) continue;
      std::size_t col = 0;
      while (!v.bit(col, n_)) ++col;
      for (auto& b : basis) {
        if (b.bit(col, n_)) b.add(v);
      }
      basis.push_back(v);
      basis_cols.push_back(col);
      quotient.push_back(v);
    }
    // Symplectic Gram-Schmidt into anticommuting pairs.
    auto form = [](const detail::SymplecticRow& a, const detail::SymplecticRow& b) {
      return detail::symplectic_form(a.x, a.z, b.x, b.z);
    };
    while (!quotient.empty()) {
      const auto a = quotient.front();
      quotient.erase(quotient.begin());
      auto it = std::find_if(quotient.begin(), quotient.end(), [&](const auto& b) { return form(a, b) == 1; });
      if (it == quotient.end()) continue;
      const auto b = *it;
      quotient.erase(it);
      for (auto& c : quotient) {
        const int ca = form(c, a), cb = form(c, b);
        if (cb) {
          c.x ^= a.x;
          c.z ^= a.z;
        }
        if (ca) {
          c.x ^= b.x;
          c.z ^= b.z;
        }
      }
      logical_x_.push_back(Pauli(n_, a.x, a.z));
      logical_z_.push_back(Pauli(n_, b.x, b.z));
    }
  }

  std::size_t n_ = 0;
  std::vector<Pauli> generators_;
  std::vector<detail::SymplecticRow> pivots_;
  std::vector<std::size_t> pivot_cols_;
  std::vector<Pauli> logical_x_, logical_z_;
};

inline StabilizerCode validate_code(std::vector<Pauli> generators) { return StabilizerCode(std::move(generators)); }

struct CodeParams {
  std::size_t n = 0, k = 0, d = 0;
};

/// Exact distance, or only a lower bound when no logical operator has weight ≤ cap.
struct DistanceResult {
  std::optional<std::size_t> distance;
  std::size_t lower_bound = 0;
  std::optional<Pauli> witness;
};

namespace detail {

/// Calls fn(pauli) for every Pauli of exactly weight `w`, supports in lexicographic
/// order and letters X < Y < Z with the first support qubit most significant. Stops
/// early when fn returns true.
template <typename Fn>
bool for_each_pauli_of_weight(std::size_t n, std::size_t w, const std::vector<std::size_t>& qubits, Fn&& fn) {
  if (w > qubits.size()) return false;
  std::vector<std::size_t> idx(w);
  for (std::size_t i = 0; i < w; ++i) idx[i] = i;
  static constexpr char kLetters[] = {'X', 'Y', 'Z'};
  while (true) {
    std::vector<int> letters(w, 0);
    while (true) {
      std::uint64_t x = 0, z = 0;
      for (std::size_t i = 0; i < w; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << qubits[idx[i]];
        const char l = kLetters[letters[i]];
        if (l != 'Z') x |= bit;
        if (l != 'X') z |= bit;
      }
      if (fn(Pauli(n, x, z))) return true;
      std::size_t pos = w;
      while (pos > 0 && letters[pos - 1] == 2) letters[--pos] = 0;
      if (pos == 0) break;
      ++letters[pos - 1];
    }
    // Next combination.
    std::size_t i = w;
    while (i > 0 && idx[i - 1] == qubits.size() - w + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < w; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline std::vector<std::size_t> all_qubits(std::size_t n) {
  std::vector<std::size_t> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = i;
  return q;
}

}  // namespace detail

/// Smallest weight of a Pauli commuting with every generator but outside the group.
/// Weights above `cap` are not searched.
inline DistanceResult min_distance(const StabilizerCode& code, std::size_t cap = kMaxDenseQubits) {
  if (code.n() > kMaxDenseQubits) throw CapacityError("exhaustive distance supports at most 12 qubits");
  const auto qubits = detail::all_qubits(code.n());
  const std::size_t limit = std::min(cap, code.n());
  for (std::size_t w = 1; w <= limit; ++w) {
    std::optional<Pauli> found;
    detail::for_each_pauli_of_weight(code.n(), w, qubits, [&](const Pauli& p) {
      if (code.in_centralizer(p.x(), p.z()) && !code.in_group_up_to_phase(p)) {
        found = p;
        return true;
      }
      return false;
    });
    if (found) return {w, w, found};
  }
  return {std::nullopt, limit + 1, std::nullopt};
}

inline CodeParams code_params(const StabilizerCode& code) {
  const auto d = min_distance(code);
  return {code.n(), code.k(), d.distance.value_or(d.lower_bound)};
}

inline std::vector<std::size_t> checked_region(std::size_t n, std::vector<std::size_t> region) {
  std::sort(region.begin(), region.end());
  if (std::adjacent_find(region.begin(), region.end()) != region.end()) throw InputError("repeated qubit in region");
  if (!region.empty() && region.back() >= n) throw InputError("region qubit out of range");
  return region;
}

/// Knill-Laflamme correctability of erasures on `region`: every Pauli supported on the
/// region either anticommutes with a generator or lies in the group.
inline bool correctable_region(const StabilizerCode& code, std::vector<std::size_t> region) {
  region = checked_region(code.n(), std::move(region));
  for (std::size_t w = 1; w <= region.size(); ++w) {
    const bool bad = detail::for_each_pauli_of_weight(code.n(), w, region, [&](const Pauli& p) {
      return code.in_centralizer(p.x(), p.z()) && !code.in_group_up_to_phase(p);
    });
    if (bad) return false;
  }
  return true;
}

/// Dense projector onto the joint eigenspace with signs given by `syndrome`
/// (bit i set: eigenvalue -1 of generator i).
inline Matrix syndrome_projector(const StabilizerCode& code, std::uint64_t syndrome) {
  if (code.n() > kMaxDenseQubits) throw CapacityError("dense projectors support at most 12 qubits");
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << code.n());
  Matrix proj = Matrix::Identity(d, d);
  for (std::size_t i = 0; i < code.rank(); ++i) {
    Matrix applied = proj;
    code.generators()[i].apply_left(applied);
    const double s = (syndrome >> i) & 1 ? -1.0 : 1.0;
    proj = 0.5 * (proj + s * applied);
  }
  return proj;
}

inline Matrix code_projector(const StabilizerCode& code) { return syndrome_projector(code, 0); }

/// Syndrome projectors Π_s, computed on demand.
class SyndromeStructure {
 public:
  explicit SyndromeStructure(const StabilizerCode& code) : code_(code) {
    if (code.n() > 10) throw CapacityError("syndrome enumeration supports at most 10 qubits");
  }

  std::size_t count() const noexcept { return std::size_t{1} << code_.rank(); }
  Matrix projector(std::uint64_t syndrome) const {
    if (syndrome >= count()) throw InputError("syndrome out of range");
    return syndrome_projector(code_, syndrome);
  }
  Matrix code_projector() const { return projector(0); }

 private:
  StabilizerCode code_;
};

inline SyndromeStructure syndrome_projectors(const StabilizerCode& code) { return SyndromeStructure(code); }

/// Numeric Knill-Laflamme test on an explicit code-space projector: for every Pauli P
/// on `region`, Π P Π must be proportional to Π.
inline bool knill_laflamme_check(const Matrix& projector, std::size_t n, std::vector<std::size_t> region,
                                 double tol = 1e-9) {
  region = checked_region(n, std::move(region));
  if (n > kMaxDenseQubits) throw CapacityError("dense Knill-Laflamme check supports at most 12 qubits");
  const double rank = projector.trace().real();
  if (!(rank > 0.5)) throw InputError("projector has zero rank");
  for (std::size_t w = 1; w <= region.size(); ++w) {
    const bool bad = detail::for_each_pauli_of_weight(n, w, region, [&](const Pauli& p) {
      Matrix m = projector;
      p.apply_left(m);
      m = projector * m;
      const Complex c = m.trace() / rank;
      return (m - c * projector).cwiseAbs().maxCoeff() > tol;
    });
    if (bad) return false;
  }
  return true;
}

/// Isometry U : C^{2^k} → C^{2^n} onto the code space: projections of computational
/// basis states in lexicographic order, orthonormalized.
inline Matrix encoding_isometry(const StabilizerCode& code) {
  if (code.k() == 0) throw InputError("encoding isometry needs k >= 1");
  if (code.n() > kMaxDenseQubits) throw CapacityError("encoding isometry supports at most 12 qubits");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << code.n());
  const auto cols = static_cast<Eigen::Index>(std::size_t{1} << code.k());
  Matrix u(dim, cols);
  Eigen::Index found = 0;
  for (Eigen::Index b = 0; b < dim && found < cols; ++b) {
    Vector v = Vector::Zero(dim);
    v(b) = 1.0;
    for (const auto& g : code.generators()) v = 0.5 * (v + g.apply(v));
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index c = 0; c < found; ++c) v -= u.col(c).dot(v) * u.col(c);
    }
    const double norm = v.norm();
    if (norm <= 1e-10) continue;
    u.col(found++) = v / norm;
  }
  if (found != cols) throw InputError("code space dimension mismatch while building encoding isometry");
  return u;
}

/// Minimum-weight Pauli with the given syndrome; ties broken by support (lexicographic)
/// then letters X < Y < Z. It maps the syndrome space back into the code space.
inline Pauli correction_operator(const StabilizerCode& code, std::uint64_t syndrome) {
  if (code.rank() < 64 && syndrome >= (std::uint64_t{1} << code.rank())) throw InputError("syndrome out of range");
  if (syndrome == 0) return Pauli::identity(code.n());
  const auto qubits = detail::all_qubits(code.n());
  for (std::size_t w = 1; w <= code.n(); ++w) {
    std::optional<Pauli> found;
    detail::for_each_pauli_of_weight(code.n(), w, qubits, [&](const Pauli& p) {
      if (code.syndrome_of(p) == syndrome) {
        found = p;
        return true;
      }
      return false;
    });
    if (found) return *found;
  }
  throw InputError("no Pauli produces the requested syndrome");
}

/// Parses a code file: one signed Pauli string per line, `#` comments, blank lines ignored.
inline std::vector<Pauli> parse_code_text(const std::string& text, const std::string& source = "<code>") {
  std::vector<Pauli> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string word, extra;
    if (!(words >> word)) continue;
    if (words >> extra) throw ParseError(source, lineno, "expected one Pauli string per line");
    try {
      out.push_back(Pauli::parse(word));
    } catch (const InputError& e) {
      throw ParseError(source, lineno, e.what());
    } catch (const CapacityError& e) {
      throw ParseError(source, lineno, e.what());
    }
    if (out.back().n() != out.front().n()) throw ParseError(source, lineno, "generator length differs from the first generator");
  }
  if (out.empty()) throw ParseError(source, lineno, "no generators");
  return out;
}

}  // namespace locbound

#pragma once

// Connectivity graphs, local separable layers, depolarizing noise and simulation of
// error-correction modules on dense classical-quantum states.
//
// The classical system is a record of key=value entries carried in each branch label
// (for example "m0=1;m1=0"). Measurements write entries, conditional operations read
// them, and a relabel map may rewrite records between layers.

#include "locbound/error.hpp"
#include "locbound/linalg.hpp"
#include "locbound/qstate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace locbound {

class ConnectivityGraph {
 public:
  ConnectivityGraph() = default;

  explicit ConnectivityGraph(Labels vertices, const std::vector<std::pair<std::string, std::string>>& edges = {})
      : vertices_(std::move(vertices)), adjacency_(vertices_.size()) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (vertices_[i].empty()) throw InputError("vertex label must be non-empty");
      if (!index_.emplace(vertices_[i], i).second) throw InputError("duplicate vertex '" + vertices_[i] + "'");
    }
    for (const auto& [u, v] : edges) add_edge(u, v);
  }

  void add_edge(const std::string& u, const std::string& v) { add_edge(index(u), index(v)); }

  void add_edge(std::size_t u, std::size_t v) {
    if (u >= size() || v >= size()) throw InputError("edge endpoint out of range");
    if (u == v) throw InputError("self-loop on vertex '" + vertices_[u] + "'");
    auto insert = [](std::vector<std::size_t>& list, std::size_t x) {
      const auto it = std::lower_bound(list.begin(), list.end(), x);
      if (it != list.end() && *it == x) return false;
      list.insert(it, x);
      return true;
    };
    if (insert(adjacency_[u], v)) {
      insert(adjacency_[v], u);
      ++edge_count_;
    }
  }

  const Labels& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool has_vertex(const std::string& v) const { return index_.count(v) != 0; }

  std::size_t index(const std::string& v) const {
    const auto it = index_.find(v);
    if (it == index_.end()) throw InputError("unknown vertex '" + v + "'");
    return it->second;
  }

  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_.at(v); }

  bool adjacent(std::size_t u, std::size_t v) const {
    const auto& list = adjacency_.at(u);
    return std::binary_search(list.begin(), list.end(), v);
  }
  bool adjacent(const std::string& u, const std::string& v) const { return adjacent(index(u), index(v)); }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < size(); ++u) {
      for (auto v : adjacency_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

 private:
  Labels vertices_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Boundary of a vertex set given as a membership mask: vertices of U with a neighbour
/// outside U, plus vertices outside U with a neighbour inside. Sorted indices.
inline std::vector<std::size_t> boundary_indices(const ConnectivityGraph& g, const std::vector<bool>& in_u) {
  if (in_u.size() != g.size()) throw InputError("membership mask size differs from vertex count");
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.size(); ++v) {
    const auto& nb = g.neighbors(v);
    if (std::any_of(nb.begin(), nb.end(), [&](std::size_t w) { return in_u[w] != in_u[v]; })) out.push_back(v);
  }
  return out;
}

/// ∂U in graph vertex order.
inline Labels boundary(const ConnectivityGraph& g, const Labels& u) {
  std::vector<bool> in_u(g.size(), false);
  for (const auto& v : u) in_u[g.index(v)] = true;
  Labels out;
  for (auto i : boundary_indices(g, in_u)) out.push_back(g.vertices()[i]);
  return out;
}

/// Coordinates of each graph vertex (by index) in R^D, with edge-length constant c.
struct Embedding {
  std::size_t dimension = 2;
  double c = 1.0;
  std::vector<std::array<double, 3>> coords;
};

struct EmbeddingReport {
  bool spacing_ok = true;
  bool edges_ok = true;
  double min_distance = std::numeric_limits<double>::infinity();
  std::pair<std::size_t, std::size_t> closest_pair{0, 0};
  double max_edge_length = 0.0;
  std::pair<std::size_t, std::size_t> longest_edge{0, 0};

  bool ok() const noexcept { return spacing_ok && edges_ok; }
};

namespace detail {

inline double distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

struct CellKeyHash {
  std::size_t operator()(const std::array<long long, 3>& k) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
    return h;
  }
};

}  // namespace detail

/// Checks unit minimum spacing and edge lengths ≤ c, reporting the worst offenders.
inline EmbeddingReport validate_embedding(const ConnectivityGraph& g, const Embedding& e) {
  if (e.dimension < 1 || e.dimension > 3) throw InputError("embedding dimension must be 1, 2 or 3");
  if (e.coords.size() != g.size()) throw InputError("embedding has wrong number of points");
  if (!(e.c > 0.0)) throw InputError("locality constant c must be positive");
  EmbeddingReport report;
  // Unit cells: any pair closer than 1 lies in neighbouring cells.
  std::unordered_map<std::array<long long, 3>, std::vector<std::size_t>, detail::CellKeyHash> cells;
  auto key_of = [&](const std::array<double, 3>& p) {
    return std::array<long long, 3>{static_cast<long long>(std::floor(p[0])), static_cast<long long>(std::floor(p[1])),
                                    static_cast<long long>(std::floor(p[2]))};
  };
  for (std::size_t i = 0; i < e.coords.size(); ++i) {
    for (std::size_t d = e.dimension; d < 3; ++d) {
      if (e.coords[i][d] != 0.0) throw InputError("coordinate beyond embedding dimension");
    }
    cells[key_of(e.coords[i])].push_back(i);
  }
  for (std::size_t i = 0; i < e.coords.size(); ++i) {
    const auto k = key_of(e.coords[i]);
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        for (long long dz = -1; dz <= 1; ++dz) {
          const auto it = cells.find({k[0] + dx, k[1] + dy, k[2] + dz});
          if (it == cells.end()) continue;
          for (auto j : it->second) {
            if (j <= i) continue;
            const double d = detail::distance(e.coords[i], e.coords[j]);
            if (d < report.min_distance) {
              report.min_distance = d;
              report.closest_pair = {i, j};
            }
          }
        }
      }
    }
  }
  report.spacing_ok = !(report.min_distance < 1.0 - 1e-12);
  for (const auto& [u, v] : g.edges()) {
    const double d = detail::distance(e.coords[u], e.coords[v]);
    if (d > report.max_edge_length) {
      report.max_edge_length = d;
      report.longest_edge = {u, v};
    }
  }
  report.edges_ok = report.max_edge_length <= e.c + 1e-12;
  return report;
}

/// Quantum instrument on a few qubits. With `record_key` set, outcome i (Kraus operator
/// i) writes record_key=outcomes[i]; otherwise the Kraus operators form a channel. With
/// `condition` set, it acts only on branches whose record holds that entry.
struct Instrument {
  Labels qubits;
  std::vector<Matrix> kraus;
  std::string record_key;
  std::vector<std::string> outcomes;
  std::optional<std::pair<std::string, std::string>> condition;
};

/// One time step: instruments with disjoint supports, then an optional record rewrite.
struct Layer {
  std::vector<Instrument> ops;
  std::function<std::string(const std::string&)> relabel;
};

using Circuit = std::vector<Layer>;

struct LayerReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

namespace record {

inline std::map<std::string, std::string> parse(const std::string& label) {
  std::map<std::string, std::string> out;
  std::size_t start = 0;
  while (start < label.size()) {
    auto end = label.find(';', start);
    if (end == std::string::npos) end = label.size();
    const auto item = label.substr(start, end - start);
    const auto eq = item.find('=');
    if (eq != std::string::npos) out[item.substr(0, eq)] = item.substr(eq + 1);
    start = end + 1;
  }
  return out;
}

inline std::string format(const std::map<std::string, std::string>& entries) {
  std::string out;
  for (const auto& [k, v] : entries) out += (out.empty() ? "" : ";") + k + "=" + v;
  return out;
}

inline std::string with(const std::string& label, const std::string& key, const std::string& value) {
  auto entries = parse(label);
  entries[key] = value;
  return format(entries);
}

inline std::optional<std::string> get(const std::string& label, const std::string& key) {
  const auto entries = parse(label);
  const auto it = entries.find(key);
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

/// Relabel map that forgets the whole record.
inline std::string clear(const std::string&) { return {}; }

}  // namespace record

inline constexpr double kCompletenessTolerance = 1e-9;

/// Completeness of every instrument, dimension consistency, and locality: each support is
/// a clique of the graph and supports within the layer are disjoint.
inline LayerReport validate_layer(const ConnectivityGraph& g, const Layer& layer) {
  LayerReport report;
  std::vector<bool> used(g.size(), false);
  for (std::size_t i = 0; i < layer.ops.size(); ++i) {
    const auto& op = layer.ops[i];
    const std::string name = "instrument " + std::to_string(i);
    if (op.qubits.empty()) {
      report.violations.push_back(name + ": empty support");
      continue;
    }
    std::vector<std::size_t> idx;
    bool known = true;
    for (const auto& q : op.qubits) {
      if (!g.has_vertex(q)) {
        report.violations.push_back(name + ": unknown qubit '" + q + "'");
        known = false;
        continue;
      }
      idx.push_back(g.index(q));
    }
    if (!known) continue;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      if (used[idx[a]]) report.violations.push_back(name + ": qubit '" + op.qubits[a] + "' already used in this layer");
      used[idx[a]] = true;
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        if (idx[a] == idx[b]) report.violations.push_back(name + ": repeated qubit '" + op.qubits[a] + "'");
        else if (!g.adjacent(idx[a], idx[b])) {
          report.violations.push_back(name + ": locality violation, '" + op.qubits[a] + "' and '" + op.qubits[b] +
                                      "' are not adjacent");
        }
      }
    }
    if (op.qubits.size() > 10) {
      report.violations.push_back(name + ": support too large");
      continue;
    }
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << op.qubits.size());
    if (op.kraus.empty()) {
      report.violations.push_back(name + ": no Kraus operators");
      continue;
    }
    if (!op.record_key.empty() && op.outcomes.size() != op.kraus.size()) {
      report.violations.push_back(name + ": outcome count differs from Kraus count");
    }
    Matrix sum = Matrix::Zero(d, d);
    bool shapes = true;
    for (const auto& k : op.kraus) {
      if (k.rows() != d || k.cols() != d) {
        shapes = false;
        break;
      }
      sum += k.adjoint() * k;
    }
    if (!shapes) {
      report.violations.push_back(name + ": Kraus operator dimension does not match support");
      continue;
    }
    const double defect = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (defect > kCompletenessTolerance) {
      report.violations.push_back(name + ": completeness defect " + std::to_string(defect));
    }
  }
  return report;
}

namespace detail {

struct WorkBranch {
  std::string label;
  Matrix m;  // unnormalized: weight · state
};

inline ClassicalQuantumState collect(const RegisterLayout& layout, std::vector<WorkBranch> work) {
  std::map<std::string, Matrix> merged;
  for (auto& w : work) {
    auto it = merged.find(w.label);
    if (it == merged.end()) merged.emplace(w.label, std::move(w.m));
    else it->second += w.m;
  }
  double total = 0.0;
  std::vector<std::pair<std::string, Matrix>> kept;
  for (auto& [label, m] : merged) {
    const double t = m.trace().real();
    if (t > 1e-14) {
      total += t;
      kept.emplace_back(label, std::move(m));
    }
  }
  if (!(total > 0.0)) throw InputError("state vanished under the applied operations");
  std::vector<Branch> branches;
  for (auto& [label, m] : kept) {
    const double t = m.trace().real();
    branches.push_back({label, t / total, DensityMatrix::sanitized(layout, m)});
  }
  return ClassicalQuantumState(layout, std::move(branches));
}

inline std::vector<WorkBranch> unpack(const ClassicalQuantumState& state) {
  std::vector<WorkBranch> work;
  for (const auto& b : state.branches()) work.push_back({b.label, b.weight * b.state.matrix()});
  return work;
}

}  // namespace detail

inline ClassicalQuantumState apply_layer(const ClassicalQuantumState& state, const Layer& layer) {
  const auto& layout = state.layout();
  const auto dims = layout.dims();
  auto work = detail::unpack(state);
  for (const auto& op : layer.ops) {
    const auto ix = linalg::local_indexing(dims, layout.positions(op.qubits));
    const auto d = static_cast<Eigen::Index>(ix.offsets.size());
    for (const auto& k : op.kraus) {
      if (k.rows() != d || k.cols() != d) throw InputError("Kraus operator dimension does not match its support");
    }
    std::vector<detail::WorkBranch> next;
    for (auto& w : work) {
      if (op.condition && record::get(w.label, op.condition->first) != op.condition->second) {
        next.push_back(std::move(w));
        continue;
      }
      if (op.record_key.empty()) {
        Matrix out = Matrix::Zero(w.m.rows(), w.m.cols());
        for (const auto& k : op.kraus) out += linalg::conjugate_local(w.m, k, ix);
        next.push_back({w.label, std::move(out)});
      } else {
        if (op.outcomes.size() != op.kraus.size()) throw InputError("outcome count differs from Kraus count");
        for (std::size_t i = 0; i < op.kraus.size(); ++i) {
          Matrix out = linalg::conjugate_local(w.m, op.kraus[i], ix);
          if (out.trace().real() <= 1e-14) continue;
          next.push_back({record::with(w.label, op.record_key, op.outcomes[i]), std::move(out)});
        }
      }
    }
    work = std::move(next);
  }
  if (layer.relabel) {
    for (auto& w : work) w.label = layer.relabel(w.label);
  }
  return detail::collect(layout, std::move(work));
}

inline ClassicalQuantumState apply_circuit(ClassicalQuantumState state, const Circuit& circuit) {
  for (const auto& layer : circuit) state = apply_layer(state, layer);
  return state;
}

/// Depolarizing noise, or erasure of Γ (replaced by the maximally mixed state) together
/// with depolarizing noise on the other targeted qubits.
struct Noise {
  double p = 0.0;
  Labels erased;

  static Noise depolarizing(double p) { return {p, {}}; }
  static Noise erasure(Labels gamma, double p) { return {p, std::move(gamma)}; }
};

namespace detail {

/// m <- (1-t) m + t (I/2 ⊗ tr_q m) for the qubit at layout position `pos`. Linear in m.
inline void depolarize_qubit(Matrix& m, const std::vector<std::size_t>& dims, std::size_t pos, double t) {
  if (t == 0.0) return;
  const auto ix = linalg::local_indexing(dims, {pos});
  const Eigen::Index off = ix.offsets[1];
  const auto nb = static_cast<Eigen::Index>(ix.bases.size());
  std::vector<Eigen::Index> r0(ix.bases.begin(), ix.bases.end()), r1(ix.bases.size());
  for (Eigen::Index i = 0; i < nb; ++i) r1[i] = r0[i] + off;
  const Matrix a00 = m(r0, r0), a11 = m(r1, r1);
  const Matrix avg = 0.5 * (a00 + a11);
  m(r0, r0) = (1 - t) * a00 + t * avg;
  m(r1, r1) = (1 - t) * a11 + t * avg;
  m(r0, r1) *= (1 - t);
  m(r1, r0) *= (1 - t);
}

}  // namespace detail

/// Applies `noise` to the qubits `targets` (registers of dimension 2) of a raw operator
/// on `layout`. Linear, so it also acts on Choi-matrix blocks.
inline void apply_noise(Matrix& m, const RegisterLayout& layout, const Noise& noise, const Labels& targets) {
  if (!(noise.p >= 0.0 && noise.p <= 1.0)) throw InputError("noise parameter outside [0,1]");
  const auto dims = layout.dims();
  for (const auto& g : noise.erased) {
    if (std::find(targets.begin(), targets.end(), g) == targets.end()) {
      throw InputError("erased qubit '" + g + "' is not a noisy qubit");
    }
  }
  for (const auto& q : targets) {
    const auto pos = layout.position(q);
    if (dims[pos] != 2) throw InputError("noise acts on qubit registers only");
    const bool erased = std::find(noise.erased.begin(), noise.erased.end(), q) != noise.erased.end();
    detail::depolarize_qubit(m, dims, pos, erased ? 1.0 : noise.p);
  }
}

inline ClassicalQuantumState noise_apply(const ClassicalQuantumState& state, const Noise& noise, const Labels& targets) {
  auto work = detail::unpack(state);
  for (auto& w : work) apply_noise(w.m, state.layout(), noise, targets);
  return detail::collect(state.layout(), std::move(work));
}

/// Choi matrix Σ_ij |i⟩⟨j| ⊗ T(|i⟩⟨j|) of a linear map on `qubits` qubits (input first).
inline Matrix choi_matrix(std::size_t qubits, const std::function<Matrix(const Matrix&)>& channel) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << qubits);
  Matrix choi = Matrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      Matrix e = Matrix::Zero(d, d);
      e(i, j) = 1.0;
      choi.block(i * d, j * d, d, d) = channel(e);
    }
  }
  return choi;
}

/// Error-correction module: J rounds of (noise on every qubit of the graph, then the
/// round's layers) acting on an encoded state of the data qubits.
struct EcModule {
  ConnectivityGraph graph;
  std::vector<Circuit> rounds;
  Labels data;      // A′, in the order the encoder's output qubits are listed
  Matrix encoder;   // isometry 2^k → 2^|A′|
  double p = 0.0;
  Circuit decoder;  // optional noiseless layers applied before the fidelity comparison

  std::size_t width() const noexcept { return graph.size(); }
  std::size_t k() const { return linalg::log2_exact(static_cast<std::size_t>(encoder.cols())); }
  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& r : rounds) d = std::max(d, r.size());
    return d;
  }
};

inline constexpr std::size_t kMaxSimulatedQubits = 12;
inline const std::string kReferenceLabel = "R";

/// Checks the module's shapes, noise parameter and every layer's locality/completeness.
inline void validate_module(const EcModule& module) {
  if (!(module.p >= 0.0 && module.p <= 1.0)) throw InputError("noise parameter outside [0,1]");
  if (module.data.empty()) throw InputError("module needs at least one data qubit");
  for (const auto& q : module.data) module.graph.index(q);
  RegisterLayout::qubits(module.data);  // rejects repeated labels
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << module.data.size());
  if (module.encoder.rows() != dim) throw InputError("encoder row count must be 2^|data|");
  if (module.encoder.cols() < 2 || !linalg::is_power_of_two(static_cast<std::size_t>(module.encoder.cols()))) {
    throw InputError("encoder must have 2^k columns with k >= 1");
  }
  if ((module.encoder.adjoint() * module.encoder - Matrix::Identity(module.encoder.cols(), module.encoder.cols()))
          .cwiseAbs()
          .maxCoeff() > 1e-9) {
    throw InputError("encoder is not an isometry");
  }
  if (module.graph.vertices().end() != std::find(module.graph.vertices().begin(), module.graph.vertices().end(),
                                                 kReferenceLabel)) {
    throw InputError("qubit label 'R' is reserved for the reference system");
  }
  if (module.width() + module.k() > kMaxSimulatedQubits) {
    throw CapacityError("module simulation supports at most 12 qubits including the reference");
  }
  auto check = [&](const Circuit& c, const std::string& what) {
    for (std::size_t l = 0; l < c.size(); ++l) {
      const auto report = validate_layer(module.graph, c[l]);
      if (!report.ok()) throw InputError(what + " layer " + std::to_string(l) + ": " + report.violations.front());
    }
  };
  for (std::size_t j = 0; j < module.rounds.size(); ++j) check(module.rounds[j], "round " + std::to_string(j));
  check(module.decoder, "decoder");
}

namespace detail {

/// Vector on [R, A (graph order)] equal to (I_R ⊗ U)Φ_RL with A′ holding U's output and
/// the other qubits of `keep` in |0⟩. `keep` selects which graph vertices are present.
inline PureState encoded_state(const EcModule& module, const Labels& keep) {
  const auto k = module.k();
  const std::size_t rdim = std::size_t{1} << k;
  Labels order;
  for (const auto& v : module.graph.vertices()) {
    if (std::find(keep.begin(), keep.end(), v) != keep.end()) order.push_back(v);
  }
  std::vector<Register> regs{{kReferenceLabel, RegisterKind::quantum, rdim}};
  for (const auto& v : order) regs.push_back({v, RegisterKind::quantum, 2});
  RegisterLayout layout(std::move(regs));
  const std::size_t n_a = order.size();
  // Bit position (in the A index) of each data qubit, data order.
  std::vector<std::size_t> shift;
  for (const auto& q : module.data) {
    const auto it = std::find(order.begin(), order.end(), q);
    shift.push_back(n_a - 1 - static_cast<std::size_t>(it - order.begin()));
  }
  const std::size_t n = module.data.size();
  Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  const double amp = 1.0 / std::sqrt(static_cast<double>(rdim));
  for (std::size_t r = 0; r < rdim; ++r) {
    for (std::size_t j = 0; j < (std::size_t{1} << n); ++j) {
      std::size_t a = 0;
      for (std::size_t b = 0; b < n; ++b) {
        if ((j >> (n - 1 - b)) & 1) a |= std::size_t{1} << shift[b];
      }
      v(static_cast<Eigen::Index>((r << n_a) | a)) +=
          amp * module.encoder(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(r));
    }
  }
  return PureState::normalized(std::move(layout), std::move(v));
}

}  // namespace detail

/// Which run of the module to simulate: the noisy one, or the one where the noise of
/// round `round` is replaced by erasure of Γ (with depolarizing noise elsewhere).
struct SimulationVariant {
  std::optional<std::pair<Labels, std::size_t>> erasure;

  static SimulationVariant noisy() { return {}; }
  static SimulationVariant erased(Labels gamma, std::size_t round) { return {std::make_pair(std::move(gamma), round)}; }
};

/// Output of the module on [R, A] with the classical record in the branches.
inline ClassicalQuantumState simulate_module(const EcModule& module,
                                             const SimulationVariant& variant = SimulationVariant::noisy()) {
  validate_module(module);
  if (variant.erasure && variant.erasure->second >= module.rounds.size()) {
    throw InputError("erased round index out of range");
  }
  const auto start = detail::encoded_state(module, module.graph.vertices());
  ClassicalQuantumState state{DensityMatrix(start)};
  for (std::size_t j = 0; j < module.rounds.size(); ++j) {
    const bool erased_round = variant.erasure && variant.erasure->second == j;
    const Noise noise = erased_round ? Noise::erasure(variant.erasure->first, module.p) : Noise::depolarizing(module.p);
    state = noise_apply(state, noise, module.graph.vertices());
    state = apply_circuit(std::move(state), module.rounds[j]);
  }
  return state;
}

/// The ideal encoded state (I_R ⊗ U)Φ_RL on [R, A′] (A′ in graph order).
inline PureState encoded_reference(const EcModule& module) { return detail::encoded_state(module, module.data); }

/// Reduced output on [R, A′] after the optional noiseless decoder, classical record
/// traced out.
inline DensityMatrix logical_output(const EcModule& module, const ClassicalQuantumState& output) {
  auto state = apply_circuit(output, module.decoder);
  Labels keep{kReferenceLabel};
  for (const auto& v : module.graph.vertices()) {
    if (std::find(module.data.begin(), module.data.end(), v) != module.data.end()) keep.push_back(v);
  }
  return reduced_state(state.marginal(), keep);
}

/// δ = 1 − ⟨ξ|ρ_{RA′}|ξ⟩ with ξ the ideal encoded maximally entangled state.
inline double logical_error_rate(const EcModule& module,
                                 const SimulationVariant& variant = SimulationVariant::noisy()) {
  const auto out = logical_output(module, simulate_module(module, variant));
  return std::clamp(1.0 - fidelity(encoded_reference(module), out), 0.0, 1.0);
}

}  // namespace locbound

#pragma once

// Numerical checks of the entropic inequalities behind the lower bounds. Each check
// compares a certified quantity against its bound and counts trials that miss by more
// than the slack.

#include "locbound/bounds.hpp"
#include "locbound/circuit.hpp"
#include "locbound/entropy.hpp"
#include "locbound/random.hpp"
#include "locbound/separability.hpp"
#include "locbound/stabilizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace locbound {

inline constexpr double kExactSlack = 1e-9;
inline constexpr double kEntropySlack = 1e-8;
inline constexpr double kSimulationSlack = 1e-6;

struct VerificationReport {
  std::string id;
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst_margin = kInfinity;  // min over trials of (bound − value); negative = violated
  double slack = 0.0;
  std::uint64_t seed = 0;
  std::map<std::string, double> parameters;
  std::map<std::string, double> values;  // measured quantities worth reporting

  bool pass() const noexcept { return violations == 0; }

  /// Records one trial of value ≤ bound.
  void check(double value, double bound) {
    ++trials;
    const double margin = bound - value;
    if (std::isnan(margin) || margin < -slack) ++violations;
    if (std::isnan(margin)) worst_margin = -kInfinity;
    else worst_margin = std::min(worst_margin, margin);
  }
};

namespace detail {

/// Applies a layer of unitaries (one Kraus operator each) to a pure state.
inline void apply_unitary_layer(PureState& psi, const Layer& layer) {
  Vector v = psi.vector();
  const auto dims = psi.layout().dims();
  for (const auto& op : layer.ops) {
    if (op.kraus.size() != 1 || !op.record_key.empty() || op.condition) {
      throw InputError("pure-state layers must consist of unitaries");
    }
    const auto pos = psi.layout().positions(op.qubits);
    linalg::apply_left(v, op.kraus[0], linalg::local_indexing(dims, pos));
  }
  psi = PureState::normalized(psi.layout(), std::move(v));
}

/// Every nonempty proper vertex subset, as membership masks.
inline std::vector<std::uint64_t> all_cuts(std::size_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t u = 1; u + 1 < (std::uint64_t{1} << m); ++u) out.push_back(u);
  return out;
}

inline Labels labels_of(const ConnectivityGraph& g, std::uint64_t mask) {
  Labels out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if ((mask >> i) & 1) out.push_back(g.vertices()[i]);
  }
  return out;
}

/// Grid of `qubits` vertices: 2 rows when that fits evenly, otherwise a path.
inline ConnectivityGraph sie_grid(std::size_t qubits) {
  const std::size_t rows = qubits >= 4 && qubits % 2 == 0 ? 2 : 1;
  const std::size_t cols = qubits / rows;
  Labels v;
  for (std::size_t i = 0; i < qubits; ++i) v.push_back(std::to_string(i));
  ConnectivityGraph g(v);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.add_edge(r * cols + c, r * cols + c + 1);
      if (r + 1 < rows) g.add_edge(r * cols + c, (r + 1) * cols + c);
    }
  }
  return g;
}

/// Haar two-qubit gates on a random matching of the graph's edges.
inline Layer random_gate_layer(const ConnectivityGraph& g, Rng& rng) {
  auto edges = g.edges();
  std::shuffle(edges.begin(), edges.end(), rng);
  std::vector<bool> used(g.size(), false);
  Layer layer;
  for (const auto& [u, v] : edges) {
    if (used[u] || used[v]) continue;
    used[u] = used[v] = true;
    layer.ops.push_back({{g.vertices()[u], g.vertices()[v]}, {random::haar_unitary(4, rng)}, {}, {}, {}});
  }
  return layer;
}

}  // namespace detail

/// Entanglement growth per layer on a pure state: S(U) after − S(U) before ≤ 3|∂U| for
/// every cut U in `cuts` (membership masks; default all nonempty proper subsets).
inline VerificationReport verify_sie_layers(const ConnectivityGraph& g, PureState psi, const std::vector<Layer>& layers,
                                            std::vector<std::uint64_t> cuts = {}) {
  if (g.size() > 12) throw CapacityError("entanglement-growth check supports at most 12 qubits");
  if (psi.layout().labels() != g.vertices()) throw InputError("state registers must match the graph vertices");
  if (cuts.empty()) cuts = detail::all_cuts(g.size());
  VerificationReport report;
  report.id = "sie";
  report.slack = kExactSlack;
  report.parameters["qubits"] = static_cast<double>(g.size());
  report.parameters["layers"] = static_cast<double>(layers.size());
  report.parameters["cuts"] = static_cast<double>(cuts.size());
  std::vector<Labels> cut_labels;
  std::vector<double> bound;
  for (auto u : cuts) {
    std::vector<bool> in_u(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) in_u[i] = (u >> i) & 1;
    cut_labels.push_back(detail::labels_of(g, u));
    bound.push_back(3.0 * static_cast<double>(boundary_indices(g, in_u).size()));
  }
  auto entropies = [&](const PureState& s) {
    std::vector<double> out(cut_labels.size());
    for (std::size_t c = 0; c < cut_labels.size(); ++c) out[c] = vn_entropy(s, cut_labels[c]);
    return out;
  };
  auto before = entropies(psi);
  double largest = 0.0;
  for (const auto& layer : layers) {
    if (!validate_layer(g, layer).ok()) throw InputError("layer violates the connectivity graph");
    detail::apply_unitary_layer(psi, layer);
    const auto after = entropies(psi);
    for (std::size_t c = 0; c < after.size(); ++c) {
      report.check(after[c] - before[c], bound[c]);
      largest = std::max(largest, after[c] - before[c]);
    }
    before = after;
  }
  report.values["largest_increment"] = largest;
  return report;
}

/// Random Haar-gate layers on a 2×(q/2) grid (a path for odd q) starting from |0…0⟩.
inline VerificationReport verify_sie(std::uint64_t seed, std::size_t qubits, std::size_t layers) {
  if (qubits < 2 || qubits > 8) throw InputError("entanglement-growth check takes 2 to 8 qubits");
  const auto g = detail::sie_grid(qubits);
  Rng rng(seed);
  std::vector<Layer> circuit;
  for (std::size_t i = 0; i < layers; ++i) circuit.push_back(detail::random_gate_layer(g, rng));
  const auto layout = RegisterLayout::qubits(g.vertices());
  Vector zero = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  zero(0) = 1.0;
  auto report = verify_sie_layers(g, PureState(layout, zero), circuit);
  report.seed = seed;
  return report;
}

namespace detail {

inline Labels qubit_labels(std::size_t n) {
  Labels out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

inline Labels labels_of_indices(const std::vector<std::size_t>& idx) {
  Labels out;
  for (auto i : idx) out.push_back(std::to_string(i));
  return out;
}

inline std::size_t code_distance(const StabilizerCode& code) {
  const auto d = min_distance(code);
  return d.distance.value_or(d.lower_bound);
}

}  // namespace detail

/// Σᵢ ree_lower(Λᵢ : Λ̄ᵢ) ≥ k on Π_C/2^k for a partition of the code's qubits into blocks
/// smaller than the distance. Qubits are labelled "0" … "n−1".
inline VerificationReport verify_structure_code(const StabilizerCode& code,
                                                const std::vector<std::vector<std::size_t>>& partition) {
  if (code.n() > 10) throw CapacityError("structure check supports at most 10 qubits");
  if (code.k() == 0) throw InputError("code encodes no logical qubits");
  const std::size_t d = detail::code_distance(code);
  std::vector<bool> seen(code.n(), false);
  for (const auto& block : partition) {
    if (block.empty()) throw InputError("partition blocks must be nonempty");
    if (block.size() >= d) throw InputError("partition block of size " + std::to_string(block.size()) +
                                            " is not smaller than the distance " + std::to_string(d));
    for (auto q : block) {
      if (q >= code.n() || seen[q]) throw InputError("partition must cover each qubit exactly once");
      seen[q] = true;
    }
  }
  if (std::count(seen.begin(), seen.end(), false) != 0) throw InputError("partition must cover each qubit exactly once");

  const auto layout = RegisterLayout::qubits(detail::qubit_labels(code.n()));
  const double scale = std::ldexp(1.0, -static_cast<int>(code.k()));
  const auto rho = DensityMatrix::sanitized(layout, scale * code_projector(code));
  VerificationReport report;
  report.id = "structure-code";
  report.slack = kEntropySlack;
  report.parameters["n"] = static_cast<double>(code.n());
  report.parameters["k"] = static_cast<double>(code.k());
  report.parameters["d"] = static_cast<double>(d);
  report.parameters["blocks"] = static_cast<double>(partition.size());
  double total = 0.0;
  for (const auto& block : partition) {
    const auto a = detail::labels_of_indices(block);
    total += ree_lower(rho, Cut{a, layout.complement(a)});
  }
  report.check(static_cast<double>(code.k()), total);
  report.values["ree_lower_sum"] = total;
  return report;
}

/// I(Λ⟩Λ̄) = S(Λ) on random code states for every region with |Λ| < d.
inline VerificationReport verify_corr_max_entangled(const StabilizerCode& code, std::uint64_t seed = 0xC0DE,
                                                    std::size_t states = 20) {
  if (code.n() > 8) throw CapacityError("correctability check supports at most 8 qubits");
  const std::size_t d = detail::code_distance(code);
  const auto layout = RegisterLayout::qubits(detail::qubit_labels(code.n()));
  const Matrix v = encoding_isometry(code);
  const auto logical = RegisterLayout::qubits(detail::qubit_labels(code.k()));
  VerificationReport report;
  report.id = "corr-max";
  report.slack = kEntropySlack;
  report.seed = seed;
  report.parameters["n"] = static_cast<double>(code.n());
  report.parameters["k"] = static_cast<double>(code.k());
  report.parameters["d"] = static_cast<double>(d);
  report.parameters["states"] = static_cast<double>(states);

  std::vector<Labels> regions{{}};
  for (std::size_t w = 1; w < d && w <= code.n(); ++w) {
    std::vector<bool> pick(code.n(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(w), true);
    do {
      Labels region;
      for (std::size_t i = 0; i < code.n(); ++i) {
        if (pick[i]) region.push_back(std::to_string(i));
      }
      regions.push_back(region);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  report.parameters["regions"] = static_cast<double>(regions.size());

  Rng rng(seed);
  double worst = 0.0;
  for (std::size_t s = 0; s < states; ++s) {
    const auto sigma = random::density(logical, rng);
    const auto rho = DensityMatrix::sanitized(layout, v * sigma.matrix() * v.adjoint());
    for (const auto& region : regions) {
      if (region.empty()) {
        report.check(0.0, 0.0);
        continue;
      }
      const auto rest = layout.complement(region);
      const double gap = std::abs(coherent_info(rho, region, rest) - vn_entropy(rho, region));
      report.check(gap, 0.0);
      worst = std::max(worst, gap);
    }
  }
  report.values["max_deviation"] = worst;
  return report;
}

/// Checks on an error-correction module around an erased region Γ:
///  - 3Δ|∂Γ| ≥ E_R(Λ:Λ̄)_ξ − √r|Λ| − g(√r), r = δ/p^{|Γ|}, Λ = Γ ∩ A′, E_R from S(Λ)_ξ;
///  - erasing Γ in the last round costs at most a factor p^{-|Γ|}: δ_Γ ≤ δ/p^{|Γ|};
///  - after the erasure, ree_lower(Γ : Γ̄RX) ≤ 3Δ|∂Γ|.
inline VerificationReport verify_depth_bound(const EcModule& module, const Labels& gamma) {
  validate_module(module);
  if (module.rounds.empty()) throw InputError("module has no rounds");
  if (gamma.empty()) throw InputError("erased region must be nonempty");
  RegisterLayout::qubits(gamma);
  for (const auto& q : gamma) module.graph.index(q);
  VerificationReport report;
  report.id = "depth-bound";
  report.slack = kSimulationSlack;

  const double delta = logical_error_rate(module);
  const auto xi = encoded_reference(module);
  Labels lambda;
  for (const auto& q : gamma) {
    if (std::find(module.data.begin(), module.data.end(), q) != module.data.end()) lambda.push_back(q);
  }
  const double ent = vn_entropy(xi, lambda);
  const double depth = static_cast<double>(module.depth());
  const auto boundary_size = static_cast<double>(boundary(module.graph, gamma).size());
  const double lhs = 3.0 * depth * boundary_size;
  const double rhs = depth_bound_rhs(ent, delta, module.p, gamma.size(), lambda.size());
  report.check(rhs, lhs);

  const auto last = module.rounds.size() - 1;
  const auto erased = simulate_module(module, SimulationVariant::erased(gamma, last));
  const double delta_erased =
      std::clamp(1.0 - fidelity(xi, logical_output(module, erased)), 0.0, 1.0);
  const double weight = std::pow(module.p, static_cast<double>(gamma.size()));
  if (weight > 0.0) report.check(delta_erased, delta / weight);

  Labels rest{kReferenceLabel};
  for (const auto& v : module.graph.vertices()) {
    if (std::find(gamma.begin(), gamma.end(), v) == gamma.end()) rest.push_back(v);
  }
  const double regrown = ree_lower_cq(erased, Cut{gamma, rest}, "X");
  report.check(regrown, lhs);

  report.parameters["p"] = module.p;
  report.parameters["depth"] = depth;
  report.parameters["gamma"] = static_cast<double>(gamma.size());
  report.parameters["boundary"] = boundary_size;
  report.values["delta"] = delta;
  report.values["delta_erased"] = delta_erased;
  report.values["entanglement"] = ent;
  report.values["lhs"] = lhs;
  report.values["rhs"] = rhs;
  report.values["ree_lower_after_erasure"] = regrown;
  return report;
}

/// Root t* of t + g(t) = 1: with no depth and no boundary, a region holding one ebit
/// forces δ ≥ p^{|Γ|} t*².
inline double depth_bound_threshold() {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid + continuity_g(mid) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Three randomized checks: mixing with a far state (fidelity), approximate recovery
/// bounding conditional mutual information, and ree_lower ≤ ree_upper.
inline std::vector<VerificationReport> verify_appendix(std::uint64_t seed, std::size_t trials) {
  std::vector<VerificationReport> out(3);
  out[0].id = "convex-is-close";
  out[1].id = "approximate-markov";
  out[2].id = "coh-ree-sandwich";
  for (auto& r : out) {
    r.seed = seed;
    r.slack = kExactSlack;
    r.parameters["trials"] = static_cast<double>(trials);
  }

  const auto two = RegisterLayout::qubits({"A", "B"});
  const auto three = RegisterLayout::qubits({"A", "B", "C"});
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));

    // F(ξ, λρ₁ + (1−λ)ρ₂) ≥ 1 − ε ⇒ F(ξ, ρ₁) ≥ 1 − ε/λ.
    {
      const auto xi = random::pure_state(two, rng);
      const double closeness = random::uniform(rng);
      const Matrix rho1 = (1 - closeness) * DensityMatrix(xi).matrix() + closeness * random::density(two, rng).matrix();
      const auto rho2 = random::density(two, rng);
      const double lambda = t == 0 ? 1.0 : random::uniform(rng, 0.01, 1.0);
      const auto mix = DensityMatrix::sanitized(two, lambda * rho1 + (1 - lambda) * rho2.matrix());
      const double eps = 1.0 - fidelity(xi, mix);
      const double f1 = fidelity(xi, DensityMatrix::sanitized(two, rho1));
      out[0].check(1.0 - eps / lambda, f1);
    }

    // σ = (I ⊗ R_{B→BC})(ρ_AB), F(ρ, σ) ≥ 1 − ε ⇒ I(A:C|B)_ρ ≤ 2√ε·|A| + g(√ε).
    // ρ mixes an exactly recovered state with a generic one.
    {
      const auto kraus = random::kraus_channel(2, 4, 1 + static_cast<Eigen::Index>(t % 3), rng);
      auto recover = [&](const DensityMatrix& state) {
        const auto ab = reduced_state(state, {"A", "B"});
        Matrix out = Matrix::Zero(8, 8);
        for (const auto& k : kraus) {
          const Matrix full = linalg::kron(Matrix::Identity(2, 2), k);
          out += full * ab.matrix() * full.adjoint();
        }
        return DensityMatrix::sanitized(three, out);
      };
      const auto generic = random::density(three, rng, 1 + t % 4);
      const double s = t % 5 == 0 ? 0.0 : std::pow(random::uniform(rng), 3);
      const auto rho = DensityMatrix::sanitized(three, (1 - s) * recover(generic).matrix() + s * generic.matrix());
      const double eps = std::clamp(1.0 - fidelity(rho, recover(rho)), 0.0, 1.0);
      const double root = std::sqrt(eps);
      out[1].check(cond_mutual_info(rho, {"A"}, {"C"}, {"B"}), 2.0 * root + continuity_g(root));
    }

    // ree_lower ≤ ree_upper.
    {
      const auto rho = random::density(two, rng, 1 + t % 4);
      const Cut cut{{"A"}, {"B"}};
      out[2].check(ree_lower(rho, cut), ree_upper(rho, cut, {1, 60, derive_seed(seed, t)}).value);
    }
  }
  return out;
}

struct OverheadGeometry {
  std::size_t dimension = 2;
  double c1 = 1.0;
  double c2 = 1.0;
};

/// m/k ≥ overhead_floor(p, δ, D, Δ) with δ measured by simulation. Modules with p = 0 or
/// δ = 0 have no finite f and are reported without a trial.
inline VerificationReport verify_overhead_consistency(const EcModule& module, const OverheadGeometry& geometry = {}) {
  VerificationReport report;
  report.id = "overhead";
  report.slack = kExactSlack;
  const double delta = logical_error_rate(module);
  const double ratio = static_cast<double>(module.width()) / static_cast<double>(module.k());
  report.parameters["m"] = static_cast<double>(module.width());
  report.parameters["k"] = static_cast<double>(module.k());
  report.parameters["p"] = module.p;
  report.parameters["depth"] = static_cast<double>(module.depth());
  report.parameters["dimension"] = static_cast<double>(geometry.dimension);
  report.values["delta"] = delta;
  report.values["ratio"] = ratio;
  if (module.p <= 0.0 || module.p >= 1.0 || delta <= 0.0 || delta >= 1.0) return report;
  OverheadInputs in;
  in.p = module.p;
  in.delta = delta;
  in.dimension = geometry.dimension;
  in.depth = static_cast<double>(module.depth());
  in.c1 = geometry.c1;
  in.c2 = geometry.c2;
  const auto floor = overhead_floor(in);
  report.values["f"] = floor.f;
  report.values["floor"] = floor.floor;
  report.check(floor.floor, ratio);
  return report;
}

}  // namespace locbound

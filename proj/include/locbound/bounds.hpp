#pragma once

// Explicit-constant lower bounds on depth and qubit overhead of local error correction.

#include "locbound/entropy.hpp"
#include "locbound/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace locbound {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Δ ≥ k / (3 Σ|∂Γᵢ|). Infinite when k > 0 and every boundary is empty.
inline double encoding_depth_floor(std::size_t k, const std::vector<std::size_t>& boundary_sizes) {
  if (k == 0) return 0.0;
  std::size_t total = 0;
  for (auto b : boundary_sizes) total += b;
  if (total == 0) return kInfinity;
  return static_cast<double>(k) / (3.0 * static_cast<double>(total));
}

/// Δ ≥ k λ^{1/D} / (3 c₁ c₂ m) with λ = d − 1.
inline double encoding_depth_floor_geometric(std::size_t k, std::size_t d, std::size_t m, std::size_t dimension,
                                             double c1 = 1.0, double c2 = 1.0) {
  if (d < 2) throw InputError("code distance must be at least 2");
  if (m == 0) throw InputError("qubit count must be positive");
  if (dimension == 0) throw InputError("dimension must be positive");
  if (!(c1 > 0.0 && c2 > 0.0)) throw InputError("constants c1, c2 must be positive");
  const double lambda = static_cast<double>(d - 1);
  return static_cast<double>(k) * std::pow(lambda, 1.0 / static_cast<double>(dimension)) /
         (3.0 * c1 * c2 * static_cast<double>(m));
}

/// Syndrome-extraction depth: one recovery layer fewer than the encoding floor, at least 0.
inline double syndrome_depth_floor(std::size_t k, std::size_t d, std::size_t m, std::size_t dimension,
                                   double c1 = 1.0, double c2 = 1.0) {
  return std::max(0.0, encoding_depth_floor_geometric(k, d, m, dimension, c1, c2) - 1.0);
}

struct StructureTerm {
  std::size_t block_size = 0;
  double epsilon = 0.0;  // δ / p^{|Λᵢ|}
  double penalty = 0.0;  // 2√ε|Λᵢ| + g(√ε); infinite when saturated
  bool saturated = false;
};

struct StructureFloor {
  double value = 0.0;
  std::vector<StructureTerm> terms;
  bool saturated = false;
};

/// Σᵢ E_R(Λᵢ) ≥ k − Σᵢ [2√εᵢ|Λᵢ| + g(√εᵢ)], εᵢ = δ/p^{|Λᵢ|}, clamped at 0. A block with
/// εᵢ > 1 saturates the bound to 0.
inline StructureFloor structure_unitary_floor(std::size_t k, double p, double delta,
                                              const std::vector<std::size_t>& block_sizes) {
  if (!(p > 0.0 && p <= 1.0)) throw InputError("noise parameter p must lie in (0,1]");
  if (!(delta >= 0.0 && delta <= 1.0)) throw InputError("logical error rate must lie in [0,1]");
  StructureFloor out;
  double penalty = 0.0;
  for (auto size : block_sizes) {
    StructureTerm t;
    t.block_size = size;
    t.epsilon = delta / std::pow(p, static_cast<double>(size));
    if (!(t.epsilon <= 1.0)) {
      t.saturated = true;
      t.penalty = kInfinity;
      out.saturated = true;
    } else {
      const double root = std::sqrt(t.epsilon);
      t.penalty = 2.0 * root * static_cast<double>(size) + continuity_g(root);
      penalty += t.penalty;
    }
    out.terms.push_back(t);
  }
  out.value = out.saturated ? 0.0 : std::max(0.0, static_cast<double>(k) - penalty);
  return out;
}

/// Right-hand side E_R − √r|Λ| − g(√r) with r = δ/p^{|Γ|}, to be compared with 3Δ|∂Γ|.
/// For r > 1 the expression is evaluated at r = 1, which is nonpositive for E_R ≤ |Λ|.
inline double depth_bound_rhs(double ree, double delta, double p, std::size_t gamma_size, std::size_t lambda_size) {
  if (!(p > 0.0 && p <= 1.0)) throw InputError("noise parameter p must lie in (0,1]");
  if (!(delta >= 0.0 && delta <= 1.0)) throw InputError("logical error rate must lie in [0,1]");
  if (!std::isfinite(ree)) throw InputError("entanglement value must be finite");
  const double r = std::min(1.0, delta / std::pow(p, static_cast<double>(gamma_size)));
  const double root = std::sqrt(r);
  return ree - root * static_cast<double>(lambda_size) - continuity_g(root);
}

struct OverheadInputs {
  double p = 0.0;
  double delta = 0.0;
  std::size_t dimension = 2;
  double depth = 1.0;  // Δ
  double c1 = 1.0;
  double c2 = 1.0;
  std::optional<std::size_t> m;  // measured overhead, if any
  std::optional<std::size_t> k;
};

struct OverheadReport {
  double f = 0.0;              // log_p δ
  double lambda = 0.0;         // f/2
  double partition_term = 0.0; // f^{1/D} / (3 c₁ c₂ Δ)
  double noise_term = 0.0;     // p^{f/8} / (7 c₂)
  double floor = 0.0;          // ½ min of the two
  std::string active;          // "partition" or "noise"
  std::optional<double> ratio; // m/k
  std::optional<bool> satisfiable;
};

/// m/k ≥ ½ min(f^{1/D}/(3c₁c₂Δ), p^{f/8}/(7c₂)) with f = ln δ / ln p.
inline OverheadReport overhead_floor(const OverheadInputs& in) {
  if (!(in.p > 0.0 && in.p < 1.0)) throw InputError("noise parameter p must lie in (0,1)");
  if (!(in.delta > 0.0 && in.delta < 1.0)) throw InputError("logical error rate must lie in (0,1)");
  if (in.dimension == 0) throw InputError("dimension must be positive");
  if (!(in.depth >= 0.0)) throw InputError("depth must be nonnegative");
  if (!(in.c1 > 0.0 && in.c2 > 0.0)) throw InputError("constants c1, c2 must be positive");
  OverheadReport r;
  r.f = std::log(in.delta) / std::log(in.p);
  if (!(r.f > 0.0)) throw InputError("f = log_p(delta) must be positive");
  r.lambda = r.f / 2.0;
  r.partition_term = in.depth == 0.0 ? kInfinity
                                     : std::pow(r.f, 1.0 / static_cast<double>(in.dimension)) /
                                           (3.0 * in.c1 * in.c2 * in.depth);
  r.noise_term = std::pow(in.p, r.f / 8.0) / (7.0 * in.c2);
  r.active = r.partition_term <= r.noise_term ? "partition" : "noise";
  r.floor = 0.5 * std::min(r.partition_term, r.noise_term);
  if (in.m && in.k) {
    if (*in.k == 0) throw InputError("k must be positive");
    if (*in.k > *in.m) throw InputError("k must not exceed m");
    r.ratio = static_cast<double>(*in.m) / static_cast<double>(*in.k);
    r.satisfiable = *r.ratio >= r.floor;
  }
  return r;
}

}  // namespace locbound

#pragma once

// λ-bounded partitions of embedded connectivity graphs.
//
// Points go into axis-aligned cells of side s = max(1, ⌊(λ·v_D)^{1/D}⌋ − 1), v_D the
// volume of the radius-½ ball, so unit spacing leaves at most λ points per cell. Cells
// are then merged greedily in Morton (Z-curve) order while the block stays within λ
// points and within the boundary bound κ·λ^{(D−1)/D}.

#include "locbound/circuit.hpp"
#include "locbound/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace locbound {

struct Partition {
  std::vector<Labels> blocks;
  std::vector<std::size_t> boundary_sizes;  // |∂Γᵢ| in the graph the partition was built on
  bool merge_limited = false;               // some merge was refused for the boundary bound

  std::size_t size() const noexcept { return blocks.size(); }
  std::size_t total_boundary() const {
    std::size_t s = 0;
    for (auto b : boundary_sizes) s += b;
    return s;
  }
};

/// κ(c, D) = 4D(c+1)·2^D.
inline double default_kappa(double c, std::size_t dimension) {
  return 4.0 * static_cast<double>(dimension) * (c + 1.0) * std::ldexp(1.0, static_cast<int>(dimension));
}

inline double boundary_limit(double kappa, double lambda, std::size_t dimension) {
  const auto d = static_cast<double>(dimension);
  return kappa * std::pow(lambda, (d - 1.0) / d);
}

/// Side of the partition cells for block size λ.
inline double cell_side(double lambda, std::size_t dimension) {
  const double ball = dimension == 1 ? 1.0 : dimension == 2 ? std::numbers::pi / 4 : std::numbers::pi / 6;
  const double s = std::floor(std::pow(lambda * ball, 1.0 / static_cast<double>(dimension)) + 1e-12) - 1.0;
  return std::max(1.0, s);
}

namespace detail {

inline std::uint64_t spread_bits(std::uint64_t v, std::size_t dimension) {
  std::uint64_t out = 0;
  for (std::size_t b = 0; b < 21; ++b) out |= ((v >> b) & 1ULL) << (b * dimension);
  return out;
}

inline std::uint64_t morton_key(const std::array<std::uint64_t, 3>& cell, std::size_t dimension) {
  std::uint64_t key = 0;
  for (std::size_t d = 0; d < dimension; ++d) key |= spread_bits(cell[d], dimension) << d;
  return key;
}

/// Sizes of ∂Γ for every block, from a block id per vertex.
inline std::vector<std::size_t> boundary_sizes(const ConnectivityGraph& g, const std::vector<std::size_t>& block_of,
                                               std::size_t blocks) {
  std::vector<std::pair<std::size_t, std::size_t>> members;  // (block, vertex) on that block's boundary
  for (const auto& [u, v] : g.edges()) {
    const auto bu = block_of[u], bv = block_of[v];
    if (bu == bv) continue;
    members.emplace_back(bu, u);
    members.emplace_back(bu, v);
    members.emplace_back(bv, u);
    members.emplace_back(bv, v);
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<std::size_t> sizes(blocks, 0);
  for (const auto& [b, v] : members) ++sizes[b];
  return sizes;
}

/// |∂U| for U given as a vertex list, using `stamp` scratch space (size |V|, values < tag).
inline std::size_t boundary_size(const ConnectivityGraph& g, const std::vector<std::size_t>& u,
                                 std::vector<std::uint64_t>& inside, std::vector<std::uint64_t>& counted,
                                 std::uint64_t tag) {
  for (auto v : u) inside[v] = tag;
  std::size_t count = 0;
  for (auto v : u) {
    bool edge_vertex = false;
    for (auto w : g.neighbors(v)) {
      if (inside[w] == tag) continue;
      edge_vertex = true;
      if (counted[w] != tag) {
        counted[w] = tag;
        ++count;
      }
    }
    if (edge_vertex) ++count;
  }
  return count;
}

}  // namespace detail

/// Partition of the embedded graph into blocks of at most λ vertices. Deterministic given
/// the vertex order. `kappa` caps per-block boundaries during merging (default κ(c, D)).
inline Partition grid_partition(const ConnectivityGraph& g, const Embedding& e, double lambda,
                                std::optional<double> kappa = std::nullopt) {
  if (!(lambda >= 1.0)) throw InputError("block size λ must be at least 1");
  if (e.dimension < 1 || e.dimension > 3) throw InputError("embedding dimension must be 1, 2 or 3");
  if (e.coords.size() != g.size()) throw InputError("embedding has wrong number of points");
  Partition out;
  if (g.size() == 0) return out;
  const auto cap = static_cast<std::size_t>(std::floor(lambda));
  const double limit = boundary_limit(kappa.value_or(default_kappa(e.c, e.dimension)), lambda, e.dimension);
  const double s = cell_side(lambda, e.dimension);

  std::array<double, 3> lo{0, 0, 0};
  for (std::size_t d = 0; d < e.dimension; ++d) {
    lo[d] = e.coords[0][d];
    for (const auto& p : e.coords) lo[d] = std::min(lo[d], p[d]);
  }
  std::map<std::uint64_t, std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::array<std::uint64_t, 3> cell{0, 0, 0};
    for (std::size_t d = 0; d < e.dimension; ++d) {
      const double c = std::floor((e.coords[i][d] - lo[d]) / s);
      if (!(c < static_cast<double>(1ULL << 21))) throw CapacityError("embedding too spread out for cell indexing");
      cell[d] = static_cast<std::uint64_t>(c);
    }
    cells[detail::morton_key(cell, e.dimension)].push_back(i);
  }

  // Overfull cells (only possible when spacing is violated) are cut into λ-sized chunks.
  std::vector<std::vector<std::size_t>> pieces;
  for (auto& [key, members] : cells) {
    for (std::size_t at = 0; at < members.size(); at += cap) {
      pieces.emplace_back(members.begin() + static_cast<std::ptrdiff_t>(at),
                          members.begin() + static_cast<std::ptrdiff_t>(std::min(members.size(), at + cap)));
    }
  }

  std::vector<std::uint64_t> inside(g.size(), 0), counted(g.size(), 0);
  std::uint64_t tag = 0;
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> current;
  for (auto& piece : pieces) {
    if (!current.empty() && current.size() + piece.size() <= cap) {
      std::vector<std::size_t> merged = current;
      merged.insert(merged.end(), piece.begin(), piece.end());
      if (static_cast<double>(detail::boundary_size(g, merged, inside, counted, ++tag)) <= limit) {
        current = std::move(merged);
        continue;
      }
      out.merge_limited = true;
    }
    if (!current.empty()) blocks.push_back(std::move(current));
    current = std::move(piece);
  }
  if (!current.empty()) blocks.push_back(std::move(current));

  std::vector<std::size_t> block_of(g.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::sort(blocks[b].begin(), blocks[b].end());
    Labels labels;
    labels.reserve(blocks[b].size());
    for (auto v : blocks[b]) {
      block_of[v] = b;
      labels.push_back(g.vertices()[v]);
    }
    out.blocks.push_back(std::move(labels));
  }
  out.boundary_sizes = detail::boundary_sizes(g, block_of, blocks.size());
  return out;
}

/// Λᵢ = Γᵢ ∩ subset, empty blocks dropped. Boundary sizes stay those of the parent Γᵢ.
inline Partition induced_partition(const Partition& partition, const Labels& subset) {
  std::unordered_map<std::string, bool> keep;
  for (const auto& v : subset) keep[v] = true;
  Partition out;
  out.merge_limited = partition.merge_limited;
  for (std::size_t i = 0; i < partition.blocks.size(); ++i) {
    Labels block;
    for (const auto& v : partition.blocks[i]) {
      if (keep.count(v)) block.push_back(v);
    }
    if (block.empty()) continue;
    out.blocks.push_back(std::move(block));
    out.boundary_sizes.push_back(partition.boundary_sizes[i]);
  }
  return out;
}

struct PartitionGuarantee {
  double lambda = 1.0;
  double kappa = 0.0;
  bool cover_ok = true;     // disjoint cover with consistent boundary sizes
  bool size_ok = true;
  bool boundary_ok = true;
  std::optional<bool> count_ok;  // empty: not applicable
  std::string count_note;
  double boundary_limit = 0.0;
  std::size_t count_limit = 0;
  std::size_t largest_block = 0;     // index of the worst block by size
  std::size_t widest_boundary = 0;   // index of the worst block by boundary

  bool ok() const noexcept { return cover_ok && size_ok && boundary_ok && count_ok.value_or(true); }
};

/// Checks |Γᵢ| ≤ λ, |∂Γᵢ| ≤ κ·λ^{(D−1)/D} and, for dense instances whose merging was not
/// limited, ℓ ≤ 2⌈m/λ⌉.
inline PartitionGuarantee check_guarantees(const ConnectivityGraph& g, const Embedding& e, const Partition& partition,
                                           double lambda, bool dense, std::optional<double> kappa = std::nullopt) {
  PartitionGuarantee r;
  r.lambda = lambda;
  r.kappa = kappa.value_or(default_kappa(e.c, e.dimension));
  r.boundary_limit = boundary_limit(r.kappa, lambda, e.dimension);
  r.count_limit = 2 * static_cast<std::size_t>(std::ceil(static_cast<double>(g.size()) / lambda));

  std::vector<std::size_t> block_of(g.size(), partition.size());
  for (std::size_t b = 0; b < partition.size(); ++b) {
    for (const auto& v : partition.blocks[b]) {
      if (!g.has_vertex(v)) {
        r.cover_ok = false;
        continue;
      }
      auto& slot = block_of[g.index(v)];
      if (slot != partition.size()) r.cover_ok = false;
      slot = b;
    }
  }
  if (std::count(block_of.begin(), block_of.end(), partition.size()) != 0) r.cover_ok = false;
  if (r.cover_ok && partition.boundary_sizes != detail::boundary_sizes(g, block_of, partition.size())) {
    r.cover_ok = false;
  }
  if (partition.boundary_sizes.size() != partition.size()) r.cover_ok = false;

  for (std::size_t b = 0; b < partition.size(); ++b) {
    const auto size = static_cast<double>(partition.blocks[b].size());
    if (size > lambda) r.size_ok = false;
    if (partition.blocks[b].size() > partition.blocks[r.largest_block].size()) r.largest_block = b;
    if (b < partition.boundary_sizes.size()) {
      if (static_cast<double>(partition.boundary_sizes[b]) > r.boundary_limit) r.boundary_ok = false;
      if (partition.boundary_sizes[b] > partition.boundary_sizes[r.widest_boundary]) r.widest_boundary = b;
    }
  }

  if (!dense) {
    r.count_note = "not applicable (sparse)";
  } else if (partition.merge_limited) {
    r.count_note = "not applicable (merging limited by boundary bound)";
  } else {
    r.count_ok = partition.size() <= r.count_limit;
  }
  return r;
}

/// Graph together with its embedding.
struct EmbeddedGraph {
  ConnectivityGraph graph;
  Embedding embedding;
};

/// Full D-dimensional grid with `side` points per axis, unit spacing and nearest-neighbour
/// edges (c = 1). Vertex labels are row-major indices.
inline EmbeddedGraph full_grid(std::size_t dimension, std::size_t side) {
  if (dimension < 1 || dimension > 3) throw InputError("grid dimension must be 1, 2 or 3");
  std::size_t m = 1;
  for (std::size_t d = 0; d < dimension; ++d) m *= side;
  Labels labels;
  labels.reserve(m);
  for (std::size_t i = 0; i < m; ++i) labels.push_back(std::to_string(i));
  EmbeddedGraph out{ConnectivityGraph(std::move(labels)), Embedding{dimension, 1.0, {}}};
  out.embedding.coords.resize(m, {0, 0, 0});
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t rest = i, stride = 1;
    for (std::size_t d = dimension; d-- > 0;) {
      const std::size_t x = rest % side;
      rest /= side;
      out.embedding.coords[i][d] = static_cast<double>(x);
      if (x + 1 < side) out.graph.add_edge(i, i + stride);
      stride *= side;
    }
  }
  return out;
}

/// Parses `dim D`, `c value`, `point label x [y [z]]` (exactly D coordinates) and `edge u v`
/// lines; '#' starts a comment.
inline EmbeddedGraph parse_graph_text(const std::string& text, const std::string& source = "<graph>") {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::size_t dimension = 0;
  double c = 1.0;
  Labels labels;
  std::vector<std::array<double, 3>> coords;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  auto number = [&](const std::string& w) {
    double v = 0.0;
    std::size_t used = 0;
    try {
      v = std::stod(w, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != w.size() || !std::isfinite(v)) throw ParseError(source, lineno, "bad number '" + w + "'");
    return v;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ws(line);
    std::vector<std::string> w;
    for (std::string t; ws >> t;) w.push_back(t);
    if (w.empty()) continue;
    if (w[0] == "dim") {
      if (w.size() != 2 || (w[1] != "1" && w[1] != "2" && w[1] != "3")) {
        throw ParseError(source, lineno, "'dim' takes 1, 2 or 3");
      }
      if (dimension != 0) throw ParseError(source, lineno, "duplicate 'dim'");
      dimension = static_cast<std::size_t>(w[1][0] - '0');
    } else if (w[0] == "c") {
      if (w.size() != 2) throw ParseError(source, lineno, "'c' takes one value");
      c = number(w[1]);
      if (!(c > 0.0)) throw ParseError(source, lineno, "'c' must be positive");
    } else if (w[0] == "point") {
      if (dimension == 0) throw ParseError(source, lineno, "'dim' must come before points");
      if (w.size() != 2 + dimension) {
        throw ParseError(source, lineno, "'point' takes a label and " + std::to_string(dimension) + " coordinate(s)");
      }
      if (!index.emplace(w[1], labels.size()).second) throw ParseError(source, lineno, "duplicate point '" + w[1] + "'");
      std::array<double, 3> p{0, 0, 0};
      for (std::size_t d = 0; d < dimension; ++d) p[d] = number(w[2 + d]);
      labels.push_back(w[1]);
      coords.push_back(p);
    } else if (w[0] == "edge") {
      if (w.size() != 3) throw ParseError(source, lineno, "'edge' takes two points");
      std::array<std::size_t, 2> ends{};
      for (std::size_t k = 0; k < 2; ++k) {
        const auto it = index.find(w[1 + k]);
        if (it == index.end()) throw ParseError(source, lineno, "unknown point '" + w[1 + k] + "'");
        ends[k] = it->second;
      }
      if (ends[0] == ends[1]) throw ParseError(source, lineno, "self-loop on '" + w[1] + "'");
      edges.emplace_back(ends[0], ends[1]);
    } else {
      throw ParseError(source, lineno, "unknown directive '" + w[0] + "'");
    }
  }
  if (dimension == 0) throw ParseError(source, lineno, "missing 'dim'");
  EmbeddedGraph out{ConnectivityGraph(std::move(labels)), Embedding{dimension, c, std::move(coords)}};
  for (const auto& [u, v] : edges) out.graph.add_edge(u, v);
  return out;
}

}  // namespace locbound

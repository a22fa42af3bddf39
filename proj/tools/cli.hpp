#pragma once

// locbound command line: parses argv, runs one subcommand and writes a JSON report.
// Exit codes: 0 success, 1 a verification found violations, 2 bad input.

#include "locbound/bounds.hpp"
#include "locbound/circuit_file.hpp"
#include "locbound/entropy.hpp"
#include "locbound/partition.hpp"
#include "locbound/separability.hpp"
#include "locbound/stabilizer.hpp"
#include "locbound/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace locbound::cli {

using json = nlohmann::json;

inline constexpr int kSchema = 1;
inline constexpr std::uint64_t kDefaultSeed = 0xC0DE;

inline json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline std::size_t to_index(const std::string& s) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw InputError("bad qubit index '" + s + "'");
  return v;
}

inline std::vector<std::size_t> to_indices(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& s : split(text, ',')) out.push_back(to_index(s));
  return out;
}

/// "0,1;2,3;4" → {{0,1},{2,3},{4}}.
inline std::vector<std::vector<std::size_t>> to_partition(const std::string& text) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& block : split(text, ';')) out.push_back(to_indices(block));
  return out;
}

inline StabilizerCode load_code(const std::string& path) {
  return validate_code(parse_code_text(read_file(path), path));
}

inline EcModule load_module(const std::string& path) { return parse_module_text(read_file(path), path); }

inline EmbeddedGraph load_graph(const std::string& path) { return parse_graph_text(read_file(path), path); }

inline Complex json_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InputError("matrix entries must be numbers or [re, im] pairs");
}

/// State file: {"qubits": [...], "amplitudes": [...]} or {"qubits": [...], "density": [[...]]}.
inline DensityMatrix load_state(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("qubits") || !j["qubits"].is_array()) {
    throw InputError(path + ": state needs a \"qubits\" list");
  }
  Labels labels;
  for (const auto& q : j["qubits"]) {
    if (!q.is_string()) throw InputError(path + ": qubit labels must be strings");
    labels.push_back(q.get<std::string>());
  }
  const auto layout = RegisterLayout::qubits(labels);
  const auto dim = static_cast<Eigen::Index>(layout.total_dim());
  if (j.contains("amplitudes")) {
    const auto& a = j["amplitudes"];
    if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != dim) {
      throw InputError(path + ": expected " + std::to_string(dim) + " amplitudes");
    }
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = json_complex(a[static_cast<std::size_t>(i)]);
    return DensityMatrix(PureState::normalized(layout, v));
  }
  if (j.contains("density")) {
    const auto& rows = j["density"];
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim) {
      throw InputError(path + ": expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " density matrix");
    }
    Matrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      const auto& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
        throw InputError(path + ": density row " + std::to_string(r) + " has the wrong length");
      }
      for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = json_complex(row[static_cast<std::size_t>(c)]);
    }
    return DensityMatrix(layout, m);
  }
  throw InputError(path + ": state needs \"amplitudes\" or \"density\"");
}

inline json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

inline json paulis_json(const std::vector<Pauli>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

inline json report_json(const VerificationReport& r) {
  json j;
  j["check"] = r.id;
  j["trials"] = r.trials;
  j["violations"] = r.violations;
  j["worst_margin"] = r.trials == 0 ? json(nullptr) : number(r.worst_margin);
  j["slack"] = r.slack;
  j["seed"] = r.seed;
  j["pass"] = r.pass();
  json params = json::object(), values = json::object();
  for (const auto& [k, v] : r.parameters) params[k] = number(v);
  for (const auto& [k, v] : r.values) values[k] = number(v);
  j["parameters"] = params;
  j["values"] = values;
  return j;
}

inline std::string report_summary(const VerificationReport& r) {
  return r.id + ": trials " + std::to_string(r.trials) + ", violations: " + std::to_string(r.violations) +
         (r.pass() ? ", pass" : ", FAIL");
}

/// A subcommand's work: fills the report and a one-line summary, returns the exit code.
using Handler = std::function<int(json&, std::string&)>;

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lower bounds and numerical checks for geometrically local quantum error correction."};
  app.name("locbound");
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  app.add_option("-o,--out", out_path, "Write the JSON report to this file instead of stdout");

  std::vector<std::pair<CLI::App*, Handler>> leaves;
  std::string command;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    auto* sub = parent->add_subcommand(name, help);
    return sub;
  };

  // code
  auto* code = app.add_subcommand("code", "Stabilizer code analysis");
  code->require_subcommand(1);
  std::string code_file;
  std::size_t cap = kMaxDenseQubits;
  std::string region_text;

  auto* code_check = leaf(code, "check", "Validate generators and list logical operators");
  code_check->add_option("--file", code_file, "Code file: one Pauli string per line")->required();
  leaves.emplace_back(code_check, [&](json& j, std::string& summary) {
    const auto c = load_code(code_file);
    j["n"] = c.n();
    j["k"] = c.k();
    j["rank"] = c.rank();
    j["generators"] = paulis_json(c.generators());
    j["logical_x"] = paulis_json(c.logical_x());
    j["logical_z"] = paulis_json(c.logical_z());
    summary = "valid [[" + std::to_string(c.n()) + "," + std::to_string(c.k()) + "]] code";
    return 0;
  });

  auto* code_distance = leaf(code, "distance", "Exhaustive minimum distance (n <= 12)");
  code_distance->add_option("--file", code_file, "Code file")->required();
  code_distance->add_option("--cap", cap, "Largest weight searched");
  leaves.emplace_back(code_distance, [&](json& j, std::string& summary) {
    const auto c = load_code(code_file);
    const auto d = min_distance(c, cap);
    j["n"] = c.n();
    j["k"] = c.k();
    j["distance"] = d.distance ? json(*d.distance) : json(nullptr);
    j["lower_bound"] = d.lower_bound;
    j["witness"] = d.witness ? json(d.witness->to_string()) : json(nullptr);
    summary = d.distance ? "distance " + std::to_string(*d.distance)
                         : "distance >= " + std::to_string(d.lower_bound);
    return 0;
  });

  auto* code_correctable = leaf(code, "correctable", "Is erasure of a qubit region correctable");
  code_correctable->add_option("--file", code_file, "Code file")->required();
  code_correctable->add_option("--region", region_text, "Comma-separated qubit indices, e.g. 0,2")->required();
  leaves.emplace_back(code_correctable, [&](json& j, std::string& summary) {
    const auto c = load_code(code_file);
    const auto region = to_indices(region_text);
    const bool ok = correctable_region(c, region);
    j["region"] = checked_region(c.n(), region);
    j["correctable"] = ok;
    if (c.n() <= 10) j["knill_laflamme"] = knill_laflamme_check(code_projector(c), c.n(), region);
    summary = std::string("region ") + (ok ? "correctable" : "not correctable");
    return 0;
  });

  auto* code_encode = leaf(code, "encode", "Encoding isometry onto the code space (n <= 10)");
  code_encode->add_option("--file", code_file, "Code file")->required();
  leaves.emplace_back(code_encode, [&](json& j, std::string& summary) {
    const auto c = load_code(code_file);
    if (c.n() > 10) throw CapacityError("encoding isometry output supports at most 10 qubits");
    const Matrix v = encoding_isometry(c);
    j["rows"] = v.rows();
    j["cols"] = v.cols();
    j["isometry"] = matrix_json(v);
    summary = "isometry " + std::to_string(v.rows()) + "x" + std::to_string(v.cols());
    return 0;
  });

  // entropy / ree
  std::string state_file, a_text, b_text, c_text;
  auto* entropy = leaf(&app, "entropy", "Entropies of a state given as JSON (qubits + amplitudes or density)");
  entropy->add_option("--state", state_file, "State file")->required();
  entropy->add_option("--a", a_text, "Comma-separated qubit labels of system A");
  entropy->add_option("--b", b_text, "System B (coherent and mutual information with A)");
  entropy->add_option("--c", c_text, "System C (conditional mutual information I(A:B|C))");
  leaves.emplace_back(entropy, [&](json& j, std::string& summary) {
    const auto rho = load_state(state_file);
    const auto a = split(a_text, ','), b = split(b_text, ','), c = split(c_text, ',');
    const double s_total = vn_entropy(rho);
    j["entropy"] = s_total;
    std::ostringstream s;
    s << "S = " << s_total;
    summary = s.str();
    if (!a.empty()) j["entropy_a"] = vn_entropy(rho, a);
    if (!b.empty()) j["entropy_b"] = vn_entropy(rho, b);
    if (!a.empty() && !b.empty()) {
      j["coherent_info_a_to_b"] = coherent_info(rho, a, b);
      j["coherent_info_b_to_a"] = coherent_info(rho, b, a);
      if (c.empty()) {
        j["mutual_info"] = vn_entropy(rho, a) + vn_entropy(rho, b) - vn_entropy(rho, detail::join(a, b));
      } else {
        j["cond_mutual_info"] = cond_mutual_info(rho, a, b, c);
      }
    } else if (!c.empty()) {
      throw InputError("--c needs both --a and --b");
    }
    return 0;
  });

  ReeBudget budget;
  auto* ree = leaf(&app, "ree", "Relative entropy of entanglement bracket across A:B");
  ree->add_option("--state", state_file, "State file")->required();
  ree->add_option("--a", a_text, "Side A labels")->required();
  ree->add_option("--b", b_text, "Side B labels")->required();
  ree->add_option("--restarts", budget.restarts, "Optimizer restarts");
  ree->add_option("--iterations", budget.iterations, "Iterations per restart");
  ree->add_option("--seed", budget.seed, "Seed");
  leaves.emplace_back(ree, [&](json& j, std::string& summary) {
    const auto rho = load_state(state_file);
    const auto b = ree_bracket(rho, Cut{split(a_text, ','), split(b_text, ',')}, budget);
    j["lower"] = b.lower;
    j["upper"] = b.upper;
    j["restarts"] = b.diagnostics.restarts;
    j["iterations"] = b.diagnostics.iterations;
    j["converged"] = b.diagnostics.converged;
    j["seed"] = budget.seed;
    std::ostringstream s;
    s << "REE in [" << b.lower << ", " << b.upper << "]";
    summary = s.str();
    return 0;
  });

  // partition
  std::string graph_file;
  double lambda = 1.0;
  std::optional<double> kappa;
  bool dense = false;
  auto* partition = leaf(&app, "partition", "Block partition of an embedded graph with size and boundary guarantees");
  partition->add_option("--graph", graph_file, "Graph file (dim, c, point, edge lines)")->required();
  partition->add_option("--lambda", lambda, "Largest block size")->required();
  partition->add_option("--kappa", kappa, "Boundary constant (default 4D(c+1)2^D)");
  partition->add_flag("--dense", dense, "Also check the block-count bound");
  leaves.emplace_back(partition, [&](json& j, std::string& summary) {
    const auto g = load_graph(graph_file);
    const auto emb = validate_embedding(g.graph, g.embedding);
    if (!emb.ok()) {
      throw InputError(std::string("embedding is not valid: ") + (emb.spacing_ok ? "" : "points closer than 1; ") +
                       (emb.edges_ok ? "" : "edge longer than c"));
    }
    const auto p = grid_partition(g.graph, g.embedding, lambda, kappa);
    const auto r = check_guarantees(g.graph, g.embedding, p, lambda, dense, kappa);
    json blocks = json::array();
    for (std::size_t i = 0; i < p.size(); ++i) blocks.push_back({{"qubits", p.blocks[i]}, {"boundary", p.boundary_sizes[i]}});
    j["blocks"] = blocks;
    j["count"] = p.size();
    j["total_boundary"] = p.total_boundary();
    j["lambda"] = lambda;
    j["kappa"] = r.kappa;
    j["boundary_limit"] = r.boundary_limit;
    j["size_ok"] = r.size_ok;
    j["boundary_ok"] = r.boundary_ok;
    j["cover_ok"] = r.cover_ok;
    j["count_ok"] = r.count_ok ? json(*r.count_ok) : json(r.count_note);
    j["count_limit"] = r.count_limit;
    summary = std::to_string(p.size()) + " blocks, guarantees " + (r.ok() ? "hold" : "FAIL");
    return r.ok() ? 0 : 1;
  });

  // bound
  auto* bound = app.add_subcommand("bound", "Evaluate depth and overhead lower bounds");
  bound->require_subcommand(1);
  std::size_t k = 0, d = 0, m = 0, dim = 2;
  std::optional<std::size_t> m_opt, k_opt;
  double c1 = 1.0, c2 = 1.0, p = 0.0, delta = 0.0, depth = 1.0;
  std::string boundary_text;

  auto* bound_encoding = leaf(bound, "encoding", "Encoding-circuit depth floor: k/(3 sum|boundary|) or geometric form");
  bound_encoding->add_option("--k", k, "Logical qubits")->required();
  auto* boundary_opt = bound_encoding->add_option("--boundary", boundary_text, "Comma-separated boundary sizes");
  auto* d_opt = bound_encoding->add_option("--d", d, "Code distance (geometric form)");
  bound_encoding->add_option("--m", m, "Physical qubits (geometric form)");
  bound_encoding->add_option("--dim", dim, "Embedding dimension D");
  bound_encoding->add_option("--c1", c1, "Partition constant c1");
  bound_encoding->add_option("--c2", c2, "Partition constant c2");
  boundary_opt->excludes(d_opt);
  leaves.emplace_back(bound_encoding, [&](json& j, std::string& summary) {
    double v = 0.0;
    j["k"] = k;
    if (!boundary_text.empty()) {
      std::vector<std::size_t> sizes = to_indices(boundary_text);
      v = encoding_depth_floor(k, sizes);
      j["boundary_sizes"] = sizes;
      j["form"] = "boundary";
    } else {
      if (d == 0 || m == 0) throw InputError("give --boundary, or --d and --m for the geometric form");
      v = encoding_depth_floor_geometric(k, d, m, dim, c1, c2);
      j["d"] = d;
      j["m"] = m;
      j["dimension"] = dim;
      j["c1"] = c1;
      j["c2"] = c2;
      j["lambda"] = d - 1;
      j["form"] = "geometric";
    }
    j["floor"] = number(v);
    std::ostringstream s;
    s << "depth >= " << v;
    summary = s.str();
    return 0;
  });

  auto* bound_syndrome = leaf(bound, "syndrome", "Syndrome-extraction depth floor (encoding floor minus one)");
  bound_syndrome->add_option("--k", k, "Logical qubits")->required();
  bound_syndrome->add_option("--d", d, "Code distance")->required();
  bound_syndrome->add_option("--m", m, "Physical qubits")->required();
  bound_syndrome->add_option("--dim", dim, "Embedding dimension D");
  bound_syndrome->add_option("--c1", c1, "Partition constant c1");
  bound_syndrome->add_option("--c2", c2, "Partition constant c2");
  leaves.emplace_back(bound_syndrome, [&](json& j, std::string& summary) {
    const double enc = encoding_depth_floor_geometric(k, d, m, dim, c1, c2);
    const double v = syndrome_depth_floor(k, d, m, dim, c1, c2);
    j["k"] = k;
    j["d"] = d;
    j["m"] = m;
    j["dimension"] = dim;
    j["c1"] = c1;
    j["c2"] = c2;
    j["encoding_floor"] = enc;
    j["floor"] = v;
    std::ostringstream s;
    s << "depth >= " << v;
    summary = s.str();
    return 0;
  });

  auto* bound_overhead = leaf(bound, "overhead", "Qubit overhead floor m/k for noise p, logical error delta and depth");
  bound_overhead->add_option("--p", p, "Depolarizing noise parameter")->required();
  bound_overhead->add_option("--delta", delta, "Logical error rate")->required();
  bound_overhead->add_option("--depth", depth, "Circuit depth per round")->required();
  bound_overhead->add_option("--dim", dim, "Embedding dimension D");
  bound_overhead->add_option("--c1", c1, "Partition constant c1");
  bound_overhead->add_option("--c2", c2, "Partition constant c2");
  bound_overhead->add_option("--m", m_opt, "Physical qubits, to compare m/k with the floor");
  bound_overhead->add_option("--k", k_opt, "Logical qubits");
  leaves.emplace_back(bound_overhead, [&](json& j, std::string& summary) {
    if (m_opt.has_value() != k_opt.has_value()) throw InputError("--m and --k go together");
    OverheadInputs in{p, delta, dim, depth, c1, c2, m_opt, k_opt};
    const auto r = overhead_floor(in);
    j["p"] = p;
    j["delta"] = delta;
    j["depth"] = depth;
    j["dimension"] = dim;
    j["c1"] = c1;
    j["c2"] = c2;
    j["f"] = r.f;
    j["lambda"] = r.lambda;
    j["partition_term"] = number(r.partition_term);
    j["noise_term"] = r.noise_term;
    j["floor"] = r.floor;
    j["active"] = r.active;
    if (r.ratio) {
      j["m"] = *m_opt;
      j["k"] = *k_opt;
      j["ratio"] = *r.ratio;
      j["satisfiable"] = *r.satisfiable;
    }
    std::ostringstream s;
    s << "m/k >= " << r.floor << " (" << r.active << " term)";
    summary = s.str();
    return 0;
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Numerical checks of the inequalities behind the bounds");
  verify->require_subcommand(1);
  std::uint64_t seed = kDefaultSeed;
  std::size_t qubits = 8, layers = 100, states = 20, trials = 1000;
  std::string partition_text, circuit_file, gamma_text;
  std::vector<VerificationReport> results;

  auto* v_sie = leaf(verify, "sie",
                     "Entanglement growth per layer: for random two-qubit-gate layers on a 2 x (q/2) grid, "
                     "S(U) rises by at most 3|boundary(U)| for every cut U");
  v_sie->add_option("--qubits", qubits, "Qubits (2 to 8)");
  v_sie->add_option("--layers", layers, "Random layers");
  v_sie->add_option("--seed", seed, "Seed");
  leaves.emplace_back(v_sie, [&](json&, std::string&) {
    results = {verify_sie(seed, qubits, layers)};
    return 0;
  });

  auto* v_structure = leaf(verify, "structure-code",
                           "Entanglement spread of a code: for blocks smaller than the distance, the coherent-"
                           "information lower bounds on the encoded maximally mixed state sum to at least k");
  v_structure->add_option("--file", code_file, "Code file")->required();
  v_structure->add_option("--partition", partition_text, "Blocks such as 0,1;2,3;4 (default: singletons)");
  leaves.emplace_back(v_structure, [&](json&, std::string&) {
    const auto c = load_code(code_file);
    auto blocks = to_partition(partition_text);
    if (blocks.empty()) {
      for (std::size_t q = 0; q < c.n(); ++q) blocks.push_back({q});
    }
    results = {verify_structure_code(c, blocks)};
    return 0;
  });

  auto* v_corr = leaf(verify, "corr-max",
                      "Correctable regions are maximally entangled: I(L>rest) = S(L) on random code states "
                      "for every region L smaller than the distance (n <= 8)");
  v_corr->add_option("--file", code_file, "Code file")->required();
  v_corr->add_option("--states", states, "Random code states");
  v_corr->add_option("--seed", seed, "Seed");
  leaves.emplace_back(v_corr, [&](json&, std::string&) {
    results = {verify_corr_max_entangled(load_code(code_file), seed, states)};
    return 0;
  });

  auto* v_depth = leaf(verify, "depth-bound",
                       "Depth needed to regrow entanglement after erasing a region G of a simulated module: "
                       "3 depth |boundary(G)| >= E - sqrt(r)|L| - g(sqrt(r)), r = delta/p^|G|");
  v_depth->add_option("--circuit", circuit_file, "Module file")->required();
  v_depth->add_option("--gamma", gamma_text, "Comma-separated qubit labels of the erased region")->required();
  leaves.emplace_back(v_depth, [&](json&, std::string&) {
    results = {verify_depth_bound(load_module(circuit_file), split(gamma_text, ','))};
    return 0;
  });

  auto* v_appendix = leaf(verify, "appendix",
                          "Randomized auxiliary inequalities: fidelity of a mixture component, conditional mutual "
                          "information under approximate recovery, and REE lower <= upper");
  v_appendix->add_option("--trials", trials, "Trials per check");
  v_appendix->add_option("--seed", seed, "Seed");
  leaves.emplace_back(v_appendix, [&](json&, std::string&) {
    results = verify_appendix(seed, trials);
    return 0;
  });

  auto* v_overhead = leaf(verify, "overhead",
                          "Simulate a module, measure its logical error rate and check m/k against the overhead floor");
  v_overhead->add_option("--circuit", circuit_file, "Module file")->required();
  v_overhead->add_option("--dim", dim, "Embedding dimension D");
  v_overhead->add_option("--c1", c1, "Partition constant c1");
  v_overhead->add_option("--c2", c2, "Partition constant c2");
  leaves.emplace_back(v_overhead, [&](json&, std::string&) {
    results = {verify_overhead_consistency(load_module(circuit_file), {dim, c1, c2})};
    return 0;
  });
  const std::vector<CLI::App*> verifiers{v_sie, v_structure, v_corr, v_depth, v_appendix, v_overhead};

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (auto& [sub, handler] : leaves) {
    if (!sub->parsed()) continue;
    command = sub->get_parent() == &app ? sub->get_name() : sub->get_parent()->get_name() + " " + sub->get_name();
    json doc;
    doc["schema"] = kSchema;
    doc["command"] = command;
    std::string summary;
    int status = 0;
    try {
      status = handler(doc, summary);
      if (std::find(verifiers.begin(), verifiers.end(), sub) != verifiers.end()) {
        json list = json::array();
        bool pass = true;
        for (const auto& r : results) {
          list.push_back(report_json(r));
          pass = pass && r.pass();
          summary += (summary.empty() ? "" : "; ") + report_summary(r);
        }
        doc["reports"] = list;
        doc["pass"] = pass;
        status = pass ? 0 : 1;
      }
    } catch (const std::invalid_argument& e) {  // InputError, ParseError
      err << "locbound: error: " << e.what() << "\n";
      return 2;
    } catch (const std::length_error& e) {  // CapacityError
      err << "locbound: error: " << e.what() << "\n";
      return 2;
    }
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(out_path);
      if (!file) {
        err << "locbound: error: cannot write '" << out_path << "'\n";
        return 2;
      }
      file << text;
    }
    err << summary << "\n";
    return status;
  }
  err << "locbound: error: no command given\n";
  return 2;
}

}  // namespace locbound::cli

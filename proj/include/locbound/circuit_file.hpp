#pragma once

// Line-oriented module/circuit files.
//
//   qubits 4              (or: qubits a b c d)
//   edge 0 1
//   data 0 1 2 3          (A′; defaults to every qubit)
//   stabilizers XXXX ZZZZ (encoder = code-space isometry; default: identity on A′)
//   noise 0.1
//   rounds 2              (the round below is repeated)
//   layer
//   h 0
//   cnot 0 1
//   u1 <4 entries> on 0
//   u2 <16 entries> on 0 1
//   meas 2 -> m0
//   kraus 0 [1 ...] [-> key] : <entries> ; <entries>
//   if m0=1 x 3
//   clear
//   decoder               (following layers form the noiseless decoder)
//
// Matrix entries are row-major complex literals: 1, -0.5, 0.5i, 1+2i, -i.

#include "locbound/circuit.hpp"
#include "locbound/error.hpp"
#include "locbound/stabilizer.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace locbound {

namespace detail {

inline bool parse_real(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto res = std::from_chars(first, s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace detail

/// Parses a complex literal; throws InputError on malformed text.
inline Complex parse_complex(const std::string& text) {
  const auto bad = [&] { return InputError("bad complex number '" + text + "'"); };
  if (text.empty()) throw bad();
  if (text.back() != 'i') {
    double re = 0.0;
    if (!detail::parse_real(text, re)) throw bad();
    return {re, 0.0};
  }
  const std::string body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string re_part = split == std::string::npos ? "" : body.substr(0, split);
  const std::string im_part = split == std::string::npos ? body : body.substr(split);
  double re = 0.0, im = 0.0;
  if (!re_part.empty() && !detail::parse_real(re_part, re)) throw bad();
  if (im_part.empty() || im_part == "+") im = 1.0;
  else if (im_part == "-") im = -1.0;
  else if (!detail::parse_real(im_part, im)) throw bad();
  return {re, im};
}

/// Named gate matrices; the first listed qubit is most significant.
inline std::optional<Matrix> named_gate(const std::string& name) {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0, 1);
  Matrix m;
  if (name == "i" || name == "id") return Matrix::Identity(2, 2);
  if (name == "h") {
    m.resize(2, 2);
    m << r, r, r, -r;
  } else if (name == "x") {
    m.resize(2, 2);
    m << 0, 1, 1, 0;
  } else if (name == "y") {
    m.resize(2, 2);
    m << 0, -i, i, 0;
  } else if (name == "z") {
    m.resize(2, 2);
    m << 1, 0, 0, -1;
  } else if (name == "s") {
    m.resize(2, 2);
    m << 1, 0, 0, i;
  } else if (name == "sdg") {
    m.resize(2, 2);
    m << 1, 0, 0, -i;
  } else if (name == "t") {
    m.resize(2, 2);
    m << 1, 0, 0, std::exp(i * (M_PI / 4));
  } else if (name == "cnot" || name == "cx") {
    m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  } else if (name == "cz") {
    m = Matrix::Identity(4, 4);
    m(3, 3) = -1;
  } else if (name == "swap") {
    m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
  } else {
    return std::nullopt;
  }
  return m;
}

namespace detail {

class ModuleParser {
 public:
  ModuleParser(const std::string& source) : source_(source) {}

  EcModule parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      ++lineno_;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::vector<std::string> words = split(line);
      if (words.empty()) continue;
      try {
        statement(words);
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception& e) {
        throw ParseError(source_, lineno_, e.what());
      }
    }
    if (!have_qubits_) throw ParseError(source_, lineno_, "missing 'qubits' declaration");
    if (module_.data.empty()) module_.data = module_.graph.vertices();
    const auto n = module_.data.size();
    if (stabilizers_.empty()) {
      if (n > kMaxSimulatedQubits) throw ParseError(source_, lineno_, "too many data qubits");
      const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
      module_.encoder = Matrix::Identity(d, d);
    } else {
      std::vector<Pauli> gens;
      for (const auto& [line, text] : stabilizers_) {
        try {
          gens.push_back(Pauli::parse(text));
          if (gens.back().n() != n) throw InputError("stabilizer length differs from data qubit count");
        } catch (const std::exception& e) {
          throw ParseError(source_, line, e.what());
        }
      }
      try {
        module_.encoder = encoding_isometry(validate_code(gens));
      } catch (const std::exception& e) {
        throw ParseError(source_, stabilizers_.front().first, e.what());
      }
    }
    module_.rounds.assign(repeat_, round_);
    return std::move(module_);
  }

 private:
  static std::vector<std::string> split(const std::string& line) {
    std::istringstream ws(line);
    std::vector<std::string> out;
    std::string w;
    while (ws >> w) out.push_back(w);
    return out;
  }

  std::size_t to_count(const std::string& w) const {
    std::size_t v = 0;
    const auto res = std::from_chars(w.data(), w.data() + w.size(), v);
    if (res.ec != std::errc() || res.ptr != w.data() + w.size()) throw InputError("expected a count, got '" + w + "'");
    return v;
  }

  void require_qubits() const {
    if (!have_qubits_) throw InputError("'qubits' must come first");
  }

  Layer& current_layer() {
    Circuit& c = in_decoder_ ? module_.decoder : round_;
    if (c.empty()) throw InputError("operation outside a 'layer' block");
    return c.back();
  }

  void statement(std::vector<std::string> w) {
    const std::string& head = w[0];
    if (head == "qubits") {
      if (have_qubits_) throw InputError("duplicate 'qubits' declaration");
      if (w.size() < 2) throw InputError("'qubits' needs a count or labels");
      Labels labels;
      if (w.size() == 2 && std::all_of(w[1].begin(), w[1].end(), ::isdigit)) {
        const auto m = to_count(w[1]);
        for (std::size_t i = 0; i < m; ++i) labels.push_back(std::to_string(i));
      } else {
        labels.assign(w.begin() + 1, w.end());
      }
      if (labels.empty()) throw InputError("module needs at least one qubit");
      module_.graph = ConnectivityGraph(labels);
      have_qubits_ = true;
    } else if (head == "edge") {
      require_qubits();
      if (w.size() != 3) throw InputError("'edge' takes two qubits");
      module_.graph.add_edge(w[1], w[2]);
    } else if (head == "data") {
      require_qubits();
      if (!module_.data.empty()) throw InputError("duplicate 'data' declaration");
      for (std::size_t i = 1; i < w.size(); ++i) module_.graph.index(w[i]);
      module_.data.assign(w.begin() + 1, w.end());
      if (module_.data.empty()) throw InputError("'data' needs at least one qubit");
      RegisterLayout::qubits(module_.data);
    } else if (head == "stabilizers") {
      if (w.size() < 2) throw InputError("'stabilizers' needs generators");
      for (std::size_t i = 1; i < w.size(); ++i) stabilizers_.emplace_back(lineno_, w[i]);
    } else if (head == "noise") {
      double p = 0.0;
      if (w.size() != 2 || !parse_real(w[1], p) || !(p >= 0.0 && p <= 1.0)) {
        throw InputError("'noise' takes one value in [0,1]");
      }
      module_.p = p;
    } else if (head == "rounds") {
      if (w.size() != 2) throw InputError("'rounds' takes one count");
      repeat_ = to_count(w[1]);
      if (repeat_ == 0) throw InputError("'rounds' must be at least 1");
    } else if (head == "layer") {
      require_qubits();
      if (w.size() != 1) throw InputError("'layer' takes no arguments");
      (in_decoder_ ? module_.decoder : round_).emplace_back();
    } else if (head == "decoder") {
      if (w.size() != 1) throw InputError("'decoder' takes no arguments");
      in_decoder_ = true;
    } else if (head == "clear") {
      if (w.size() != 1) throw InputError("'clear' takes no arguments");
      current_layer().relabel = record::clear;
    } else {
      require_qubits();
      current_layer().ops.push_back(operation(w));
    }
  }

  void check_qubits(const Labels& qs) const {
    for (const auto& q : qs) module_.graph.index(q);
  }

  Matrix entries_to_matrix(const std::vector<std::string>& tokens, std::size_t qubits) const {
    const std::size_t d = std::size_t{1} << qubits;
    if (tokens.size() != d * d) {
      throw InputError("expected " + std::to_string(d * d) + " matrix entries, got " + std::to_string(tokens.size()));
    }
    Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d * d; ++i) {
      m(static_cast<Eigen::Index>(i / d), static_cast<Eigen::Index>(i % d)) = parse_complex(tokens[i]);
    }
    return m;
  }

  Instrument operation(std::vector<std::string> w) {
    std::optional<std::pair<std::string, std::string>> condition;
    if (w[0] == "if") {
      if (w.size() < 3) throw InputError("'if' needs a condition and an operation");
      const auto eq = w[1].find('=');
      if (eq == std::string::npos || eq == 0) throw InputError("condition must look like key=value");
      condition = std::make_pair(w[1].substr(0, eq), w[1].substr(eq + 1));
      w.erase(w.begin(), w.begin() + 2);
    }
    Instrument op = plain_operation(w);
    op.condition = condition;
    return op;
  }

  Instrument plain_operation(const std::vector<std::string>& w) {
    const std::string& head = w[0];
    Instrument op;
    if (auto gate = named_gate(head)) {
      const auto arity = static_cast<std::size_t>(linalg::log2_exact(static_cast<std::size_t>(gate->rows())));
      if (w.size() != 1 + arity) throw InputError("'" + head + "' takes " + std::to_string(arity) + " qubit(s)");
      op.qubits.assign(w.begin() + 1, w.end());
      op.kraus.push_back(*gate);
    } else if (head == "u1" || head == "u2") {
      const std::size_t arity = head == "u1" ? 1 : 2;
      const auto on = std::find(w.begin(), w.end(), "on");
      if (on == w.end()) throw InputError("'" + head + "' needs 'on <qubits>'");
      op.qubits.assign(on + 1, w.end());
      if (op.qubits.size() != arity) throw InputError("'" + head + "' acts on " + std::to_string(arity) + " qubit(s)");
      op.kraus.push_back(entries_to_matrix({w.begin() + 1, on}, arity));
      const auto d = op.kraus[0].rows();
      if ((op.kraus[0].adjoint() * op.kraus[0] - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kCompletenessTolerance) {
        throw InputError("'" + head + "' matrix is not unitary");
      }
    } else if (head == "meas") {
      if (w.size() != 4 || w[2] != "->") throw InputError("expected 'meas <qubit> -> <key>'");
      op.qubits = {w[1]};
      Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
      p0(0, 0) = 1;
      p1(1, 1) = 1;
      op.kraus = {p0, p1};
      op.record_key = w[3];
      op.outcomes = {"0", "1"};
    } else if (head == "kraus") {
      const auto colon = std::find(w.begin(), w.end(), ":");
      if (colon == w.end()) throw InputError("'kraus' needs ':' before the matrices");
      std::vector<std::string> target(w.begin() + 1, colon);
      const auto arrow = std::find(target.begin(), target.end(), "->");
      if (arrow != target.end()) {
        if (arrow + 2 != target.end()) throw InputError("expected '-> <key>' after the qubits");
        op.record_key = *(arrow + 1);
        target.erase(arrow, target.end());
      }
      if (target.empty()) throw InputError("'kraus' needs at least one qubit");
      op.qubits = target;
      std::vector<std::string> current;
      auto flush = [&] {
        if (current.empty()) throw InputError("empty Kraus operator");
        op.kraus.push_back(entries_to_matrix(current, op.qubits.size()));
        current.clear();
      };
      for (auto it = colon + 1; it != w.end(); ++it) {
        if (*it == ";") flush();
        else current.push_back(*it);
      }
      flush();
      if (!op.record_key.empty()) {
        for (std::size_t i = 0; i < op.kraus.size(); ++i) op.outcomes.push_back(std::to_string(i));
      }
    } else {
      throw InputError("unknown operation '" + head + "'");
    }
    check_qubits(op.qubits);
    return op;
  }

  std::string source_;
  std::size_t lineno_ = 0;
  EcModule module_;
  bool have_qubits_ = false;
  bool in_decoder_ = false;
  Circuit round_;
  std::size_t repeat_ = 1;
  std::vector<std::pair<std::size_t, std::string>> stabilizers_;
};

}  // namespace detail

/// Parses a module file. Layer-level checks (locality, completeness) are left to
/// validate_module so they can be reported together.
inline EcModule parse_module_text(const std::string& text, const std::string& source = "<circuit>") {
  return detail::ModuleParser(source).parse(text);
}

}  // namespace locbound

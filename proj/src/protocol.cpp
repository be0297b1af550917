// Copyright 2026 The spintomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spintomo/protocol.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>
#include <unordered_set>

#include "spintomo/error.hpp"

namespace spintomo {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_angle(double a) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, a);
  return std::string(buf, res.ptr);
}

std::size_t parse_index(std::string_view& s) {
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == 0) throw ConfigError("expected a qubit number");
  std::size_t v = 0;
  std::from_chars(s.data(), s.data() + i, v);
  if (v == 0) throw ConfigError("qubit numbers are 1-based");
  s.remove_prefix(i);
  return v - 1;
}

double parse_paren_angle(std::string_view& s) {
  if (s.empty() || s.front() != '(' || s.back() != ')')
    throw ConfigError("expected '(angle)'");
  const std::string inner(s.substr(1, s.size() - 2));
  s = {};
  try {
    std::size_t used = 0;
    const double v = std::stod(inner, &used);
    if (used != inner.size()) throw ConfigError("bad angle '" + inner + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError("bad angle '" + inner + "'");
  }
}

}  // namespace

std::string Gate::to_string() const {
  const std::string q = std::to_string(qubit + 1);
  switch (kind) {
    case GateKind::X: return "X" + q;
    case GateKind::Y: return "Y" + q;
    case GateKind::Z: return "Z" + q;
    case GateKind::Xbar: return "Xbar" + q;
    case GateKind::RotX: return "Rx" + q + "(" + format_angle(angle) + ")";
    case GateKind::RotY: return "Ry" + q + "(" + format_angle(angle) + ")";
    case GateKind::RotZ: return "Rz" + q + "(" + format_angle(angle) + ")";
    case GateKind::AxisConj:
      return "A" + q + "[" + pauli_char(alpha) + pauli_char(beta) + "](" + format_angle(angle) + ")";
    case GateKind::Pair:
      if (qubit < 9 && qubit2 < 9) return "U" + q + std::to_string(qubit2 + 1);
      return "U(" + q + "," + std::to_string(qubit2 + 1) + ")";
  }
  return "?";
}

Gate Gate::parse(std::string_view tok) {
  const std::string orig(tok);
  try {
    auto take = [&](std::string_view prefix) {
      if (tok.substr(0, prefix.size()) == prefix) {
        tok.remove_prefix(prefix.size());
        return true;
      }
      return false;
    };
    Gate g;
    if (take("Xbar")) {
      g = xbar(parse_index(tok));
    } else if (take("Rx") || take("Ry") || take("Rz")) {
      const char axis = orig[1];
      const std::size_t q = parse_index(tok);
      const double a = parse_paren_angle(tok);
      g = axis == 'x' ? rot_x(q, a) : axis == 'y' ? rot_y(q, a) : rot_z(q, a);
    } else if (take("A")) {
      const std::size_t q = parse_index(tok);
      if (tok.size() < 4 || tok[0] != '[' || tok[3] != ']') throw ConfigError("expected [ab]");
      const Pauli a = pauli_from_char(tok[1]), b = pauli_from_char(tok[2]);
      tok.remove_prefix(4);
      g = axis_conj(q, a, b, parse_paren_angle(tok));
    } else if (take("U")) {
      if (!tok.empty() && tok.front() == '(') {
        tok.remove_prefix(1);
        const std::size_t l = parse_index(tok);
        if (tok.empty() || tok.front() != ',') throw ConfigError("expected ','");
        tok.remove_prefix(1);
        const std::size_t m = parse_index(tok);
        if (tok != ")") throw ConfigError("expected ')'");
        tok = {};
        g = pair(l, m);
      } else {
        if (tok.size() != 2 || !std::isdigit(static_cast<unsigned char>(tok[0])) ||
            !std::isdigit(static_cast<unsigned char>(tok[1])))
          throw ConfigError("expected two single-digit qubits, e.g. U12");
        g = pair(static_cast<std::size_t>(tok[0] - '1'), static_cast<std::size_t>(tok[1] - '1'));
        if (tok[0] == '0' || tok[1] == '0') throw ConfigError("qubit numbers are 1-based");
        tok = {};
      }
      if (g.qubit == g.qubit2) throw ConfigError("pair gate needs two distinct qubits");
    } else if (take("X")) {
      g = x(parse_index(tok));
    } else if (take("Y")) {
      g = y(parse_index(tok));
    } else if (take("Z")) {
      g = z(parse_index(tok));
    } else {
      throw ConfigError("unknown gate");
    }
    if (!tok.empty()) throw ConfigError("trailing characters");
    return g;
  } catch (const ConfigError& e) {
    throw ConfigError("cannot parse gate '" + orig + "': " + e.what());
  }
}

std::size_t PulseSequence::pair_count() const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.is_pair(); }));
}

std::string PulseSequence::to_string() const {
  if (gates.empty()) return "I";
  std::string s;
  for (const auto& g : gates) {
    if (!s.empty()) s += ' ';
    s += g.to_string();
  }
  return s;
}

PulseSequence PulseSequence::parse(std::string_view text) {
  PulseSequence seq;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) {
    if (tok == "I") continue;
    seq.gates.push_back(Gate::parse(tok));
  }
  return seq;
}

CMatrix rotation(Pauli axis, double theta) {
  const cplx i{0.0, 1.0};
  return CMatrix::identity(2) * cplx(std::cos(theta / 2)) - pauli_matrix(axis) * (i * std::sin(theta / 2));
}

SequenceCompiler::SequenceCompiler(std::size_t n, std::optional<ModelPreset> model)
    : n_(n), model_(std::move(model)) {
  if (n_ == 0) throw DimensionError("register needs at least one qubit");
}

namespace {

CMatrix embed_single(const CMatrix& u, std::size_t q, std::size_t n) {
  CMatrix out = q == 0 ? u : CMatrix::identity(2);
  for (std::size_t k = 1; k < n; ++k) out = kron(out, k == q ? u : CMatrix::identity(2));
  return out;
}

CMatrix single_qubit_matrix(const Gate& g) {
  switch (g.kind) {
    case GateKind::X: return rotation(Pauli::X, kPi / 2);
    case GateKind::Y: return rotation(Pauli::Y, kPi / 2);
    case GateKind::Z: return rotation(Pauli::Z, kPi / 2);
    case GateKind::Xbar: return rotation(Pauli::X, 3 * kPi / 2);
    case GateKind::RotX: return rotation(Pauli::X, g.angle);
    case GateKind::RotY: return rotation(Pauli::Y, g.angle);
    case GateKind::RotZ: return rotation(Pauli::Z, g.angle);
    case GateKind::AxisConj:
      return rotation(g.alpha, kPi / 2) * rotation(g.beta, g.angle) * rotation(g.alpha, -kPi / 2);
    case GateKind::Pair: break;
  }
  throw Error("not a single-qubit gate");
}

}  // namespace

const CMatrix& SequenceCompiler::gate_matrix(const Gate& g) {
  if (g.qubit >= n_ || (g.is_pair() && g.qubit2 >= n_)) {
    throw DimensionError("gate " + g.to_string() + " addresses a qubit outside the " +
                         std::to_string(n_) + "-qubit register");
  }
  const std::string key = g.to_string();
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  CMatrix m;
  if (g.is_pair()) {
    if (!model_) throw Error("pair gate " + key + " needs a model to compile");
    m = evolve(hamiltonian_matrix(pair_segment_spec(*model_, n_, g.qubit, g.qubit2)), model_->tau);
  } else {
    m = embed_single(single_qubit_matrix(g), g.qubit, n_);
  }
  return cache_.emplace(key, std::move(m)).first->second;
}

CMatrix SequenceCompiler::compile(const PulseSequence& seq) {
  CMatrix w = CMatrix::identity(std::size_t{1} << n_);
  for (const auto& g : seq.gates) w = w * gate_matrix(g);
  return w;
}

CMatrix compile(const PulseSequence& seq, std::size_t n, const std::optional<ModelPreset>& model) {
  SequenceCompiler c(n, model);
  return c.compile(seq);
}

PauliPolynomial equivalent_measurement(const CMatrix& w, std::size_t l) {
  const std::size_t n = qubits_for_dimension(w.rows());
  return conjugate_expand(w, PauliString::single(n, l, Pauli::Z));
}

PauliPolynomial equivalent_measurement(const PulseSequence& seq, std::size_t l, std::size_t n,
                                       const std::optional<ModelPreset>& model) {
  return equivalent_measurement(compile(seq, n, model), l);
}

MeasurementSetting make_setting(SequenceCompiler& compiler, PulseSequence seq, std::size_t pom_qubit) {
  if (pom_qubit >= compiler.qubits()) throw DimensionError("POM qubit out of range");
  MeasurementSetting s;
  s.unitary = compiler.compile(seq);
  s.em = equivalent_measurement(s.unitary, pom_qubit);
  s.sequence = std::move(seq);
  s.pom_qubit = pom_qubit;
  return s;
}

// ---------------------------------------------------------------------------

std::string_view to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Match: return "match";
    case RowStatus::SignFlip: return "sign_flip";
    case RowStatus::Mismatch: return "mismatch";
    case RowStatus::Malformed: return "malformed";
  }
  return "?";
}

namespace {

struct PrintedRow {
  const char* model;
  const char* operations;
  // Compact printed entry: signed terms of (qubit digit, axis) factors,
  // e.g. "-1z +1x2y" for -s1z + s1x s2y. Transcribed verbatim, typos kept.
  const char* printed;
};

constexpr PrintedRow kPrintedTable[] = {
    {"xy", "X1 U12 Y1", "+1y +1x1x"},
    {"xy", "Y1 U12 Y1", "-1z +1x2y"},
    {"xy", "Y1 U12 Y1 X2", "-1z -1x2z"},
    {"xy", "X1 U12 X1", "-1z -1y2x"},
    {"xy", "Y1 U12 X1", "-1x -1y2y"},
    {"xy", "Y1 U12 X1 X2", "-1x +1y2z"},
    {"xy", "X1 U12", "+1y -1z2x"},
    {"xy", "Y1 U12", "-1x -1z2y"},
    {"xy", "Y1 U12 X2", "-1x +1z2z"},
    {"heisenberg", "U12", "+1z +2z +1y2x -1x2y"},
    {"heisenberg", "U12 X1", "+1y +2z -1z2x -1x2y"},
    {"heisenberg", "U12 Y1", "+2z -1x +1y2x -1z2y"},
    {"heisenberg", "U12 Z1", "+1z +2z +1x2x +1y2y"},
    {"heisenberg", "U12 Y2", "+1z -2x +1y2z -1x2y"},
    {"heisenberg", "Y1 U12", "-1x -2x -1z2y +1y2z"},
    {"heisenberg", "X1 U12", "+1y +2y -1z2x +1x2z"},
    {"heisenberg", "U12 X1 Z2", "+1y +2z +1z2y -1x2x"},
    {"heisenberg", "U12 Z1 Y2", "+1z -2x +1x2z +1y2y"},
};

constexpr PrintedRow kWorkedExample = {"xy", "Y1 U12", "-1x -1z2x"};

struct ParsedPrinted {
  PauliPolynomial poly{2};
  bool malformed = false;
  std::string text;
};

ParsedPrinted parse_printed(std::string_view compact) {
  ParsedPrinted out;
  std::istringstream is{std::string(compact)};
  std::string term;
  while (is >> term) {
    const double sign = term[0] == '-' ? -1.0 : 1.0;
    PauliString p(2);
    bool repeated = false;
    std::string human;
    for (std::size_t k = 1; k + 1 < term.size(); k += 2) {
      const std::size_t q = static_cast<std::size_t>(term[k] - '1');
      const Pauli axis = pauli_from_char(term[k + 1]);
      if (p[q] != Pauli::I) repeated = true;
      p.set(q, axis);
      if (!human.empty()) human += " ";
      human += std::string("s") + term[k] + term[k + 1];
    }
    out.text += (out.text.empty() ? (sign < 0 ? "-" : "") : (sign < 0 ? " - " : " + ")) + human;
    if (repeated) {
      out.malformed = true;
      continue;
    }
    out.poly.add(p, sign);
  }
  return out;
}

TableRow evaluate_row(const PrintedRow& row) {
  ModelConfig cfg;
  cfg.kind = parse_model_kind(row.model);
  const ModelPreset model = resolve_model(cfg);
  TableRow r;
  r.model = row.model;
  r.operations = row.operations;
  r.scale = cfg.kind == ModelKind::XY ? std::numbers::sqrt2 : 2.0;
  r.em = equivalent_measurement(PulseSequence::parse(row.operations), 0, 2, model);
  r.scaled = r.em.scaled(r.scale);

  bool unit = std::abs(r.em.sum_squares() - 1.0) <= 1e-10;
  for (const auto& [p, c] : r.scaled.terms()) unit = unit && std::abs(std::abs(c) - 1.0) <= 1e-10;
  r.consistent = unit;

  const ParsedPrinted printed = parse_printed(row.printed);
  r.printed = printed.text;
  std::set<PauliString> computed_keys, printed_keys;
  for (const auto& [p, c] : r.scaled.terms()) computed_keys.insert(p);
  for (const auto& [p, c] : printed.poly.terms()) printed_keys.insert(p);

  std::ostringstream detail;
  if (printed.malformed) {
    r.status = RowStatus::Malformed;
    detail << "printed entry has a factor repeated on one qubit (typo); computed canon: "
           << r.scaled.to_string();
  } else if (computed_keys != printed_keys) {
    r.status = RowStatus::Mismatch;
    detail << "printed " << printed.poly.to_string() << " vs computed " << r.scaled.to_string();
  } else if (!r.scaled.approx_equal(printed.poly, 1e-9)) {
    r.status = RowStatus::SignFlip;
    detail << "printed " << printed.poly.to_string() << " vs computed " << r.scaled.to_string();
  } else {
    r.status = RowStatus::Match;
  }
  r.detail = detail.str();
  return r;
}

}  // namespace

bool TableReport::all_consistent() const {
  return std::all_of(rows.begin(), rows.end(), [](const TableRow& r) { return r.consistent; }) &&
         worked_example.consistent;
}

std::size_t TableReport::count(RowStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [s](const TableRow& r) { return r.status == s; }));
}

TableReport verify_reference_table() {
  TableReport rep;
  for (const auto& row : kPrintedTable) rep.rows.push_back(evaluate_row(row));
  rep.worked_example = evaluate_row(kWorkedExample);
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

std::string em_key(const PauliPolynomial& em) {
  std::string key;
  for (const auto& [p, c] : em.terms()) {
    key += p.to_string();
    key += ':';
    key += std::to_string(std::llround(c * 1e9));
    key += ';';
  }
  return key;
}

std::vector<Gate> vocabulary(std::size_t n) {
  std::vector<Gate> v;
  for (std::size_t q = 0; q < n; ++q) {
    v.push_back(Gate::x(q));
    v.push_back(Gate::y(q));
    v.push_back(Gate::z(q));
    v.push_back(Gate::xbar(q));
  }
  for (std::size_t q = 0; q + 1 < n; ++q) v.push_back(Gate::pair(q, q + 1));
  return v;
}

struct Node {
  PulseSequence seq;
  std::size_t pom = 0;
  CMatrix m;  // W^dag Z_pom W
  std::vector<std::pair<std::size_t, double>> terms;  // (target index, coefficient)
};

struct Assignment {
  std::vector<std::pair<std::size_t, const Node*>> order;  // (target index, setting)
  std::optional<std::size_t> first_uncovered;
};

// Greedy triangular assignment. Each round fixes the canonically smallest
// target (lowest weight first) that some candidate can determine given the
// targets already fixed; ties go to the shortest sequence, then the largest
// |coefficient|, then discovery order.
Assignment assign_targets(const std::vector<PauliString>& targets,
                          const std::vector<std::unique_ptr<Node>>& candidates, double min_coefficient) {
  Assignment out;
  std::vector<char> determined(targets.size(), 0);
  for (;;) {
    std::size_t best_target = targets.size();
    const Node* best = nullptr;
    double best_coef = 0.0;
    for (const auto& node : candidates) {
      std::size_t open = targets.size();
      double coef = 0.0;
      bool usable = true;
      for (const auto& [idx, c] : node->terms) {
        if (determined[idx]) continue;
        if (open != targets.size()) {
          usable = false;
          break;
        }
        open = idx;
        coef = c;
      }
      if (!usable || open == targets.size() || std::abs(coef) < min_coefficient || open > best_target)
        continue;
      const bool better =
          open < best_target || node->seq.size() < best->seq.size() ||
          (node->seq.size() == best->seq.size() && std::abs(coef) > std::abs(best_coef) + 1e-12);
      if (better) {
        best_target = open;
        best = node.get();
        best_coef = coef;
      }
    }
    if (!best) break;
    determined[best_target] = 1;
    out.order.emplace_back(best_target, best);
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!determined[i]) {
      out.first_uncovered = i;
      break;
    }
  }
  return out;
}

}  // namespace

TomographyPlan plan_tomography(const ModelPreset& model, std::size_t n, const PlannerOptions& options) {
  if (n == 0) throw DimensionError("plan_tomography needs at least one qubit");
  if (n > 6) throw DimensionError("plan_tomography supports at most 6 qubits");
  SequenceCompiler compiler(n, model);
  const auto vocab = vocabulary(n);
  std::vector<CMatrix> gate_mats, gate_adj;
  for (const auto& g : vocab) {
    gate_mats.push_back(compiler.gate_matrix(g));
    gate_adj.push_back(gate_mats.back().adjoint());
  }

  const auto targets = pauli_basis(n, false);
  std::map<PauliString, std::size_t> target_index;
  for (std::size_t i = 0; i < targets.size(); ++i) target_index.emplace(targets[i], i);

  std::unordered_set<std::string> seen;
  std::vector<std::unique_ptr<Node>> candidates;
  std::vector<const Node*> frontier;

  auto consider = [&](std::unique_ptr<Node> node) {
    const PauliPolynomial em = expand(node->m);
    if (!seen.insert(em_key(em)).second) return;
    for (const auto& [p, c] : em.terms()) node->terms.emplace_back(target_index.at(p), c);
    frontier.push_back(node.get());
    candidates.push_back(std::move(node));
  };

  const std::size_t poms = options.all_pom_qubits ? n : 1;
  for (std::size_t l = 0; l < poms; ++l) {
    auto node = std::make_unique<Node>();
    node->pom = l;
    node->m = to_matrix(PauliString::single(n, l, Pauli::Z));
    consider(std::move(node));
  }

  Assignment result = assign_targets(targets, candidates, options.min_coefficient);
  for (std::size_t depth = 1; depth <= options.max_depth && result.first_uncovered; ++depth) {
    const std::vector<const Node*> parents = std::move(frontier);
    frontier.clear();
    for (const Node* parent : parents) {
      for (std::size_t gi = 0; gi < vocab.size(); ++gi) {
        auto node = std::make_unique<Node>();
        node->seq = parent->seq;
        node->seq.gates.push_back(vocab[gi]);
        node->pom = parent->pom;
        node->m = gate_adj[gi] * parent->m * gate_mats[gi];
        consider(std::move(node));
      }
    }
    result = assign_targets(targets, candidates, options.min_coefficient);
  }
  if (result.first_uncovered) {
    throw PlanError("no setting within max_depth " + std::to_string(options.max_depth) +
                    " covers target " + targets[*result.first_uncovered].to_string() + " (model " +
                    model.name() + ", n = " + std::to_string(n) + ")");
  }

  TomographyPlan plan;
  plan.n = n;
  plan.model = model;
  plan.options = options;
  for (const auto& [idx, node] : result.order) {
    plan.settings.push_back(make_setting(compiler, node->seq, node->pom));
    plan.targets.push_back(targets[idx]);
  }
  if (auto issues = check_plan(plan); !issues.empty())
    throw InconsistencyError("planner produced an invalid plan: " + issues.front());
  return plan;
}

std::vector<std::string> check_plan(const TomographyPlan& plan) {
  std::vector<std::string> issues;
  if (plan.settings.size() != plan.targets.size()) {
    issues.push_back("settings and targets differ in length");
    return issues;
  }
  std::set<PauliString> determined;
  for (std::size_t i = 0; i < plan.settings.size(); ++i) {
    const auto& s = plan.settings[i];
    const auto& t = plan.targets[i];
    const std::string where = "setting " + std::to_string(i) + " (" + s.sequence.to_string() +
                              ", target " + t.to_string() + ")";
    if (t.size() != plan.n || t.is_identity()) issues.push_back(where + ": invalid target");
    if (determined.count(t)) issues.push_back(where + ": target determined twice");
    if (std::abs(s.em.sum_squares() - 1.0) > 1e-10)
      issues.push_back(where + ": equivalent measurement is not unit norm");
    if (std::abs(s.em.coefficient(t)) < plan.options.min_coefficient)
      issues.push_back(where + ": target coefficient below the minimum");
    for (const auto& [q, c] : s.em.terms()) {
      if (q == t) continue;
      if (!determined.count(q))
        issues.push_back(where + ": depends on undetermined coefficient " + q.to_string());
    }
    determined.insert(t);
  }
  const std::size_t expected = (std::size_t{1} << (2 * plan.n)) - 1;
  if (determined.size() != expected) {
    issues.push_back("plan covers " + std::to_string(determined.size()) + " of " +
                     std::to_string(expected) + " coefficients");
  }
  return issues;
}

}  // namespace spintomo

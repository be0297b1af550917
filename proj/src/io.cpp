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

#include "spintomo/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spintomo/error.hpp"

namespace spintomo::io {

namespace {

void check_schema(const json& j, std::string_view kind) {
  if (!j.is_object()) throw ConfigError(std::string(kind) + ": expected a JSON object");
  if (!j.contains("schema_version") || j.at("schema_version") != kSchemaVersion)
    throw ConfigError(std::string(kind) + ": unsupported or missing schema_version");
  if (j.contains("kind") && j.at("kind") != kind)
    throw ConfigError("expected kind '" + std::string(kind) + "', found " + j.at("kind").dump());
}

template <typename F>
auto schema_guard(std::string_view what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json matrix_to_json(const CMatrix& m) {
  json re = json::array(), im = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ir = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"re", std::move(re)}, {"im", std::move(im)}};
}

CMatrix matrix_from_json(const json& j) {
  return schema_guard("matrix", [&] {
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    const std::size_t rows = re.size();
    if (rows == 0 || im.size() != rows) throw ConfigError("matrix: re/im row counts differ or are zero");
    const std::size_t cols = re.at(0).size();
    CMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (re.at(r).size() != cols || im.at(r).size() != cols) throw ConfigError("matrix: ragged rows");
      for (std::size_t c = 0; c < cols; ++c)
        m(r, c) = {re.at(r).at(c).get<double>(), im.at(r).at(c).get<double>()};
    }
    return m;
  });
}

json state_to_json(const DensityMatrix& rho) {
  json j = {{"schema_version", kSchemaVersion}, {"kind", "density_matrix"}, {"n", rho.qubits()}};
  json m = matrix_to_json(rho.matrix());
  j["re"] = std::move(m["re"]);
  j["im"] = std::move(m["im"]);
  return j;
}

DensityMatrix state_from_json(const json& j) {
  check_schema(j, "density_matrix");
  DensityMatrix rho(matrix_from_json(j));
  if (j.contains("n") && j.at("n").get<std::size_t>() != rho.qubits())
    throw ConfigError("density_matrix: n does not match the matrix dimension");
  return rho;
}

json bloch_to_json(const BlochVector& b) {
  json j = json::object();
  for (const auto& [p, v] : b.entries()) j[p.to_string()] = v;
  return j;
}

json polynomial_to_json(const PauliPolynomial& p) {
  json j = json::object();
  for (const auto& [s, c] : p.terms()) j[s.to_string()] = c;
  return j;
}

json model_to_json(const ModelPreset& m) {
  return {{"kind", to_string(m.kind)}, {"mode", to_string(m.mode)}, {"jx", m.jx}, {"jy", m.jy},
          {"jz", m.jz}, {"eps_z", m.eps_z}, {"tau", m.tau}};
}

ModelPreset model_from_json(const json& j) {
  return schema_guard("model", [&] {
    ModelPreset m;
    m.kind = parse_model_kind(j.at("kind").get<std::string>());
    m.mode = parse_param_mode(j.at("mode").get<std::string>());
    m.jx = j.at("jx").get<double>();
    m.jy = j.at("jy").get<double>();
    m.jz = j.at("jz").get<double>();
    m.eps_z = j.at("eps_z").get<double>();
    m.tau = j.at("tau").get<double>();
    return m;
  });
}

namespace {

std::string_view gate_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::Xbar: return "Xbar";
    case GateKind::RotX: return "Rx";
    case GateKind::RotY: return "Ry";
    case GateKind::RotZ: return "Rz";
    case GateKind::AxisConj: return "A";
    case GateKind::Pair: return "U";
  }
  return "?";
}

json gate_to_json(const Gate& g) {
  json j = {{"name", gate_name(g.kind)}};
  if (g.is_pair())
    j["qubits"] = {g.qubit + 1, g.qubit2 + 1};
  else
    j["qubits"] = {g.qubit + 1};
  switch (g.kind) {
    case GateKind::RotX:
    case GateKind::RotY:
    case GateKind::RotZ: j["angle"] = g.angle; break;
    case GateKind::AxisConj:
      j["angle"] = g.angle;
      j["axes"] = std::string{pauli_char(g.alpha), pauli_char(g.beta)};
      break;
    default: break;
  }
  return j;
}

Gate gate_from_json(const json& j) {
  const std::string name = j.at("name").get<std::string>();
  const auto qubits = j.at("qubits").get<std::vector<std::size_t>>();
  for (auto q : qubits)
    if (q == 0) throw ConfigError("gate qubits are 1-based");
  auto one = [&] {
    if (qubits.size() != 1) throw ConfigError("gate " + name + " takes one qubit");
    return qubits[0] - 1;
  };
  if (name == "X") return Gate::x(one());
  if (name == "Y") return Gate::y(one());
  if (name == "Z") return Gate::z(one());
  if (name == "Xbar") return Gate::xbar(one());
  if (name == "Rx") return Gate::rot_x(one(), j.at("angle").get<double>());
  if (name == "Ry") return Gate::rot_y(one(), j.at("angle").get<double>());
  if (name == "Rz") return Gate::rot_z(one(), j.at("angle").get<double>());
  if (name == "A") {
    const auto axes = j.at("axes").get<std::string>();
    if (axes.size() != 2) throw ConfigError("gate A needs two axes");
    return Gate::axis_conj(one(), pauli_from_char(axes[0]), pauli_from_char(axes[1]),
                           j.at("angle").get<double>());
  }
  if (name == "U") {
    if (qubits.size() != 2 || qubits[0] == qubits[1]) throw ConfigError("gate U takes two distinct qubits");
    return Gate::pair(qubits[0] - 1, qubits[1] - 1);
  }
  throw ConfigError("unknown gate name '" + name + "'");
}

}  // namespace

json plan_to_json(const TomographyPlan& plan) {
  json settings = json::array();
  for (std::size_t i = 0; i < plan.settings.size(); ++i) {
    const auto& s = plan.settings[i];
    json gates = json::array();
    for (const auto& g : s.sequence.gates) gates.push_back(gate_to_json(g));
    settings.push_back({{"index", i},
                        {"target", plan.targets[i].to_string()},
                        {"coefficient", plan.target_coefficient(i)},
                        {"pom_qubit", s.pom_qubit + 1},
                        {"sequence", s.sequence.to_string()},
                        {"gates", std::move(gates)},
                        {"em", polynomial_to_json(s.em)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "tomography_plan"},
          {"n", plan.n},
          {"model", model_to_json(plan.model)},
          {"planner",
           {{"max_depth", plan.options.max_depth},
            {"min_coefficient", plan.options.min_coefficient},
            {"all_pom_qubits", plan.options.all_pom_qubits}}},
          {"settings", std::move(settings)}};
}

TomographyPlan plan_from_json(const json& j) {
  check_schema(j, "tomography_plan");
  return schema_guard("tomography_plan", [&] {
    TomographyPlan plan;
    plan.n = j.at("n").get<std::size_t>();
    if (plan.n == 0 || plan.n > 6) throw ConfigError("tomography_plan: n must be in 1..6");
    plan.model = model_from_json(j.at("model"));
    const auto& pl = j.at("planner");
    plan.options.max_depth = pl.at("max_depth").get<std::size_t>();
    plan.options.min_coefficient = pl.at("min_coefficient").get<double>();
    plan.options.all_pom_qubits = pl.at("all_pom_qubits").get<bool>();
    SequenceCompiler compiler(plan.n, plan.model);
    for (const auto& sj : j.at("settings")) {
      PulseSequence seq;
      for (const auto& gj : sj.at("gates")) seq.gates.push_back(gate_from_json(gj));
      if (sj.contains("sequence") && sj.at("sequence").get<std::string>() != seq.to_string())
        throw ConfigError("setting sequence text does not match its gate list");
      const auto pom = sj.at("pom_qubit").get<std::size_t>();
      if (pom == 0 || pom > plan.n) throw ConfigError("pom_qubit out of range");
      MeasurementSetting s = make_setting(compiler, std::move(seq), pom - 1);
      PauliPolynomial stored(plan.n);
      for (const auto& [k, v] : sj.at("em").items()) stored.add(PauliString::parse(k), v.get<double>());
      if (!stored.approx_equal(s.em, 1e-9)) {
        throw InconsistencyError("setting " + s.sequence.to_string() + ": stored em " + stored.to_string() +
                                 " differs from the recompiled " + s.em.to_string());
      }
      plan.targets.push_back(PauliString::parse(sj.at("target").get<std::string>()));
      plan.settings.push_back(std::move(s));
    }
    if (auto issues = check_plan(plan); !issues.empty())
      throw ConfigError("tomography_plan: " + issues.front());
    return plan;
  });
}

std::string plan_fingerprint(const TomographyPlan& plan) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : plan_to_json(plan).dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string records_to_jsonl(const RecordsFile& f) {
  std::string out = json{{"schema_version", kSchemaVersion},
                         {"kind", "shot_records"},
                         {"master_seed", f.master_seed},
                         {"plan_fingerprint", f.plan_fingerprint}}
                        .dump();
  out += '\n';
  for (const auto& r : f.records) {
    json j = {{"setting", r.setting}, {"shots", r.shots}, {"ones", r.ones}};
    if (r.exact()) j["p"] = *r.p;
    out += j.dump();
    out += '\n';
  }
  return out;
}

RecordsFile records_from_jsonl(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  RecordsFile f;
  bool header = false;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ConfigError("records line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!header) {
      check_schema(j, "shot_records");
      schema_guard("shot_records header", [&] {
        f.master_seed = j.at("master_seed").get<std::uint64_t>();
        f.plan_fingerprint = j.at("plan_fingerprint").get<std::string>();
        return 0;
      });
      header = true;
      continue;
    }
    schema_guard("records line " + std::to_string(lineno), [&] {
      ShotRecord r;
      r.setting = j.at("setting").get<std::size_t>();
      r.shots = j.at("shots").get<std::uint64_t>();
      r.ones = j.at("ones").get<std::uint64_t>();
      if (r.ones > r.shots) throw ConfigError("ones exceeds shots");
      if (r.shots == 0) {
        const double p = j.at("p").get<double>();
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("exact probability outside [0, 1]");
        r.p = p;
      }
      f.records.push_back(r);
      return 0;
    });
  }
  if (!header) throw ConfigError("shot_records: missing header line");
  return f;
}

namespace {

json state_summary(const DensityMatrix& rho) {
  json j = matrix_to_json(rho.matrix());
  j["eigenvalues"] = rho.eigenvalues();
  j["physical"] = rho.physical();
  j["purity"] = rho.purity();
  return j;
}

}  // namespace

json report_to_json(const ReconstructionResult& r, const TomographyPlan& plan, const ReportContext& ctx) {
  json j = {{"schema_version", kSchemaVersion},
            {"kind", "reconstruction_report"},
            {"n", plan.n},
            {"model", model_to_json(plan.model)},
            {"plan_fingerprint", ctx.plan_fingerprint},
            {"master_seed", ctx.master_seed},
            {"shots", ctx.shots},
            {"raw_bloch", bloch_to_json(r.raw_bloch)},
            {"raw", state_summary(r.raw)},
            {"projected", state_summary(r.projected)}};
  if (r.refined) {
    const auto& ll = r.refined->log_likelihood;
    bool monotone = true;
    for (std::size_t i = 1; i < ll.size(); ++i) monotone = monotone && ll[i] >= ll[i - 1];
    json refined = state_summary(r.refined->rho);
    refined["iterations"] = r.refined->iterations;
    refined["converged"] = r.refined->converged;
    refined["log_likelihood_initial"] = ll.front();
    refined["log_likelihood_final"] = ll.back();
    refined["log_likelihood_monotone"] = monotone;
    j["refined"] = std::move(refined);
  } else {
    j["refined"] = nullptr;
  }
  j["residuals"] = r.residuals;
  if (r.metrics) {
    j["metrics"] = {{"fidelity", r.metrics->fidelity},
                    {"trace_distance", r.metrics->trace_distance},
                    {"raw_fidelity", std::isnan(r.metrics->raw_fidelity) ? json(nullptr) : json(r.metrics->raw_fidelity)},
                    {"raw_trace_distance", r.metrics->raw_trace_distance}};
  } else {
    j["metrics"] = nullptr;
  }
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open '" + p.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + p.string() + "' for writing");
  out << content;
  if (!out) throw IoError("write to '" + p.string() + "' failed");
}

json read_json(const std::filesystem::path& p) {
  const std::string text = read_file(p);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError("'" + p.string() + "': " + e.what());
  }
}

}  // namespace spintomo::io

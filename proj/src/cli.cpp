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

#include "spintomo/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "spintomo/error.hpp"

namespace spintomo::cli {

namespace {

using io::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
}

std::string_view to_string(StateSourceKind k) {
  switch (k) {
    case StateSourceKind::RandomPure: return "random_pure";
    case StateSourceKind::RandomMixed: return "random_mixed";
    case StateSourceKind::File: return "file";
  }
  return "?";
}

StateSourceKind parse_source(const std::string& s) {
  if (s == "random_pure") return StateSourceKind::RandomPure;
  if (s == "random_mixed") return StateSourceKind::RandomMixed;
  if (s == "file") return StateSourceKind::File;
  throw ConfigError("unknown state source '" + s + "' (expected random_pure, random_mixed, file)");
}

std::filesystem::path out_dir(const RunConfig& c) { return c.out; }

}  // namespace

RunConfig config_from_json(const json& j) {
  RunConfig c;
  reject_unknown(j, {"schema_version", "model", "mode", "params", "n", "state", "shots", "seed", "planner",
                     "reconstruction", "out"},
                 "config");
  if (j.contains("schema_version") && j.at("schema_version") != io::kSchemaVersion)
    throw ConfigError("config: unsupported schema_version");
  try {
    if (j.contains("model")) c.model.kind = parse_model_kind(j.at("model").get<std::string>());
    if (j.contains("mode")) c.model.mode = parse_param_mode(j.at("mode").get<std::string>());
    if (j.contains("params")) {
      const auto& p = j.at("params");
      reject_unknown(p, {"j", "jz", "eps_z", "tau", "timing"}, "config.params");
      if (p.contains("j")) c.model.j = p.at("j").get<double>();
      if (p.contains("jz")) c.model.jz = p.at("jz").get<double>();
      if (p.contains("eps_z")) c.model.eps_z = p.at("eps_z").get<double>();
      if (p.contains("tau")) c.model.tau = p.at("tau").get<double>();
      if (p.contains("timing")) {
        const auto& t = p.at("timing");
        reject_unknown(t, {"l", "m", "n"}, "config.params.timing");
        if (t.contains("l")) c.model.timing.l = t.at("l").get<int>();
        if (t.contains("m")) c.model.timing.m = t.at("m").get<int>();
        if (t.contains("n")) c.model.timing.n = t.at("n").get<int>();
      }
    }
    if (j.contains("n")) c.n = j.at("n").get<std::size_t>();
    if (j.contains("state")) {
      const auto& s = j.at("state");
      reject_unknown(s, {"source", "seed", "path"}, "config.state");
      if (s.contains("source")) c.state.kind = parse_source(s.at("source").get<std::string>());
      if (s.contains("seed")) c.state.seed = s.at("seed").get<std::uint64_t>();
      if (s.contains("path")) c.state.path = s.at("path").get<std::string>();
    }
    if (j.contains("shots")) c.shots = j.at("shots").get<std::uint64_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("planner")) {
      const auto& p = j.at("planner");
      reject_unknown(p, {"max_depth", "min_coefficient", "all_pom_qubits"}, "config.planner");
      if (p.contains("max_depth")) c.planner.max_depth = p.at("max_depth").get<std::size_t>();
      if (p.contains("min_coefficient")) c.planner.min_coefficient = p.at("min_coefficient").get<double>();
      if (p.contains("all_pom_qubits")) c.planner.all_pom_qubits = p.at("all_pom_qubits").get<bool>();
    }
    if (j.contains("reconstruction")) {
      const auto& r = j.at("reconstruction");
      reject_unknown(r, {"mle", "max_iterations", "tolerance", "init_mixing"}, "config.reconstruction");
      if (r.contains("mle")) c.reconstruction.mle = r.at("mle").get<bool>();
      if (r.contains("max_iterations"))
        c.reconstruction.mle_options.max_iterations = r.at("max_iterations").get<std::size_t>();
      if (r.contains("tolerance")) c.reconstruction.mle_options.tolerance = r.at("tolerance").get<double>();
      if (r.contains("init_mixing")) c.reconstruction.init_mixing = r.at("init_mixing").get<double>();
    }
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (c.n == 0 || c.n > 6) throw ConfigError("config: n must be in 1..6");
  if (c.state.kind == StateSourceKind::File && c.state.path.empty())
    throw ConfigError("config: state source 'file' needs a path");
  if (c.reconstruction.init_mixing < 0 || c.reconstruction.init_mixing > 1)
    throw ConfigError("config: init_mixing must be in [0, 1]");
  resolve_model(c.model);  // rejects unsupported model/mode/timing combinations
  return c;
}

json config_to_json(const RunConfig& c) {
  json params = {{"j", c.model.j},
                 {"timing", {{"l", c.model.timing.l}, {"m", c.model.timing.m}, {"n", c.model.timing.n}}}};
  if (c.model.jz) params["jz"] = *c.model.jz;
  if (c.model.eps_z) params["eps_z"] = *c.model.eps_z;
  if (c.model.tau) params["tau"] = *c.model.tau;
  json state = {{"source", to_string(c.state.kind)}, {"seed", c.state.seed}};
  if (!c.state.path.empty()) state["path"] = c.state.path;
  return {{"schema_version", io::kSchemaVersion},
          {"model", spintomo::to_string(c.model.kind)},
          {"mode", spintomo::to_string(c.model.mode)},
          {"params", std::move(params)},
          {"n", c.n},
          {"state", std::move(state)},
          {"shots", c.shots},
          {"seed", c.seed},
          {"planner",
           {{"max_depth", c.planner.max_depth},
            {"min_coefficient", c.planner.min_coefficient},
            {"all_pom_qubits", c.planner.all_pom_qubits}}},
          {"reconstruction",
           {{"mle", c.reconstruction.mle},
            {"max_iterations", c.reconstruction.mle_options.max_iterations},
            {"tolerance", c.reconstruction.mle_options.tolerance},
            {"init_mixing", c.reconstruction.init_mixing}}},
          {"out", c.out}};
}

DensityMatrix load_state(const RunConfig& c) {
  switch (c.state.kind) {
    case StateSourceKind::RandomPure: return random_density(c.n, StateKind::Pure, c.state.seed);
    case StateSourceKind::RandomMixed: return random_density(c.n, StateKind::Mixed, c.state.seed);
    case StateSourceKind::File: {
      DensityMatrix rho = io::state_from_json(io::read_json(c.state.path));
      if (rho.qubits() != c.n) throw ConfigError("state file has " + std::to_string(rho.qubits()) + " qubits, config says " + std::to_string(c.n));
      if (!rho.physical()) throw ConfigError("state file holds a non-positive matrix");
      return rho;
    }
  }
  throw ConfigError("bad state source");
}

TomographyPlan cmd_plan(const RunConfig& c) {
  TomographyPlan plan = plan_tomography(resolve_model(c.model), c.n, c.planner);
  io::write_file(out_dir(c) / kPlanFile, io::dump(io::plan_to_json(plan)));
  return plan;
}

io::RecordsFile cmd_simulate(const RunConfig& c, const TomographyPlan& plan) {
  if (plan.n != c.n) throw ConfigError("plan and config differ in qubit count");
  io::RecordsFile f;
  f.master_seed = c.seed;
  f.plan_fingerprint = io::plan_fingerprint(plan);
  f.records = simulate(plan, load_state(c), c.shots, c.seed);
  io::write_file(out_dir(c) / kRecordsFile, io::records_to_jsonl(f));
  return f;
}

io::json cmd_reconstruct(const RunConfig& c, const TomographyPlan& plan, const io::RecordsFile& records) {
  const std::string fp = io::plan_fingerprint(plan);
  if (records.plan_fingerprint != fp) {
    throw ConfigError("records were produced for plan " + records.plan_fingerprint + ", not " + fp);
  }
  const DensityMatrix truth = load_state(c);
  const ReconstructionResult res = reconstruct(plan, records.records, c.reconstruction, truth);
  const std::uint64_t shots = records.records.empty() ? 0 : records.records.front().shots;
  io::json report = io::report_to_json(res, plan, {fp, records.master_seed, shots});
  io::write_file(out_dir(c) / kReportFile, io::dump(report));
  return report;
}

io::json cmd_pipeline(const RunConfig& c) {
  const TomographyPlan plan = cmd_plan(c);
  const io::RecordsFile records = cmd_simulate(c, plan);
  return cmd_reconstruct(c, plan, records);
}

ExitCode cmd_verify(const std::string& scope, const std::optional<std::filesystem::path>& out) {
  const auto suites = run_verification(scope);
  json all = json::array();
  bool ok = true;
  for (const auto& s : suites) {
    for (const auto& ch : s.checks)
      std::cout << (ch.pass ? "PASS " : "FAIL ") << s.suite << ": " << ch.name << " (" << ch.detail << ")\n";
    if (s.suite == "table") {
      for (const auto& row : s.body.at("rows")) {
        if (row.at("status") != "match") {
          std::cout << "NOTE table " << row.at("model").get<std::string>() << " "
                    << row.at("operations").get<std::string>() << ": " << row.at("status").get<std::string>()
                    << ": " << row.at("detail").get<std::string>() << "\n";
        }
      }
      const auto& we = s.body.at("worked_example");
      std::cout << "NOTE worked example " << we.at("operations").get<std::string>() << ": "
                << we.at("status").get<std::string>() << ": " << we.at("detail").get<std::string>()
                << "; computed entry is canon\n";
    }
    ok = ok && s.ok();
    all.push_back(s.to_json());
  }
  if (out) {
    io::write_file(*out / "verify.json",
                   io::dump({{"schema_version", io::kSchemaVersion}, {"kind", "verification_report"},
                             {"scope", scope}, {"ok", ok}, {"suites", std::move(all)}}));
  }
  return ok ? ExitCode::Ok : ExitCode::VerificationFailure;
}

int run(int argc, char** argv) {
  CLI::App app{"Tomography of spin-qubit registers by pulse sequences and single-qubit projective measurement"};
  app.require_subcommand(1);

  std::string scope = "all";
  std::string config_path, out, plan_path, records_path, model, mode;
  std::optional<std::uint64_t> seed, shots;
  std::optional<std::size_t> n;

  auto* verify = app.add_subcommand("verify", "Recompute the reference identities and tables");
  verify->add_option("--scope", scope, "table, closed-form, three-qubit, probability, all (aliases table1, eq7, eq10)");
  verify->add_option("--out", out, "Directory for verify.json");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Run configuration (JSON)");
    sub->add_option("--seed", seed, "Master seed for sampling");
    sub->add_option("--shots", shots, "Shots per setting (0 = exact probabilities)");
    sub->add_option("--out", out, "Output directory");
    sub->add_option("--n", n, "Number of qubits");
    sub->add_option("--model", model, "xy, xxz or heisenberg");
    sub->add_option("--mode", mode, "switchable or fixed_ez");
  };
  auto* plan_cmd = app.add_subcommand("plan", "Plan pulse sequences for every Bloch coefficient");
  auto* sim_cmd = app.add_subcommand("simulate", "Sample POM outcomes of a plan on the configured state");
  auto* rec_cmd = app.add_subcommand("reconstruct", "Invert records into a density matrix report");
  auto* pipe_cmd = app.add_subcommand("pipeline", "plan, simulate and reconstruct in one go");
  for (auto* sub : {plan_cmd, sim_cmd, rec_cmd, pipe_cmd}) add_common(sub);
  for (auto* sub : {sim_cmd, rec_cmd}) sub->add_option("--plan", plan_path, "Plan file (default OUT/plan.json)");
  rec_cmd->add_option("--records", records_path, "Records file (default OUT/records.jsonl)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::Usage);
  }

  try {
    if (verify->parsed()) {
      std::optional<std::filesystem::path> dir;
      if (!out.empty()) dir = out;
      return static_cast<int>(cmd_verify(scope, dir));
    }

    json cj = config_path.empty() ? json::object() : io::read_json(config_path);
    if (!cj.contains("out")) {
      if (const char* env = std::getenv("SPINTOMO_OUT"); env && *env) cj["out"] = env;
    }
    if (!out.empty()) cj["out"] = out;
    if (seed) cj["seed"] = *seed;
    if (shots) cj["shots"] = *shots;
    if (n) cj["n"] = *n;
    if (!model.empty()) cj["model"] = model;
    if (!mode.empty()) cj["mode"] = mode;
    const RunConfig cfg = config_from_json(cj);
    const std::filesystem::path dir = cfg.out;

    auto load_plan = [&] { return io::plan_from_json(io::read_json(plan_path.empty() ? dir / kPlanFile : std::filesystem::path(plan_path))); };
    if (plan_cmd->parsed()) {
      const auto plan = cmd_plan(cfg);
      std::cout << "plan: " << plan.settings.size() << " settings for " << plan.n << " qubit(s), model "
                << plan.model.name() << " -> " << (dir / kPlanFile).string() << "\n";
    } else if (sim_cmd->parsed()) {
      const auto f = cmd_simulate(cfg, load_plan());
      std::cout << "simulate: " << f.records.size() << " records -> " << (dir / kRecordsFile).string() << "\n";
    } else if (rec_cmd->parsed()) {
      const auto plan = load_plan();
      const auto records = io::records_from_jsonl(
          io::read_file(records_path.empty() ? dir / kRecordsFile : std::filesystem::path(records_path)));
      const auto report = cmd_reconstruct(cfg, plan, records);
      std::cout << "reconstruct: fidelity " << report.at("metrics").at("fidelity").get<double>() << " -> "
                << (dir / kReportFile).string() << "\n";
    } else if (pipe_cmd->parsed()) {
      const auto report = cmd_pipeline(cfg);
      std::cout << "pipeline: fidelity " << report.at("metrics").at("fidelity").get<double>() << " -> "
                << dir.string() << "\n";
    }
    return static_cast<int>(ExitCode::Ok);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Io);
  } catch (const InconsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return static_cast<int>(ExitCode::VerificationFailure);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Usage);
  }
}

}  // namespace spintomo::cli

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

#include <catch_amalgamated.hpp>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "spintomo/cli.hpp"
#include "spintomo/error.hpp"

using namespace spintomo;
using spintomo::io::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "spintomo_cli_test" / name;
  fs::remove_all(p);
  return p;
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "spintomo");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("config round-trip and validation") {
  cli::RunConfig c;
  c.n = 3;
  c.model.kind = ModelKind::Heisenberg;
  c.model.j = 0.5;
  c.state.kind = cli::StateSourceKind::RandomMixed;
  c.state.seed = 9;
  c.shots = 1000;
  c.seed = 17;
  c.planner.max_depth = 5;
  c.reconstruction.mle = false;
  c.out = "elsewhere";
  CHECK(cli::config_from_json(json::parse(cli::config_to_json(c).dump())) == c);
  CHECK(cli::config_from_json(json::object()) == cli::RunConfig{});

  CHECK_THROWS_AS(cli::config_from_json({{"shot", 10}}), ConfigError);
  CHECK_THROWS_AS(cli::config_from_json({{"planner", {{"depth", 3}}}}), ConfigError);
  CHECK_THROWS_AS(cli::config_from_json({{"n", 0}}), ConfigError);
  CHECK_THROWS_AS(cli::config_from_json({{"n", "two"}}), ConfigError);
  CHECK_THROWS_AS(cli::config_from_json({{"model", "ising"}}), ConfigError);
  CHECK_THROWS_AS(cli::config_from_json({{"state", {{"source", "file"}}}}), ConfigError);
}

TEST_CASE("exact pipeline reconstructs the state") {
  for (const char* model : {"xy", "xxz", "heisenberg"}) {
    cli::RunConfig c;
    c.model = cli::config_from_json({{"model", model}}).model;
    c.out = scratch(std::string("exact_") + model).string();
    const json report = cli::cmd_pipeline(c);
    CHECK(report.at("metrics").at("fidelity").get<double>() >= 1 - 1e-9);
    for (const char* f : {cli::kPlanFile, cli::kRecordsFile, cli::kReportFile}) CHECK(fs::exists(fs::path(c.out) / f));
  }
}

TEST_CASE("pipeline output is byte-identical across reruns") {
  cli::RunConfig c;
  c.shots = 2000;
  c.seed = 31;
  c.state.kind = cli::StateSourceKind::RandomMixed;
  const fs::path a = scratch("rerun_a"), b = scratch("rerun_b");
  c.out = a.string();
  cli::cmd_pipeline(c);
  c.out = b.string();
  cli::cmd_pipeline(c);
  for (const char* f : {cli::kPlanFile, cli::kRecordsFile, cli::kReportFile})
    CHECK(io::read_file(a / f) == io::read_file(b / f));
}

TEST_CASE("reconstruct refuses records from another plan") {
  cli::RunConfig c;
  c.out = scratch("mismatch").string();
  const auto plan = cli::cmd_plan(c);
  auto records = cli::cmd_simulate(c, plan);
  records.plan_fingerprint = "0000000000000000";
  CHECK_THROWS_AS(cli::cmd_reconstruct(c, plan, records), ConfigError);
}

TEST_CASE("state files feed the pipeline") {
  const fs::path dir = scratch("state_file");
  const DensityMatrix rho = random_density(2, StateKind::Mixed, 5);
  io::write_file(dir / "rho.json", io::dump(io::state_to_json(rho)));
  cli::RunConfig c = cli::config_from_json(
      {{"state", {{"source", "file"}, {"path", (dir / "rho.json").string()}}}, {"out", dir.string()}});
  CHECK(cli::cmd_pipeline(c).at("metrics").at("fidelity").get<double>() >= 1 - 1e-9);
  c.n = 3;
  CHECK_THROWS_AS(cli::load_state(c), ConfigError);
}

TEST_CASE("command line exit codes") {
  const fs::path dir = scratch("exit_codes");
  CHECK(run_cli({"verify", "--scope", "table1", "--out", dir.string()}) == 0);
  CHECK(fs::exists(dir / "verify.json"));
  CHECK(run_cli({"verify", "--scope", "nonsense"}) == 2);
  CHECK(run_cli({"pipeline", "--config", (dir / "missing.json").string()}) == 3);
  CHECK(run_cli({"frobnicate"}) == 2);
  CHECK(run_cli({"plan", "--n", "3", "--model", "heisenberg", "--out", dir.string()}) == 2);
  CHECK(run_cli({"reconstruct", "--out", (dir / "empty").string()}) == 3);
}

TEST_CASE("output directory precedence") {
  const fs::path root = scratch("precedence");
  io::write_file(root / "with_out.json", json({{"out", (root / "from_config").string()}}).dump());
  io::write_file(root / "without_out.json", "{}");
  ::setenv("SPINTOMO_OUT", (root / "from_env").string().c_str(), 1);

  CHECK(run_cli({"plan", "--config", (root / "without_out.json").string()}) == 0);
  CHECK(fs::exists(root / "from_env" / cli::kPlanFile));
  CHECK(run_cli({"plan", "--config", (root / "with_out.json").string()}) == 0);
  CHECK(fs::exists(root / "from_config" / cli::kPlanFile));
  CHECK(run_cli({"plan", "--config", (root / "with_out.json").string(), "--out", (root / "from_flag").string()}) == 0);
  CHECK(fs::exists(root / "from_flag" / cli::kPlanFile));
  ::unsetenv("SPINTOMO_OUT");
}

TEST_CASE("staged commands match the pipeline") {
  const fs::path dir = scratch("staged");
  const std::string out = (dir / "s").string();
  CHECK(run_cli({"plan", "--out", out}) == 0);
  CHECK(run_cli({"simulate", "--out", out, "--shots", "500", "--seed", "4"}) == 0);
  CHECK(run_cli({"reconstruct", "--out", out, "--shots", "500", "--seed", "4"}) == 0);
  CHECK(run_cli({"pipeline", "--out", (dir / "p").string(), "--shots", "500", "--seed", "4"}) == 0);
  for (const char* f : {cli::kPlanFile, cli::kRecordsFile, cli::kReportFile})
    CHECK(io::read_file(dir / "s" / f) == io::read_file(dir / "p" / f));
}

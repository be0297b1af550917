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
#include <filesystem>

#include "helpers.hpp"
#include "spintomo/error.hpp"
#include "spintomo/io.hpp"

using namespace spintomo;
using namespace spintomo::testing;
using spintomo::io::json;

namespace {

ModelPreset xy() { return resolve_model(ModelConfig{}); }

}  // namespace

TEST_CASE("state files round-trip exactly") {
  const DensityMatrix rho = random_density(3, StateKind::Mixed, 2);
  const json j = io::state_to_json(rho);
  CHECK(j.at("kind") == "density_matrix");
  const DensityMatrix back = io::state_from_json(json::parse(io::dump(j)));
  CHECK(frobenius_distance(back.matrix(), rho.matrix()) == 0.0);
  json bad = j;
  bad.erase("schema_version");
  CHECK_THROWS_AS(io::state_from_json(bad), ConfigError);
  bad = j;
  bad["re"].erase(0);
  CHECK_THROWS_AS(io::state_from_json(bad), Error);
}

TEST_CASE("plan files round-trip and are recompiled on load") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const TomographyPlan plan = plan_tomography(xy(), n);
    const json j = io::plan_to_json(plan);
    CHECK(j.at("kind") == "tomography_plan");
    CHECK(j.at("settings").size() == plan.settings.size());
    const TomographyPlan back = io::plan_from_json(json::parse(io::dump(j)));
    REQUIRE(back.settings.size() == plan.settings.size());
    for (std::size_t i = 0; i < plan.settings.size(); ++i) {
      CHECK(back.settings[i].sequence == plan.settings[i].sequence);
      CHECK(back.targets[i] == plan.targets[i]);
    }
    CHECK(io::plan_fingerprint(back) == io::plan_fingerprint(plan));
    CHECK(io::dump(io::plan_to_json(back)) == io::dump(j));
  }
}

TEST_CASE("tampered plan files are rejected") {
  const json j = io::plan_to_json(plan_tomography(xy(), 2));
  json bad = j;
  auto& em = bad["settings"][3]["em"];
  em.begin().value() = -em.begin().value().get<double>();
  CHECK_THROWS_AS(io::plan_from_json(bad), InconsistencyError);
  bad = j;
  bad.erase("schema_version");
  CHECK_THROWS_AS(io::plan_from_json(bad), ConfigError);
  bad = j;
  bad["settings"].erase(bad["settings"].size() - 1);
  CHECK_THROWS_AS(io::plan_from_json(bad), ConfigError);
}

TEST_CASE("fingerprints separate different plans") {
  const auto a = io::plan_fingerprint(plan_tomography(xy(), 2));
  CHECK(a == io::plan_fingerprint(plan_tomography(xy(), 2)));
  CHECK(a.size() == 16);
  CHECK(a != io::plan_fingerprint(plan_tomography(xy(), 1)));
  ModelConfig c;
  c.kind = ModelKind::Heisenberg;
  CHECK(a != io::plan_fingerprint(plan_tomography(resolve_model(c), 2)));
}

TEST_CASE("records round-trip through JSON lines") {
  const auto plan = plan_tomography(xy(), 2);
  const DensityMatrix rho = random_density(2, StateKind::Pure, 1);
  for (std::uint64_t shots : {0u, 1000u}) {
    io::RecordsFile f{42, io::plan_fingerprint(plan), simulate(plan, rho, shots, 42)};
    const std::string text = io::records_to_jsonl(f);
    CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == plan.settings.size() + 1);
    const io::RecordsFile back = io::records_from_jsonl(text);
    CHECK(back.master_seed == 42);
    CHECK(back.plan_fingerprint == f.plan_fingerprint);
    CHECK(back.records == f.records);
    CHECK(io::records_to_jsonl(back) == text);
  }
  CHECK_THROWS_AS(io::records_from_jsonl(""), ConfigError);
  CHECK_THROWS_AS(io::records_from_jsonl("{\"kind\":\"shot_records\"}\n"), ConfigError);
  CHECK_THROWS_AS(io::records_from_jsonl("not json\n"), ConfigError);
}

TEST_CASE("report contents") {
  const auto plan = plan_tomography(xy(), 2);
  const DensityMatrix rho = random_density(2, StateKind::Pure, 6);
  const auto res = reconstruct(plan, simulate(plan, rho, 500, 3), {}, rho);
  const json r = io::report_to_json(res, plan, {io::plan_fingerprint(plan), 3, 500});
  CHECK(r.at("kind") == "reconstruction_report");
  CHECK(r.at("refined").at("log_likelihood_monotone").get<bool>());
  CHECK(r.at("metrics").at("fidelity").get<double>() > 0.8);
  CHECK(r.at("metrics").at("raw_fidelity").is_null() == !res.raw_physical);
  CHECK(r.at("residuals").size() == plan.settings.size());
  CHECK(r.at("raw_bloch").size() == 15);
}

TEST_CASE("file helpers") {
  const auto dir = std::filesystem::temp_directory_path() / "spintomo_io_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  io::write_file(dir / "a.json", "{\"x\": 1}\n");
  CHECK(io::read_json(dir / "a.json").at("x") == 1);
  CHECK_THROWS_AS(io::read_file(dir / "missing.json"), IoError);
  io::write_file(dir / "b.json", "{oops");
  CHECK_THROWS_AS(io::read_json(dir / "b.json"), ConfigError);
  std::filesystem::remove_all(dir.parent_path());
}

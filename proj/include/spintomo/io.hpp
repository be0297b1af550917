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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "spintomo/measurement.hpp"
#include "spintomo/protocol.hpp"
#include "spintomo/reconstruction.hpp"
#include "spintomo/states.hpp"

namespace spintomo::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// {"re": [[...]], "im": [[...]]}
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

/// {"schema_version", "kind": "density_matrix", "n", "re", "im"}
json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const json& j);

/// {"ZX0": r, ...} in canonical order.
json bloch_to_json(const BlochVector& b);
json polynomial_to_json(const PauliPolynomial& p);

json model_to_json(const ModelPreset& m);
ModelPreset model_from_json(const json& j);

/// Gate list, POM qubit (1-based), target, em per setting. On load every
/// setting is recompiled and its em compared with the stored one.
json plan_to_json(const TomographyPlan& plan);
TomographyPlan plan_from_json(const json& j);

/// FNV-1a 64 of the compact plan dump, as 16 hex digits.
std::string plan_fingerprint(const TomographyPlan& plan);

struct RecordsFile {
  std::uint64_t master_seed = 0;
  std::string plan_fingerprint;
  std::vector<ShotRecord> records;
};

/// JSON lines: a header {"schema_version", "kind", "master_seed",
/// "plan_fingerprint"} then one {"setting", "shots", "ones"} per record
/// (exact records carry "p" and shots = 0).
std::string records_to_jsonl(const RecordsFile& f);
RecordsFile records_from_jsonl(const std::string& text);

struct ReportContext {
  std::string plan_fingerprint;
  std::uint64_t master_seed = 0;
  std::uint64_t shots = 0;
};

json report_to_json(const ReconstructionResult& r, const TomographyPlan& plan, const ReportContext& ctx);

/// Pretty dump with a trailing newline; the byte-level format of every
/// JSON artifact.
std::string dump(const json& j);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& content);
json read_json(const std::filesystem::path& p);

}  // namespace spintomo::io

// Copyright 2026 The bellri Authors
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

// JSON and CSV forms of the library's value types.
//
// JSON numbers are written in shortest round-trip form. CSV uses a comma
// separator, dot decimal, one header row, and the same shortest round-trip
// number formatting; booleans are `true` / `false`.

#include <span>
#include <string>
#include <string_view>

#include "json.hpp"

#include "bellri/bell_criteria.hpp"
#include "bellri/correlation_tensor.hpp"
#include "bellri/lhv_model.hpp"
#include "bellri/quantum_state.hpp"

namespace bellri {

using Json = nlohmann::json;

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

// Density matrices: {"rows": 4, "cols": 4, "entries": [[re, im], ...]},
// row-major.
Json to_json(const DensityMatrix& rho);
/// Throws ParseError for structural problems and InvariantError when the
/// matrix is not a valid density matrix.
DensityMatrix density_matrix_from_json(const Json& j);
DensityMatrix density_matrix_from_file(const std::string& path);

/// State mini-grammar: `singlet`, `white`, `werner:<v>`, `file:<path>`.
/// Throws ParseError for unknown forms, DomainError for a bad visibility,
/// InvariantError (via the file loader) for non-physical matrices.
DensityMatrix parse_state_spec(std::string_view spec);

// Correlation tensors: {"t": [[T11, T12, T13], [..], [..]]}.
Json to_json(const CorrelationTensor& t);
CorrelationTensor tensor_from_json(const Json& j);
/// Header `T11,T12,...,T33` plus one data row.
std::string to_csv(const CorrelationTensor& t);

Json to_json(const CriterionReport& r);
std::string to_csv(const CriterionReport& r);

Json to_json(const ChshReport& r);
std::string to_csv(const ChshReport& r);

Json to_json(const BoundReport& r);
std::string to_csv(const BoundReport& r);

/// Includes the requested tolerance and both comparison thresholds.
/// "status" is "threshold" or "no-violation"; "visibility" is null for the
/// latter.
Json to_json(const ThresholdResult& r, double tol);
std::string to_csv(const ThresholdResult& r, double tol);

/// Monte Carlo report: {v, i, j, n, mean, std_error, target, pass}.
struct McReport {
  double v;
  int i;
  int j;
  McEstimate estimate;
  double target;
  bool pass;
};
McReport make_mc_report(const LhvTwoSettingModel& model, int i, int j,
                        const McEstimate& est);
Json to_json(const McReport& r);
std::string to_csv(const McReport& r);

/// Columns V,lhs,rhs,margin,violated.
std::string scan_to_csv(std::span<const ScanRow> rows);
Json scan_to_json(std::span<const ScanRow> rows);

/// Columns v,margin,consistent.
std::string sweep_to_csv(std::span<const ConsistencyVerdict> rows);
Json sweep_to_json(std::span<const ConsistencyVerdict> rows);

}  // namespace bellri

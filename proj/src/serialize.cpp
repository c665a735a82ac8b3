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

#include "bellri/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "bellri/errors.hpp"

namespace bellri {

namespace {

const char* bool_str(bool b) { return b ? "true" : "false"; }

double parse_double(std::string_view text, const char* what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty())
    throw ParseError(std::string("cannot parse ") + what + " from '" +
                     std::string(text) + "'");
  return value;
}

double require_number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

Json to_json(const DensityMatrix& rho) {
  Json entries = Json::array();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      entries.push_back({rho(r, c).real(), rho(r, c).imag()});
  return {{"rows", 4}, {"cols", 4}, {"entries", std::move(entries)}};
}

DensityMatrix density_matrix_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("density matrix JSON must be an object");
  for (const char* key : {"rows", "cols", "entries"})
    if (!j.contains(key))
      throw ParseError(std::string("density matrix JSON lacks \"") + key + "\"");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw ParseError("rows and cols must be integers");
  const auto rows = j["rows"].get<long long>();
  const auto cols = j["cols"].get<long long>();
  if (rows <= 0 || cols <= 0)
    throw ParseError("rows and cols must be positive");
  const Json& entries = j["entries"];
  if (!entries.is_array() ||
      entries.size() != static_cast<std::size_t>(rows * cols))
    throw ParseError("entries must be an array of rows * cols [re, im] pairs");

  ComplexMatrix m(rows, cols);
  std::size_t k = 0;
  for (long long r = 0; r < rows; ++r) {
    for (long long c = 0; c < cols; ++c, ++k) {
      const Json& e = entries[k];
      if (!e.is_array() || e.size() != 2)
        throw ParseError("each entry must be a [re, im] pair");
      m(r, c) = {require_number(e[0], "real part"),
                 require_number(e[1], "imaginary part")};
    }
  }
  return DensityMatrix::from_matrix(m);
}

DensityMatrix density_matrix_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open state file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("state file '" + path + "' is not valid JSON: " + e.what());
  }
  return density_matrix_from_json(j);
}

DensityMatrix parse_state_spec(std::string_view spec) {
  if (spec == "singlet") return make_singlet();
  if (spec == "white") return make_white_noise();
  if (spec.starts_with("werner:")) {
    const double v = parse_double(spec.substr(7), "visibility");
    return make_werner(Visibility(v));
  }
  if (spec.starts_with("file:"))
    return density_matrix_from_file(std::string(spec.substr(5)));
  throw ParseError("unknown state spec '" + std::string(spec) +
                   "' (expected singlet, white, werner:<v> or file:<path>)");
}

Json to_json(const CorrelationTensor& t) {
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({t(i, 0), t(i, 1), t(i, 2)});
  return {{"t", std::move(rows)}};
}

CorrelationTensor tensor_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("t") || !j["t"].is_array() ||
      j["t"].size() != 3)
    throw ParseError("tensor JSON must be {\"t\": [[3 reals] x 3]}");
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i) {
    const Json& row = j["t"][static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != 3)
      throw ParseError("tensor rows must hold 3 reals");
    for (int c = 0; c < 3; ++c)
      t(i, c) = require_number(row[static_cast<std::size_t>(c)], "tensor entry");
  }
  return CorrelationTensor(t);
}

std::string to_csv(const CorrelationTensor& t) {
  std::ostringstream os;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      os << (i + j ? "," : "") << 'T' << i + 1 << j + 1;
  os << '\n';
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      os << (i + j ? "," : "") << format_double(t(i, j));
  os << '\n';
  return os.str();
}

Json to_json(const CriterionReport& r) {
  return {{"lhs", r.lhs},
          {"rhs", r.rhs},
          {"violated", r.violated},
          {"margin", r.margin},
          {"comparison_thresholds",
           {r.comparison_thresholds.first, r.comparison_thresholds.second}}};
}

std::string to_csv(const CriterionReport& r) {
  return "lhs,rhs,violated,margin,threshold_this_work,threshold_prior\n" +
         format_double(r.lhs) + "," + format_double(r.rhs) + "," +
         bool_str(r.violated) + "," + format_double(r.margin) + "," +
         format_double(r.comparison_thresholds.first) + "," +
         format_double(r.comparison_thresholds.second) + "\n";
}

Json to_json(const ChshReport& r) {
  return {{"plane", {r.plane.a, r.plane.b}},
          {"values", r.values},
          {"bound", r.bound},
          {"max_value", r.max_value},
          {"satisfied", r.satisfied}};
}

std::string to_csv(const ChshReport& r) {
  std::ostringstream os;
  os << "plane,value1,value2,value3,value4,bound,max_value,satisfied\n"
     << r.plane.a << r.plane.b;
  for (double v : r.values) os << ',' << format_double(v);
  os << ',' << format_double(r.bound) << ',' << format_double(r.max_value)
     << ',' << bool_str(r.satisfied) << '\n';
  return os.str();
}

Json to_json(const BoundReport& r) {
  return {{"lhs", r.lhs},
          {"rhs", r.rhs},
          {"satisfied", r.satisfied},
          {"margin", r.margin}};
}

std::string to_csv(const BoundReport& r) {
  return "lhs,rhs,satisfied,margin\n" + format_double(r.lhs) + "," +
         format_double(r.rhs) + "," + bool_str(r.satisfied) + "," +
         format_double(r.margin) + "\n";
}

Json to_json(const ThresholdResult& r, double tol) {
  Json j = {{"status", r.found() ? "threshold" : "no-violation"},
            {"visibility", nullptr},
            {"tol", tol},
            {"steps", r.steps},
            {"comparison_thresholds", {kThresholdThisWork, kThresholdPrior}}};
  if (r.found()) j["visibility"] = r.visibility;
  return j;
}

std::string to_csv(const ThresholdResult& r, double tol) {
  return "status,visibility,tol,steps,threshold_this_work,threshold_prior\n" +
         std::string(r.found() ? "threshold" : "no-violation") + "," +
         (r.found() ? format_double(r.visibility) : std::string()) + "," +
         format_double(tol) + "," + std::to_string(r.steps) + "," +
         format_double(kThresholdThisWork) + "," +
         format_double(kThresholdPrior) + "\n";
}

McReport make_mc_report(const LhvTwoSettingModel& model, int i, int j,
                        const McEstimate& est) {
  const double target = target_correlation(model, i, j);
  return {model.visibility().value(), i, j, est, target,
          within_five_sigma(est, target)};
}

Json to_json(const McReport& r) {
  return {{"v", r.v},
          {"i", r.i},
          {"j", r.j},
          {"n", r.estimate.n_samples},
          {"mean", r.estimate.mean},
          {"std_error", r.estimate.std_error},
          {"target", r.target},
          {"pass", r.pass}};
}

std::string to_csv(const McReport& r) {
  return "v,i,j,n,mean,std_error,target,pass\n" + format_double(r.v) + "," +
         std::to_string(r.i) + "," + std::to_string(r.j) + "," +
         std::to_string(r.estimate.n_samples) + "," +
         format_double(r.estimate.mean) + "," +
         format_double(r.estimate.std_error) + "," + format_double(r.target) +
         "," + bool_str(r.pass) + "\n";
}

std::string scan_to_csv(std::span<const ScanRow> rows) {
  std::string out = "V,lhs,rhs,margin,violated\n";
  for (const ScanRow& row : rows)
    out += format_double(row.v) + "," + format_double(row.report.lhs) + "," +
           format_double(row.report.rhs) + "," +
           format_double(row.report.margin) + "," +
           bool_str(row.report.violated) + "\n";
  return out;
}

Json scan_to_json(std::span<const ScanRow> rows) {
  Json out = Json::array();
  for (const ScanRow& row : rows) {
    Json j = to_json(row.report);
    j["V"] = row.v;
    out.push_back(std::move(j));
  }
  return out;
}

std::string sweep_to_csv(std::span<const ConsistencyVerdict> rows) {
  std::string out = "v,margin,consistent\n";
  for (const ConsistencyVerdict& row : rows)
    out += format_double(row.v.value()) + "," +
           format_double(row.criterion_margin) + "," +
           bool_str(row.consistent) + "\n";
  return out;
}

Json sweep_to_json(std::span<const ConsistencyVerdict> rows) {
  Json out = Json::array();
  for (const ConsistencyVerdict& row : rows)
    out.push_back({{"v", row.v.value()},
                   {"margin", row.criterion_margin},
                   {"consistent", row.consistent},
                   {"explanation_code", to_string(row.reason)}});
  return out;
}

}  // namespace bellri

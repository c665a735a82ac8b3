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

#include "run_config.hpp"

#include <charconv>
#include <fstream>
#include <string>
#include <system_error>

namespace bellri::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty())
    throw ConfigError("invalid value '" + std::string(value) + "' for '" +
                      std::string(key) + "'");
  return out;
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
  if (text == "json") return OutputFormat::kJson;
  if (text == "csv") return OutputFormat::kCsv;
  throw ConfigError("format must be json or csv, got '" + std::string(text) +
                    "'");
}

const char* to_string(OutputFormat format) {
  return format == OutputFormat::kJson ? "json" : "csv";
}

void RunConfig::set(std::string_view key, std::string_view value) {
  if (key == "tol")
    tol = parse_number<double>(key, value);
  else if (key == "quad_theta")
    quad_theta = parse_number<std::size_t>(key, value);
  else if (key == "quad_phi")
    quad_phi = parse_number<std::size_t>(key, value);
  else if (key == "grid_theta")
    grid_theta = parse_number<std::size_t>(key, value);
  else if (key == "grid_phi")
    grid_phi = parse_number<std::size_t>(key, value);
  else if (key == "samples")
    samples = parse_number<std::uint64_t>(key, value);
  else if (key == "seed")
    seed = parse_number<std::uint64_t>(key, value);
  else if (key == "format")
    format = parse_format(value);
  else if (key == "output")
    output = std::string(value);
  else
    throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void RunConfig::validate() const {
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (quad_theta == 0 || quad_phi == 0 || grid_theta == 0 || grid_phi == 0 ||
      samples == 0)
    throw ConfigError("node, grid and sample counts must be positive");
  if (output.empty()) throw ConfigError("output path must not be empty");
}

RunConfig parse_config(std::istream& in, std::string_view source,
                       RunConfig base) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos)
      view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(std::string(source) + ":" + std::to_string(line_no) +
                        ": expected key = value");
    try {
      base.set(trim(view.substr(0, eq)), trim(view.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(source) + ":" + std::to_string(line_no) +
                        ": " + e.what());
    }
  }
  base.validate();
  return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path, std::move(base));
}

}  // namespace bellri::cli

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

#include <cstddef>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bellri::cli {

/// Environment variable naming the default config file.
inline constexpr const char* kConfigEnvVar = "BELLRI_CONFIG";
/// Output path meaning standard output.
inline constexpr const char* kStdout = "-";

enum class OutputFormat { kJson, kCsv };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Settings shared by all subcommands. Command-line flags override values
/// read from a config file.
///
/// Config files hold one `key = value` per line; `#` starts a comment and
/// blank lines are ignored. Keys: tol, quad_theta, quad_phi, grid_theta,
/// grid_phi, samples, seed, format (json|csv), output.
struct RunConfig {
  double tol = 1e-9;
  std::size_t quad_theta = 8;
  std::size_t quad_phi = 16;
  std::size_t grid_theta = 200;
  std::size_t grid_phi = 400;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::kJson;
  std::string output = kStdout;

  /// Throws ConfigError for unknown keys or unparsable values.
  void set(std::string_view key, std::string_view value);
  /// Throws ConfigError if a count is zero or tol is not positive.
  void validate() const;
};

OutputFormat parse_format(std::string_view text);
const char* to_string(OutputFormat format);

/// Parses `in` on top of `base`. `source` names the input in messages.
RunConfig parse_config(std::istream& in, std::string_view source,
                       RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

}  // namespace bellri::cli

// Copyright 2026 The pqp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PQP_CONFIG_HPP
#define PQP_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pqp/experiments.hpp"

namespace pqp {

struct AlphaRange {
  double start = 0.0;
  double stop = 90.0;
  double step = 5.0;

  std::vector<double> grid() const { return alpha_grid(start, stop, step); }
  static AlphaRange parse(std::string_view text);  // "start:stop:step"
};

/// Every knob of a CLI run. Defaults: ideal noise, flux 1e5, seed 1,
/// 200 bootstrap replicas.
struct RunConfig {
  std::string u = "X";
  double v1 = 1.0;
  double v2 = 1.0;
  double hwp_offset_deg = 0.0;
  double flux = 1e5;
  std::uint64_t seed = 1;
  int replicas = 200;
  std::optional<AlphaRange> alpha;  // unset: program-dependent default
  std::optional<double> fit_visibility;
  bool exact = false;
  std::string out = "pqp-run";
  bool force = false;

  NoiseModel noise() const { return {v1, v2, hwp_offset_deg}; }
  ExperimentOptions experiment_options() const { return {flux, seed, replicas, exact}; }
  DipOptions dip_options() const { return {flux, seed, replicas, exact}; }
  AlphaRange alpha_for(Bell program) const;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  /// Physical parameters only; `out` and `force` are left out so that the
  /// snapshot depends on nothing but what determines the results.
  nlohmann::json snapshot() const;
};

/// Strict JSON: unknown keys and wrong types are rejected. Values not present
/// keep the ones already in `base`. `source` names the input in diagnostics.
RunConfig parse_config(std::string_view json_text, const RunConfig& base = {},
                       std::string_view source = "config");
RunConfig load_config_file(const std::string& path, const RunConfig& base = {});

/// Applies one command-line override, e.g. ("v1", "0.9") or ("alpha", "0:90:5").
void apply_override(RunConfig& cfg, std::string_view key, std::string_view value);

/// Field names accepted by apply_override and the config file.
const std::vector<std::string>& config_keys();

}  // namespace pqp

#endif  // PQP_CONFIG_HPP

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

// Run directories and the files written into them. Layout and column order
// are documented in docs/formats.md.

#ifndef PQP_ARTIFACTS_HPP
#define PQP_ARTIFACTS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pqp/config.hpp"
#include "pqp/experiments.hpp"

namespace pqp {

/// Locale-independent shortest round-trip formatting; NaN prints as "nan".
std::string format_number(double x);

std::string table_csv(const std::vector<ProcessReport>& reports);
nlohmann::json report_entry_json(const ProcessReport& report);
nlohmann::json report_json(std::string_view command, Kind kind, const RunConfig& cfg,
                           const std::vector<ProcessReport>& reports,
                           const std::optional<PhaseRelationResult>& phase = std::nullopt);

std::string dip_csv(const DipScan& scan);
nlohmann::json fit_json(const DipScan& scan, const RunConfig& cfg,
                        const std::optional<NoiseFit>& noise_fit = std::nullopt);

struct CalibrationRun {
  std::string u_label;
  Kind kind = Kind::Commutator;
  CountTable counts;
  Grid6 probabilities = Grid6::Zero();
};

CalibrationRun run_calibration(Kind kind, const RunConfig& cfg);
nlohmann::json calibration_json(const CalibrationRun& run, const RunConfig& cfg);

/// Throw ConfigError describing the first violation.
void validate_report_json(const nlohmann::json& j);
void validate_fit_json(const nlohmann::json& j);

/// Creates `dir`; refuses a non-empty existing directory unless `force`.
void prepare_run_dir(const std::filesystem::path& dir, bool force);
void write_text(const std::filesystem::path& file, const std::string& text);

// Whole-command drivers used by the C API and the CLI. Each writes its files
// into cfg.out and returns the list of files written.
std::vector<std::filesystem::path> run_suite_command(Kind kind, const RunConfig& cfg);
std::vector<std::filesystem::path> run_tomo_command(Kind kind, const RunConfig& cfg);
std::vector<std::filesystem::path> run_dip_command(Bell program, const RunConfig& cfg);
std::vector<std::filesystem::path> run_calibrate_command(Kind kind, const RunConfig& cfg);

/// Dip scan honoring cfg.fit_visibility (noise-fit mode) when set.
DipScan run_dip(Bell program, const RunConfig& cfg, std::optional<NoiseFit>* noise_fit = nullptr);

}  // namespace pqp

#endif  // PQP_ARTIFACTS_HPP

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

// Command-line front end. Everything goes through the C API in pqp/pqp.h.

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "pqp/pqp.h"

namespace {

struct ConfigDeleter {
  void operator()(pqp_config* c) const { pqp_config_destroy(c); }
};
using ConfigHandle = std::unique_ptr<pqp_config, ConfigDeleter>;

struct Flags {
  std::string config_file;
  // Kept as text; the library parses and validates each value.
  std::vector<std::pair<const char*, std::optional<std::string>>> values = {
      {"u", {}},      {"v1", {}},      {"v2", {}},       {"hwp_offset_deg", {}},
      {"flux", {}},   {"seed", {}},    {"alpha", {}},    {"replicas", {}},
      {"fit_visibility", {}}, {"out", {}}};
  bool force = false;
  bool exact = false;

  std::optional<std::string>& at(const char* key) {
    for (auto& [k, v] : values)
      if (std::string(k) == key) return v;
    throw std::logic_error(key);
  }
};

void add_common_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_file, "JSON run configuration (flags override it)");
  cmd->add_option("--u", f.at("u"), "central unitary: I, X, Y, Z, H, XY, YZ or an HWP angle in degrees");
  cmd->add_option("--v1", f.at("v1"), "interference overlap at the first PBS, in [0,1]");
  cmd->add_option("--v2", f.at("v2"), "interference overlap at the second PBS, in [0,1]");
  cmd->add_option("--hwp-offset", f.at("hwp_offset_deg"), "central waveplate miscalibration, degrees");
  cmd->add_option("--flux", f.at("flux"), "expected calibration counts per setting");
  cmd->add_option("--seed", f.at("seed"), "master random seed");
  cmd->add_option("--alpha", f.at("alpha"), "dip scan grid start:stop:step in degrees");
  cmd->add_option("--replicas", f.at("replicas"), "bootstrap replicas (0 disables)");
  cmd->add_option("--fit-visibility", f.at("fit_visibility"),
                  "fit the PBS overlap to this dip visibility before scanning");
  cmd->add_option("--out", f.at("out"), "output directory");
  cmd->add_flag("--force", f.force, "overwrite an existing run directory");
  cmd->add_flag("--exact", f.exact, "use expected counts instead of Poisson draws");
}

int report_failure(pqp_status st) {
  std::fprintf(stderr, "pqp: error: %s: %s\n", pqp_status_string(st), pqp_last_error());
  return static_cast<int>(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulated two-gate photonic processor: (anti)commutator tomography and dip scans"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pqp_version());

  Flags flags;
  std::string kind = "commutator";
  std::string program;

  auto* suite = app.add_subcommand("suite", "process tomography of every preset unitary");
  suite->add_option("kind", kind, "commutator or anticommutator")
      ->required()
      ->check(CLI::IsMember({"commutator", "anticommutator"}));
  add_common_flags(suite, flags);

  auto* tomo = app.add_subcommand("tomo", "process tomography for the unitary given by --u");
  tomo->add_option("kind", kind, "commutator (default) or anticommutator")
      ->check(CLI::IsMember({"commutator", "anticommutator"}));
  add_common_flags(tomo, flags);

  auto* dip = app.add_subcommand("dip", "coincidence-dip scan over the central waveplate angle");
  dip->add_option("program", program, "program state: psi- or phi-")
      ->required()
      ->check(CLI::IsMember({"psi-", "phi-"}));
  add_common_flags(dip, flags);

  auto* calibrate = app.add_subcommand("calibrate", "distinguishable-photon reference run only");
  calibrate->add_option("kind", kind, "commutator (default) or anticommutator")
      ->check(CLI::IsMember({"commutator", "anticommutator"}));
  add_common_flags(calibrate, flags);

  CLI11_PARSE(app, argc, argv);

  pqp_config* raw = nullptr;
  if (pqp_status st = pqp_config_create(&raw); st != PQP_OK) return report_failure(st);
  ConfigHandle cfg(raw);

  if (!flags.config_file.empty())
    if (pqp_status st = pqp_config_load_file(cfg.get(), flags.config_file.c_str()); st != PQP_OK)
      return report_failure(st);
  for (const auto& [key, value] : flags.values)
    if (value)
      if (pqp_status st = pqp_config_set(cfg.get(), key, value->c_str()); st != PQP_OK)
        return report_failure(st);
  if (flags.force && pqp_config_set(cfg.get(), "force", "true") != PQP_OK)
    return report_failure(PQP_ERR_CONFIG);
  if (flags.exact && pqp_config_set(cfg.get(), "exact", "true") != PQP_OK)
    return report_failure(PQP_ERR_CONFIG);

  pqp_status st = PQP_OK;
  std::string what;
  if (suite->parsed()) {
    st = pqp_cmd_suite(cfg.get(), kind.c_str());
    what = "suite " + kind;
  } else if (tomo->parsed()) {
    st = pqp_cmd_tomo(cfg.get(), kind.c_str());
    what = "tomo " + kind;
  } else if (dip->parsed()) {
    st = pqp_cmd_dip(cfg.get(), program.c_str());
    what = "dip " + program;
  } else if (calibrate->parsed()) {
    st = pqp_cmd_calibrate(cfg.get(), kind.c_str());
    what = "calibrate " + kind;
  }
  if (st != PQP_OK) return report_failure(st);

  std::printf("%s: done\n", what.c_str());
  return 0;
}

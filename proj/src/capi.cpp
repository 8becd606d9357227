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

#include "pqp/pqp.h"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <new>
#include <string>

#include "pqp/artifacts.hpp"
#include "pqp/config.hpp"
#include "pqp/error.hpp"

struct pqp_config {
  pqp::RunConfig cfg;
};

struct pqp_report {
  pqp::ProcessReport report;
};

struct pqp_dip {
  pqp::DipScan scan;
};

namespace {

thread_local std::string g_last_error;

pqp_status set_error(pqp_status status, const char* message) {
  g_last_error = message;
  return status;
}

// Runs `fn`, mapping exceptions onto status codes.
template <class Fn>
pqp_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return PQP_OK;
  } catch (const pqp::ConfigError& e) {
    return set_error(PQP_ERR_CONFIG, e.what());
  } catch (const pqp::RunExistsError& e) {
    return set_error(PQP_ERR_RUN_EXISTS, e.what());
  } catch (const pqp::IoError& e) {
    return set_error(PQP_ERR_IO, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return set_error(PQP_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return set_error(PQP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(PQP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(PQP_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(PQP_ERR_INTERNAL, "unknown error");
  }
}

#define PQP_REQUIRE_ARG(ptr)                                                  \
  do {                                                                        \
    if ((ptr) == nullptr)                                                     \
      return set_error(PQP_ERR_INVALID_ARGUMENT, #ptr " must not be NULL"); \
  } while (0)

}  // namespace

extern "C" {

const char* pqp_version(void) { return "0.1.0"; }

const char* pqp_last_error(void) { return g_last_error.c_str(); }

const char* pqp_status_string(pqp_status status) {
  switch (status) {
    case PQP_OK: return "ok";
    case PQP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PQP_ERR_CONFIG: return "configuration error";
    case PQP_ERR_IO: return "i/o error";
    case PQP_ERR_RUN_EXISTS: return "run directory exists";
    case PQP_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case PQP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

pqp_status pqp_config_create(pqp_config** out) {
  PQP_REQUIRE_ARG(out);
  return guarded([&] { *out = new pqp_config{}; });
}

void pqp_config_destroy(pqp_config* cfg) { delete cfg; }

pqp_status pqp_config_load_file(pqp_config* cfg, const char* path) {
  PQP_REQUIRE_ARG(cfg);
  PQP_REQUIRE_ARG(path);
  return guarded([&] { cfg->cfg = pqp::load_config_file(path, cfg->cfg); });
}

pqp_status pqp_config_load_string(pqp_config* cfg, const char* json_text) {
  PQP_REQUIRE_ARG(cfg);
  PQP_REQUIRE_ARG(json_text);
  return guarded([&] { cfg->cfg = pqp::parse_config(json_text, cfg->cfg); });
}

pqp_status pqp_config_set(pqp_config* cfg, const char* key, const char* value) {
  PQP_REQUIRE_ARG(cfg);
  PQP_REQUIRE_ARG(key);
  PQP_REQUIRE_ARG(value);
  return guarded([&] { pqp::apply_override(cfg->cfg, key, value); });
}

pqp_status pqp_config_to_json(const pqp_config* cfg, char* buf, size_t buf_len, size_t* required) {
  PQP_REQUIRE_ARG(cfg);
  std::string text;
  const pqp_status st = guarded([&] { text = cfg->cfg.snapshot().dump(); });
  if (st != PQP_OK) return st;
  if (required) *required = text.size() + 1;
  if (buf == nullptr || buf_len < text.size() + 1)
    return set_error(PQP_ERR_BUFFER_TOO_SMALL, "buffer too small for configuration JSON");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return PQP_OK;
}

pqp_status pqp_cmd_suite(const pqp_config* cfg, const char* kind) {
  PQP_REQUIRE_ARG(cfg);
  PQP_REQUIRE_ARG(kind);
  return guarded([&] { pqp::run_suite_command(pqp::parse_kind(kind), cfg->cfg); });
}

pqp_status pqp_cmd_tomo(const pqp_config* cfg, const char* kind) {
  PQP_REQUIRE_ARG(cfg);
  PQP_REQUIRE_ARG(kind);
  return guarded([&] { pqp::run_tomo_command(pqp::parse_kind(kind), cfg->cfg); });
}

pqp_status pqp_cmd_dip(const pqp_config* cfg, const char* program) {
  PQP_REQUIRE_ARG(cfg);
  PQP_REQUIRE_ARG(program);
  return guarded([&] { pqp::run_dip_command(pqp::parse_bell(program), cfg->cfg); });
}

pqp_status pqp_cmd_calibrate(const pqp_config* cfg, const char* kind) {
  PQP_REQUIRE_ARG(cfg);
  PQP_REQUIRE_ARG(kind);
  return guarded([&] { pqp::run_calibrate_command(pqp::parse_kind(kind), cfg->cfg); });
}

pqp_status pqp_tomo_run(const pqp_config* cfg, const char* kind, pqp_report** out) {
  PQP_REQUIRE_ARG(cfg);
  PQP_REQUIRE_ARG(kind);
  PQP_REQUIRE_ARG(out);
  return guarded([&] {
    const auto& c = cfg->cfg;
    c.validate();
    *out = new pqp_report{pqp::run_process_experiment(pqp::parse_kind(kind), pqp::parse_central_op(c.u),
                                                      c.noise(), c.experiment_options())};
  });
}

void pqp_report_destroy(pqp_report* report) { delete report; }

pqp_status pqp_report_get(const pqp_report* report, pqp_report_values* out) {
  PQP_REQUIRE_ARG(report);
  PQP_REQUIRE_ARG(out);
  const auto& r = report->report;
  *out = {r.F, r.sigma_F, r.K, r.sigma_K, r.K_th, r.null_commutator ? 1 : 0, r.mle_iterations};
  return PQP_OK;
}

pqp_status pqp_report_chi(const pqp_report* report, double re[16], double im[16]) {
  PQP_REQUIRE_ARG(report);
  PQP_REQUIRE_ARG(re);
  PQP_REQUIRE_ARG(im);
  const auto& m = report->report.chi.matrix;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      re[4 * i + j] = m(i, j).real();
      im[4 * i + j] = m(i, j).imag();
    }
  return PQP_OK;
}

pqp_status pqp_dip_run(const pqp_config* cfg, const char* program, pqp_dip** out) {
  PQP_REQUIRE_ARG(cfg);
  PQP_REQUIRE_ARG(program);
  PQP_REQUIRE_ARG(out);
  return guarded([&] { *out = new pqp_dip{pqp::run_dip(pqp::parse_bell(program), cfg->cfg)}; });
}

void pqp_dip_destroy(pqp_dip* dip) { delete dip; }

pqp_status pqp_dip_get(const pqp_dip* dip, pqp_dip_values* out) {
  PQP_REQUIRE_ARG(dip);
  PQP_REQUIRE_ARG(out);
  const auto& s = dip->scan;
  const auto [lo, hi] = std::minmax_element(s.alphas.begin(), s.alphas.end());
  *out = {s.visibility,       s.sigma_V,        s.fit.alpha0_deg, s.fit.minimum_deg(*lo, *hi),
          s.fit.rms_residual, s.fit.amplitude,  s.fit.offset,     s.noise.v1,
          s.noise.v2,         s.alphas.size()};
  return PQP_OK;
}

pqp_status pqp_dip_points(const pqp_dip* dip, double* alphas, double* counts, double* fitted,
                          size_t n) {
  PQP_REQUIRE_ARG(dip);
  const auto& s = dip->scan;
  const size_t m = std::min(n, s.alphas.size());
  for (size_t i = 0; i < m; ++i) {
    if (alphas) alphas[i] = s.alphas[i];
    if (counts) counts[i] = s.counts[i];
    if (fitted) fitted[i] = s.fit.curve(s.alphas[i]);
  }
  return PQP_OK;
}

}  // extern "C"

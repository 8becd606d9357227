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

#include "pqp/artifacts.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "pqp/error.hpp"
#include "pqp/random.hpp"

namespace pqp {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kReportSchema = "pqp.report/1";
constexpr const char* kFitSchema = "pqp.fit/1";
constexpr const char* kCalibrationSchema = "pqp.calibration/1";

json matrix_part(const Op4& m, bool imag) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back(imag ? m(i, j).imag() : m(i, j).real());
    rows.push_back(row);
  }
  return rows;
}

json grid_json(const Grid6& g) {
  json rows = json::array();
  for (int i = 0; i < kSettings; ++i) {
    json row = json::array();
    for (int j = 0; j < kSettings; ++j) row.push_back(g(i, j));
    rows.push_back(row);
  }
  return rows;
}

json noise_json(const NoiseModel& n) {
  return {{"v1", n.v1}, {"v2", n.v2}, {"hwp_offset_deg", n.hwp_offset_deg}};
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw ConfigError("schema violation at " + path + ": " + what);
}

void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) invalid(path, what);
}

const json& member(const json& j, const std::string& path, const char* key) {
  require(j.is_object(), path, "expected an object");
  require(j.contains(key), path, std::string("missing '") + key + "'");
  return j.at(key);
}

double number_member(const json& j, const std::string& path, const char* key, bool nullable = false) {
  const json& v = member(j, path, key);
  if (nullable && v.is_null()) return std::nan("");
  require(v.is_number(), path + "." + key, "expected a number");
  return v.get<double>();
}

Op4 parse_matrix(const json& chi, const std::string& path) {
  Op4 m;
  for (const char* part : {"re", "im"}) {
    const json& rows = member(chi, path, part);
    require(rows.is_array() && rows.size() == 4, path + "." + part, "expected 4 rows");
    for (int i = 0; i < 4; ++i) {
      require(rows[i].is_array() && rows[i].size() == 4, path + "." + part, "expected 4 columns");
      for (int j = 0; j < 4; ++j) {
        require(rows[i][j].is_number(), path + "." + part, "expected numbers");
        const double x = rows[i][j].get<double>();
        if (part[0] == 'r') m(i, j) = complex_t(x, 0.0);
        else m(i, j) += complex_t(0.0, x);
      }
    }
  }
  return m;
}

void validate_grid(const json& g, const std::string& path) {
  require(g.is_array() && g.size() == kSettings, path, "expected 6 rows");
  for (const auto& row : g) {
    require(row.is_array() && row.size() == kSettings, path, "expected 6 columns");
    for (const auto& x : row) require(x.is_number() && x.get<double>() >= 0.0, path, "expected non-negative numbers");
  }
}

std::uint64_t suite_seed(const RunConfig& cfg, Kind kind, std::size_t index) {
  return derive_seed(cfg.seed, {stream::kSuite, static_cast<std::uint64_t>(kind), index});
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string table_csv(const std::vector<ProcessReport>& reports) {
  std::string out = "U,F,sigma_F,K_calib,sigma_K,K_th\n";
  for (const auto& r : reports) {
    out += r.u_label;
    for (double x : {r.F, r.sigma_F, r.K, r.sigma_K, r.K_th}) out += "," + format_number(x);
    out += "\n";
  }
  return out;
}

json report_entry_json(const ProcessReport& r) {
  return {{"U", r.u_label},
          {"kind", std::string(to_string(r.kind))},
          {"F", number_or_null(r.F)},
          {"sigma_F", number_or_null(r.sigma_F)},
          {"K_calib", r.K},
          {"sigma_K", r.sigma_K},
          {"K_th", r.K_th},
          {"null_commutator", r.null_commutator},
          {"noise", noise_json(r.noise)},
          {"flux", r.flux},
          {"seed", r.seed},
          {"exact_counts", r.exact_counts},
          {"mle_iterations", r.mle_iterations},
          {"signal_total", r.signal_counts.total()},
          {"calibration_total", r.calibration_counts.total()},
          {"chi", {{"re", matrix_part(r.chi.matrix, false)}, {"im", matrix_part(r.chi.matrix, true)}}}};
}

json report_json(std::string_view command, Kind kind, const RunConfig& cfg,
                 const std::vector<ProcessReport>& reports,
                 const std::optional<PhaseRelationResult>& phase) {
  json j;
  j["schema"] = kReportSchema;
  j["command"] = std::string(command);
  j["kind"] = std::string(to_string(kind));
  j["config"] = cfg.snapshot();
  j["experiments"] = json::array();
  for (const auto& r : reports) j["experiments"].push_back(report_entry_json(r));
  if (phase) {
    j["phase_relation"] = {{"target", "(|HV> - i|VH>)/sqrt2"},
                           {"F_target", number_or_null(phase->F_target)},
                           {"sigma", number_or_null(phase->sigma)},
                           {"F_swapped", number_or_null(phase->F_swapped)}};
  }
  return j;
}

std::string dip_csv(const DipScan& scan) {
  std::string out = "alpha_deg,counts,fitted_counts\n";
  for (std::size_t i = 0; i < scan.alphas.size(); ++i)
    out += format_number(scan.alphas[i]) + "," + format_number(scan.counts[i]) + "," +
           format_number(scan.fit.curve(scan.alphas[i])) + "\n";
  return out;
}

json fit_json(const DipScan& scan, const RunConfig& cfg, const std::optional<NoiseFit>& noise_fit) {
  const auto [lo, hi] = std::minmax_element(scan.alphas.begin(), scan.alphas.end());
  json j;
  j["schema"] = kFitSchema;
  j["program"] = std::string(to_string(scan.program));
  j["V"] = scan.visibility;
  j["sigma_V"] = scan.sigma_V;
  j["alpha0_deg"] = scan.fit.alpha0_deg;
  j["minimum_deg"] = scan.fit.minimum_deg(*lo, *hi);
  j["rms"] = scan.fit.rms_residual;
  j["amplitude"] = scan.fit.amplitude;
  j["offset"] = scan.fit.offset;
  j["noise"] = noise_json(scan.noise);
  j["flux"] = scan.flux;
  j["seed"] = scan.seed;
  j["config"] = cfg.snapshot();
  if (noise_fit)
    j["noise_fit"] = {{"target", *cfg.fit_visibility},
                      {"v", noise_fit->v},
                      {"V_expected", noise_fit->visibility}};
  else
    j["noise_fit"] = nullptr;
  return j;
}

CalibrationRun run_calibration(Kind kind, const RunConfig& cfg) {
  cfg.validate();
  const TomographySettings settings = TomographySettings::standard(cfg.flux, cfg.seed);
  const Ket4 program = bell_ket(program_for(kind));
  const CentralOp u = parse_central_op(cfg.u);
  CalibrationRun run;
  run.u_label = u.label();
  run.kind = kind;
  run.probabilities = predict_probabilities(
      [&](const Ket2& probe) { return calibration_cascade(probe, program, u, cfg.hwp_offset_deg).rho_out; },
      settings);
  run.counts = cfg.exact ? expected_counts(run.probabilities.cwiseMax(0.0), cfg.flux)
                         : simulate_counts(run.probabilities, cfg.flux,
                                           derive_seed(cfg.seed, {stream::kCalibration}));
  return run;
}

json calibration_json(const CalibrationRun& run, const RunConfig& cfg) {
  json success = json::array();
  for (int j = 0; j < kSettings; ++j) success.push_back(run.probabilities.row(j).sum() / 3.0);
  return {{"schema", kCalibrationSchema},
          {"command", "calibrate"},
          {"kind", std::string(to_string(run.kind))},
          {"U", run.u_label},
          {"config", cfg.snapshot()},
          {"probes", {"H", "V", "D", "A", "R", "L"}},
          {"outcomes", {"H", "V", "D", "A", "R", "L"}},
          {"p_success", success},
          {"counts", grid_json(run.counts.counts)},
          {"total", run.counts.total()},
          {"expected_total", run.probabilities.sum() * cfg.flux * kCountScale}};
}

void validate_report_json(const json& j) {
  const std::string schema = member(j, "$", "schema").is_string() ? j["schema"].get<std::string>() : "";
  if (schema == kCalibrationSchema) {
    validate_grid(member(j, "$", "counts"), "$.counts");
    require(number_member(j, "$", "total") >= 0.0, "$.total", "must be non-negative");
    require(member(j, "$", "p_success").is_array() && j["p_success"].size() == kSettings,
            "$.p_success", "expected 6 entries");
    parse_config(member(j, "$", "config").dump(), {}, "$.config");
    return;
  }
  require(schema == kReportSchema, "$.schema", "unexpected schema '" + schema + "'");
  require(member(j, "$", "command").is_string(), "$.command", "expected a string");
  parse_kind(member(j, "$", "kind").get<std::string>());
  parse_config(member(j, "$", "config").dump(), {}, "$.config");

  const json& exps = member(j, "$", "experiments");
  require(exps.is_array() && !exps.empty(), "$.experiments", "expected a non-empty array");
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const std::string path = "$.experiments[" + std::to_string(i) + "]";
    const json& e = exps[i];
    require(member(e, path, "U").is_string(), path + ".U", "expected a string");
    const double f = number_member(e, path, "F", true);
    number_member(e, path, "sigma_F", true);
    const double k = number_member(e, path, "K_calib");
    require(k >= 0.0, path + ".K_calib", "must be non-negative");
    require(number_member(e, path, "sigma_K") >= 0.0, path + ".sigma_K", "must be non-negative");
    require(number_member(e, path, "K_th") >= 0.0, path + ".K_th", "must be non-negative");
    require(member(e, path, "null_commutator").is_boolean(), path + ".null_commutator", "expected a boolean");
    if (std::isfinite(f)) require(f >= -1e-9 && f <= 1.0 + 1e-9, path + ".F", "must lie in [0,1]");

    const json& noise = member(e, path, "noise");
    for (const char* key : {"v1", "v2"}) {
      const double v = number_member(noise, path + ".noise", key);
      require(v >= 0.0 && v <= 1.0, path + ".noise." + key, "must lie in [0,1]");
    }
    number_member(noise, path + ".noise", "hwp_offset_deg");

    const Op4 chi = parse_matrix(member(e, path, "chi"), path + ".chi");
    require(is_hermitian(chi, 1e-9 * std::max(1.0, chi.cwiseAbs().maxCoeff())), path + ".chi",
            "not Hermitian");
    if (e["signal_total"].is_number() && e["signal_total"].get<double>() > 0.0)
      require(std::abs(chi.trace().real() - 2.0 * k * k) <= 1e-9 * std::max(1.0, 2.0 * k * k),
              path + ".chi", "trace differs from 2 K^2");
  }
}

void validate_fit_json(const json& j) {
  require(member(j, "$", "schema") == kFitSchema, "$.schema", "unexpected schema");
  parse_bell(member(j, "$", "program").get<std::string>());
  const double v = number_member(j, "$", "V");
  require(v >= 0.0 && v <= 1.0 + 1e-12, "$.V", "visibility must lie in [0,1]");
  require(number_member(j, "$", "sigma_V") >= 0.0, "$.sigma_V", "must be non-negative");
  const double a0 = number_member(j, "$", "alpha0_deg");
  require(a0 > -45.0 - 1e-9 && a0 <= 45.0 + 1e-9, "$.alpha0_deg", "must lie in (-45,45]");
  number_member(j, "$", "minimum_deg");
  require(number_member(j, "$", "rms") >= 0.0, "$.rms", "must be non-negative");
  require(number_member(j, "$", "amplitude") >= 0.0, "$.amplitude", "must be non-negative");
  require(number_member(j, "$", "offset") >= 0.0, "$.offset", "must be non-negative");
  parse_config(member(j, "$", "config").dump(), {}, "$.config");
  const json& nf = member(j, "$", "noise_fit");
  if (!nf.is_null()) {
    const double vstar = number_member(nf, "$.noise_fit", "v");
    require(vstar > 0.0 && vstar < 1.0, "$.noise_fit.v", "must lie in (0,1)");
    number_member(nf, "$.noise_fit", "target");
    number_member(nf, "$.noise_fit", "V_expected");
  }
}

void prepare_run_dir(const fs::path& dir, bool force) {
  std::error_code ec;
  if (fs::exists(dir, ec)) {
    if (!fs::is_directory(dir, ec)) throw IoError("output path '" + dir.string() + "' is not a directory");
    if (!fs::is_empty(dir, ec) && !force)
      throw RunExistsError("output directory '" + dir.string() +
                           "' already holds a run; pass --force to overwrite");
    return;
  }
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + file.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + file.string() + "'");
}

namespace {

std::vector<fs::path> write_reports(std::string_view command, Kind kind, const RunConfig& cfg,
                                    const std::vector<ProcessReport>& reports,
                                    const std::optional<PhaseRelationResult>& phase) {
  const fs::path dir(cfg.out);
  const json report = report_json(command, kind, cfg, reports, phase);
  validate_report_json(report);
  std::vector<fs::path> files = {dir / "config.json", dir / "table.csv", dir / "report.json"};
  write_text(files[0], dump(cfg.snapshot()));
  write_text(files[1], table_csv(reports));
  write_text(files[2], dump(report));
  return files;
}

}  // namespace

std::vector<fs::path> run_suite_command(Kind kind, const RunConfig& cfg) {
  cfg.validate();
  prepare_run_dir(cfg.out, cfg.force);
  std::vector<ProcessReport> reports;
  const auto presets = table_presets(kind);
  for (std::size_t i = 0; i < presets.size(); ++i) {
    ExperimentOptions opts = cfg.experiment_options();
    opts.seed = suite_seed(cfg, kind, i);
    reports.push_back(run_process_experiment(kind, presets[i], cfg.noise(), opts));
  }
  std::optional<PhaseRelationResult> phase;
  if (kind == Kind::Commutator) {
    ExperimentOptions opts = cfg.experiment_options();
    opts.seed = suite_seed(cfg, kind, presets.size());
    phase = phase_relation_test(cfg.noise(), opts);
  }
  return write_reports("suite", kind, cfg, reports, phase);
}

std::vector<fs::path> run_tomo_command(Kind kind, const RunConfig& cfg) {
  cfg.validate();
  prepare_run_dir(cfg.out, cfg.force);
  const std::vector<ProcessReport> reports = {
      run_process_experiment(kind, parse_central_op(cfg.u), cfg.noise(), cfg.experiment_options())};
  return write_reports("tomo", kind, cfg, reports, std::nullopt);
}

DipScan run_dip(Bell program, const RunConfig& cfg, std::optional<NoiseFit>* noise_fit) {
  cfg.validate();
  const std::vector<double> alphas = cfg.alpha_for(program).grid();
  NoiseModel noise = cfg.noise();
  if (cfg.fit_visibility) {
    const NoiseFit nf =
        fit_noise_to_visibility(program, alphas, *cfg.fit_visibility, cfg.hwp_offset_deg, cfg.flux);
    noise.v1 = noise.v2 = nf.v;
    if (noise_fit) *noise_fit = nf;
  }
  return dip_scan(program, alphas, noise, cfg.dip_options());
}

std::vector<fs::path> run_dip_command(Bell program, const RunConfig& cfg) {
  cfg.validate();
  prepare_run_dir(cfg.out, cfg.force);
  std::optional<NoiseFit> nf;
  const DipScan scan = run_dip(program, cfg, &nf);
  const json fit = fit_json(scan, cfg, nf);
  validate_fit_json(fit);
  const fs::path dir(cfg.out);
  std::vector<fs::path> files = {dir / "config.json", dir / "dip.csv", dir / "fit.json"};
  write_text(files[0], dump(cfg.snapshot()));
  write_text(files[1], dip_csv(scan));
  write_text(files[2], dump(fit));
  return files;
}

std::vector<fs::path> run_calibrate_command(Kind kind, const RunConfig& cfg) {
  cfg.validate();
  prepare_run_dir(cfg.out, cfg.force);
  const CalibrationRun run = run_calibration(kind, cfg);
  const json report = calibration_json(run, cfg);
  validate_report_json(report);
  const fs::path dir(cfg.out);
  std::vector<fs::path> files = {dir / "config.json", dir / "report.json"};
  write_text(files[0], dump(cfg.snapshot()));
  write_text(files[1], dump(report));
  return files;
}

}  // namespace pqp

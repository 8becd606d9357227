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

#include "pqp/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "pqp/random.hpp"

namespace pqp {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sample_stddev(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

void require_replicas(int replicas) {
  if (replicas != 0 && replicas < 50) {
    std::ostringstream os;
    os << "bootstrap needs at least 50 replicas (or 0 to disable), got " << replicas;
    throw std::invalid_argument(os.str());
  }
}

double wrap_alpha0(double deg) {
  // cos^2(2a) has period 90 degrees.
  double w = std::fmod(deg, 90.0);
  if (w <= -45.0) w += 90.0;
  if (w > 45.0) w -= 90.0;
  return w;
}

}  // namespace

Kind parse_kind(std::string_view s) {
  if (s == "commutator") return Kind::Commutator;
  if (s == "anticommutator") return Kind::Anticommutator;
  throw std::invalid_argument("unknown experiment kind '" + std::string(s) + "'");
}

std::string_view to_string(Kind k) {
  return k == Kind::Commutator ? "commutator" : "anticommutator";
}

Bell program_for(Kind k) { return k == Kind::Commutator ? Bell::PsiMinus : Bell::PhiMinus; }

Op2 analytic_operator(Kind k, const Op2& u) {
  const Op2 z = pauli(Pauli::Z);
  return k == Kind::Commutator ? commutator(z, u) : anticommutator(z, u);
}

CentralOp parse_central_op(std::string_view spec) {
  if (spec == "I" || spec == "X" || spec == "Y" || spec == "Z")
    return CentralOp::matrix(pauli(spec), std::string(spec));
  if (spec == "H" || spec == "XZ") return CentralOp::matrix(hadamard(), "H");
  if (spec == "XY") return CentralOp::matrix(kInvSqrt2 * (pauli(Pauli::X) + pauli(Pauli::Y)), "XY");
  if (spec == "YZ") return CentralOp::matrix(kInvSqrt2 * (pauli(Pauli::Y) + pauli(Pauli::Z)), "YZ");

  double angle = 0.0;
  const char* first = spec.data();
  const char* last = spec.data() + spec.size();
  auto [ptr, ec] = std::from_chars(first, last, angle);
  if (spec.empty() || ec != std::errc() || ptr != last || !std::isfinite(angle))
    throw std::invalid_argument("unknown unitary '" + std::string(spec) +
                                "' (expected I, X, Y, Z, H, XY, YZ or an angle in degrees)");
  return CentralOp::waveplate(angle);
}

std::vector<CentralOp> table_presets(Kind k) {
  std::vector<CentralOp> out;
  const auto names = k == Kind::Commutator ? std::vector<std::string_view>{"X", "YZ", "Y", "XY", "H"}
                                           : std::vector<std::string_view>{"I", "Z", "YZ", "H"};
  for (auto n : names) out.push_back(parse_central_op(n));
  return out;
}

ProcessReport run_process_experiment(Kind kind, const CentralOp& u, const NoiseModel& noise,
                                     const ExperimentOptions& options) {
  noise.validate();
  require_replicas(options.replicas);
  const TomographySettings settings = TomographySettings::standard(options.flux, options.seed);
  const Ket4 program = bell_ket(program_for(kind));

  const Grid6 p_signal = predict_probabilities(
      [&](const Ket2& probe) { return oracle_cascade(probe, program, u, noise).rho_out; }, settings);
  const Grid6 p_calib = predict_probabilities(
      [&](const Ket2& probe) {
        return calibration_cascade(probe, program, u, noise.hwp_offset_deg).rho_out;
      },
      settings);

  ProcessReport r;
  r.u_label = u.label();
  r.kind = kind;
  r.noise = noise;
  r.flux = options.flux;
  r.seed = options.seed;
  r.exact_counts = options.exact_counts;

  if (options.exact_counts) {
    r.signal_counts = expected_counts(p_signal.cwiseMax(0.0), options.flux);
    r.calibration_counts = expected_counts(p_calib.cwiseMax(0.0), options.flux);
  } else {
    r.signal_counts =
        simulate_counts(p_signal, options.flux, derive_seed(options.seed, {stream::kSignal}));
    r.calibration_counts =
        simulate_counts(p_calib, options.flux, derive_seed(options.seed, {stream::kCalibration}));
  }

  const Op2 c_th = analytic_operator(kind, u.resolve(0.0));
  r.chi_th = choi_from_kraus(c_th);
  r.K_th = std::sqrt(0.5 * (c_th.adjoint() * c_th).trace().real());

  const KEstimate k = extract_K(r.signal_counts, r.calibration_counts);
  r.K = k.K;
  r.sigma_K = k.sigma_K;

  if (!(r.signal_counts.total() > 0.0)) {
    r.null_commutator = true;
    r.F = kNaN;
    r.sigma_F = kNaN;
    return r;
  }

  const MleResult mle = mle_reconstruct(r.signal_counts, settings);
  r.mle_iterations = mle.iterations;
  r.chi_unit = mle.chi;
  r.chi = mle.chi.rescaled(2.0 * r.K * r.K);
  r.F = r.chi_th.scale() > 0.0 ? process_fidelity(r.chi_unit, r.chi_th) : kNaN;

  if (options.replicas > 0) {
    const ProcessErrors e =
        bootstrap_errors(r, options.replicas, derive_seed(options.seed, {stream::kBootstrap}));
    r.sigma_F = e.sigma_F;
    r.sigma_K = e.sigma_K;
  }
  if (kind == Kind::Commutator && r.K < 3.0 * r.sigma_K) r.null_commutator = true;
  return r;
}

ProcessErrors bootstrap_errors(const ProcessReport& report, int replicas, std::uint64_t seed) {
  require_replicas(replicas);
  if (replicas == 0 || !(report.signal_counts.total() > 0.0)) return {};

  const TomographySettings settings = TomographySettings::standard(report.flux, report.seed);
  const Grid6 p_hat = predict_probabilities(report.chi_unit, settings).cwiseMax(0.0);
  const Grid6 signal_means = p_hat * (report.signal_counts.total() / p_hat.sum());
  const Grid6& calib_means = report.calibration_counts.counts;
  const bool have_target = report.chi_th.scale() > 0.0;

  std::vector<double> fs, ks;
  fs.reserve(replicas);
  ks.reserve(replicas);
  for (int i = 0; i < replicas; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    const CountTable sig = resample_counts(signal_means, derive_seed(seed, {idx, stream::kSignal}));
    const CountTable cal =
        resample_counts(calib_means, derive_seed(seed, {idx, stream::kCalibration}));
    if (!(cal.total() > 0.0)) continue;
    ks.push_back(extract_K(sig, cal).K);
    if (have_target && sig.total() > 0.0)
      fs.push_back(process_fidelity(mle_reconstruct(sig, settings).chi, report.chi_th));
  }
  return {have_target ? sample_stddev(fs) : kNaN, sample_stddev(ks)};
}

PhaseRelationResult phase_relation_test(const NoiseModel& noise, const ExperimentOptions& options) {
  const complex_t i{0.0, 1.0};
  Ket4 target;  // (|HV> - i|VH>)/sqrt2
  target << 0.0, kInvSqrt2, -i * kInvSqrt2, 0.0;
  Ket4 swapped;
  swapped << 0.0, kInvSqrt2, i * kInvSqrt2, 0.0;

  PhaseRelationResult out;
  ExperimentOptions no_bootstrap = options;
  no_bootstrap.replicas = 0;
  out.report = run_process_experiment(Kind::Commutator, parse_central_op("XY"), noise, no_bootstrap);

  const ChoiMatrix chi_target{projector(target)};
  out.F_target = process_fidelity(out.report.chi_unit, chi_target);
  out.F_swapped = process_fidelity(out.report.chi_unit, ChoiMatrix{projector(swapped)});

  if (options.replicas > 0) {
    // Same resampling as bootstrap_errors, scored against the phase target.
    ProcessReport r = out.report;
    r.chi_th = chi_target;
    const ProcessErrors e =
        bootstrap_errors(r, options.replicas, derive_seed(options.seed, {stream::kBootstrap}));
    // chi_th of [Z, (X+Y)/sqrt2] is proportional to the target projector.
    out.sigma = e.sigma_F;
    out.report.sigma_F = e.sigma_F;
    out.report.sigma_K = e.sigma_K;
  }
  return out;
}

// --- coincidence dips -------------------------------------------------------

double DipFit::curve(double alpha_deg) const {
  const double c = std::cos(2.0 * deg_to_rad(alpha_deg - alpha0_deg));
  return amplitude * c * c + offset;
}

double DipFit::minimum_deg(double lo, double hi) const {
  const double mid = 0.5 * (lo + hi);
  // Minima sit at alpha0 + 45 + 90 n.
  const double n = std::round((mid - alpha0_deg - 45.0) / 90.0);
  return alpha0_deg + 45.0 + 90.0 * n;
}

std::vector<double> alpha_grid(double start, double stop, double step) {
  if (!(step != 0.0) || !std::isfinite(step) || !std::isfinite(start) || !std::isfinite(stop))
    throw std::invalid_argument("alpha grid needs finite start/stop and a non-zero step");
  if ((stop - start) / step < 0.0)
    throw std::invalid_argument("alpha grid step points away from stop");
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

double dip_expected_counts(Bell program, double alpha_deg, const NoiseModel& noise, double flux) {
  const TomographySettings settings = TomographySettings::standard(flux);
  const Ket4 prog = bell_ket(program);
  const CentralOp u = CentralOp::waveplate(alpha_deg);
  double p = 0.0;
  for (const Ket2& probe : settings.probes) p += oracle_cascade(probe, prog, u, noise).p_success;
  return std::max(p, 0.0) * flux * kCountScale;
}

DipScan dip_scan(Bell program, const std::vector<double>& alphas, const NoiseModel& noise,
                 const DipOptions& options) {
  if (alphas.empty()) throw std::invalid_argument("dip scan needs at least one angle");
  if (!(options.flux > 0.0)) throw std::invalid_argument("flux must be positive");
  noise.validate();
  require_replicas(options.replicas);

  DipScan scan;
  scan.program = program;
  scan.alphas = alphas;
  scan.noise = noise;
  scan.flux = options.flux;
  scan.seed = options.seed;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double mean = dip_expected_counts(program, alphas[i], noise, options.flux);
    scan.expected.push_back(mean);
    scan.counts.push_back(options.exact_counts
                              ? mean
                              : draw_poisson(mean, derive_seed(options.seed, {stream::kDip, i})));
  }
  scan.fit = fit_visibility(scan);
  scan.visibility = scan.fit.visibility;
  if (options.replicas > 0)
    scan.sigma_V =
        bootstrap_errors(scan, options.replicas, derive_seed(options.seed, {stream::kBootstrap}));
  return scan;
}

namespace {

// Least squares with the offset pinned at zero: profile over alpha0 on a
// grid, then golden-section refinement around the best grid point.
DipFit fit_without_offset(const std::vector<double>& alphas, const std::vector<double>& y) {
  auto solve = [&](double a0, double* amp) {
    double gy = 0.0, gg = 0.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      const double c = std::cos(2.0 * deg_to_rad(alphas[i] - a0));
      gy += c * c * y[i];
      gg += c * c * c * c;
    }
    *amp = gg > 0.0 ? std::max(gy / gg, 0.0) : 0.0;
    double ss = 0.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      const double c = std::cos(2.0 * deg_to_rad(alphas[i] - a0));
      ss += (y[i] - *amp * c * c) * (y[i] - *amp * c * c);
    }
    return ss;
  };

  double amp = 0.0, best = std::numeric_limits<double>::infinity(), best_a0 = 0.0;
  for (double a0 = -45.0; a0 < 45.0; a0 += 0.5) {
    const double ss = solve(a0, &amp);
    if (ss < best) {
      best = ss;
      best_a0 = a0;
    }
  }
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = best_a0 - 0.5, hi = best_a0 + 0.5;
  for (int it = 0; it < 80; ++it) {
    const double m1 = hi - phi * (hi - lo), m2 = lo + phi * (hi - lo);
    if (solve(m1, &amp) < solve(m2, &amp))
      hi = m2;
    else
      lo = m1;
  }
  DipFit f;
  f.alpha0_deg = wrap_alpha0(0.5 * (lo + hi));
  solve(f.alpha0_deg, &f.amplitude);
  f.offset = 0.0;
  return f;
}

}  // namespace

DipFit fit_visibility(const std::vector<double>& alphas, const std::vector<double>& counts) {
  if (alphas.size() != counts.size()) throw std::invalid_argument("alphas and counts differ in length");
  const std::set<double> distinct(alphas.begin(), alphas.end());
  if (distinct.size() < 5) throw std::invalid_argument("visibility fit needs at least 5 distinct angles");
  if (*distinct.rbegin() - *distinct.begin() < 60.0)
    throw std::invalid_argument("visibility fit needs angles spanning at least 60 degrees");
  const auto [mn, mx] = std::minmax_element(counts.begin(), counts.end());
  if (*mx - *mn <= 1e-12 * std::max(1.0, std::abs(*mx)))
    throw std::invalid_argument("degenerate scan: all counts equal, no dip to fit");

  // a cos^2(2(x - x0)) + b = (b + a/2) + (a/2) cos 4x0 cos 4x + (a/2) sin 4x0 sin 4x,
  // so the unconstrained problem is linear in (c0, c1, c2).
  const auto n = static_cast<Eigen::Index>(alphas.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = 4.0 * deg_to_rad(alphas[i]);
    design(i, 0) = 1.0;
    design(i, 1) = std::cos(x);
    design(i, 2) = std::sin(x);
    y(i) = counts[i];
  }
  const Eigen::Vector3d c = design.colPivHouseholderQr().solve(y);

  DipFit f;
  f.amplitude = 2.0 * std::hypot(c(1), c(2));
  f.alpha0_deg = wrap_alpha0(std::atan2(c(2), c(1)) * 45.0 / EIGEN_PI);
  f.offset = c(0) - 0.5 * f.amplitude;
  if (f.offset < 0.0) f = fit_without_offset(alphas, counts);

  f.visibility = f.amplitude / (f.amplitude + 2.0 * f.offset);
  double ss = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double r = counts[i] - f.curve(alphas[i]);
    ss += r * r;
  }
  f.rms_residual = std::sqrt(ss / static_cast<double>(alphas.size()));
  return f;
}

double bootstrap_errors(const DipScan& scan, int replicas, std::uint64_t seed) {
  require_replicas(replicas);
  std::vector<double> vs;
  vs.reserve(replicas);
  for (int r = 0; r < replicas; ++r) {
    std::vector<double> counts(scan.alphas.size());
    for (std::size_t i = 0; i < scan.alphas.size(); ++i)
      counts[i] = draw_poisson(std::max(scan.fit.curve(scan.alphas[i]), 0.0),
                               derive_seed(seed, {static_cast<std::uint64_t>(r), i}));
    try {
      vs.push_back(fit_visibility(scan.alphas, counts).visibility);
    } catch (const std::invalid_argument&) {
      // a replica with no contrast carries no visibility
    }
  }
  return sample_stddev(vs);
}

NoiseFit fit_noise_to_visibility(Bell program, const std::vector<double>& alphas, double target,
                                 double hwp_offset_deg, double flux) {
  if (!(target > 0.0 && target < 1.0))
    throw std::invalid_argument("target visibility must lie in (0,1)");

  auto visibility_at = [&](double v) {
    std::vector<double> counts;
    counts.reserve(alphas.size());
    for (double a : alphas)
      counts.push_back(dip_expected_counts(program, a, NoiseModel::symmetric(v, hwp_offset_deg), flux));
    return fit_visibility(alphas, counts).visibility;
  };

  // Visibility grows monotonically with the overlap.
  double lo = 1e-3, hi = 1.0;
  if (visibility_at(lo) > target || visibility_at(hi) < target)
    throw std::invalid_argument("target visibility is outside the reachable range");
  NoiseFit out;
  for (out.iterations = 0; out.iterations < 100 && hi - lo > 1e-12; ++out.iterations) {
    const double mid = 0.5 * (lo + hi);
    if (visibility_at(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  out.v = 0.5 * (lo + hi);
  out.visibility = visibility_at(out.v);
  return out;
}

}  // namespace pqp

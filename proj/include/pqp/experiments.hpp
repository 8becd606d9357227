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

// End-to-end experiment drivers: process tomography of the (anti)commutator
// channel with calibration-based normalization, the relative-phase test and
// coincidence-dip scans over the central waveplate angle.

#ifndef PQP_EXPERIMENTS_HPP
#define PQP_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pqp/processor.hpp"
#include "pqp/tomography.hpp"

namespace pqp {

enum class Kind { Commutator, Anticommutator };

Kind parse_kind(std::string_view s);
std::string_view to_string(Kind k);

/// |Psi-> programs the commutator, |Phi-> the anti-commutator.
Bell program_for(Kind k);

/// [Z, U] or {Z, U}.
Op2 analytic_operator(Kind k, const Op2& u);

/// Named unitaries: I, X, Y, Z, H (= XZ), XY = (X+Y)/sqrt2, YZ = (Y+Z)/sqrt2.
/// Any other string must parse as a waveplate angle in degrees.
CentralOp parse_central_op(std::string_view spec);

/// Rows of the commutator and anti-commutator tables, in table order.
std::vector<CentralOp> table_presets(Kind k);

struct ExperimentOptions {
  double flux = 1e5;
  std::uint64_t seed = 1;
  int replicas = 200;  // 0 disables bootstrap
  bool exact_counts = false;
};

struct ProcessReport {
  std::string u_label;
  Kind kind = Kind::Commutator;
  double F = 0.0;
  double sigma_F = 0.0;
  double K = 0.0;
  double sigma_K = 0.0;
  double K_th = 0.0;
  bool null_commutator = false;
  ChoiMatrix chi;       // rescaled to Tr = 2 K^2
  ChoiMatrix chi_unit;  // MLE output, unit trace
  ChoiMatrix chi_th;
  NoiseModel noise;
  double flux = 0.0;
  std::uint64_t seed = 0;
  bool exact_counts = false;
  CountTable signal_counts;
  CountTable calibration_counts;
  int mle_iterations = 0;
};

ProcessReport run_process_experiment(Kind kind, const CentralOp& u, const NoiseModel& noise,
                                     const ExperimentOptions& options);

struct ProcessErrors {
  double sigma_F = 0.0;
  double sigma_K = 0.0;
};

/// Parametric bootstrap around a finished report: signal counts are redrawn
/// from the reconstructed channel, calibration counts from the observed ones.
ProcessErrors bootstrap_errors(const ProcessReport& report, int replicas, std::uint64_t seed);

struct PhaseRelationResult {
  double F_target = 0.0;
  double sigma = 0.0;
  double F_swapped = 0.0;  // against the orthogonal (|HV> + i|VH>)/sqrt2
  ProcessReport report;
};

PhaseRelationResult phase_relation_test(const NoiseModel& noise, const ExperimentOptions& options);

// --- coincidence dips -------------------------------------------------------

/// counts(alpha) ~ amplitude * cos^2(2 (alpha - alpha0)) + offset
struct DipFit {
  double amplitude = 0.0;
  double offset = 0.0;
  double alpha0_deg = 0.0;  // in (-45, 45]
  double visibility = 0.0;
  double rms_residual = 0.0;

  double curve(double alpha_deg) const;
  /// Location of the fitted minimum closest to the middle of [lo, hi].
  double minimum_deg(double lo, double hi) const;
};

struct DipScan {
  Bell program = Bell::PhiMinus;
  std::vector<double> alphas;
  std::vector<double> counts;
  std::vector<double> expected;
  DipFit fit;
  double visibility = 0.0;
  double sigma_V = 0.0;
  NoiseModel noise;
  double flux = 0.0;
  std::uint64_t seed = 0;
};

struct DipOptions {
  double flux = 1e5;
  std::uint64_t seed = 1;
  int replicas = 200;
  bool exact_counts = false;
};

std::vector<double> alpha_grid(double start, double stop, double step);

/// Mean four-photon coincidences at one waveplate angle, summed over the six
/// probe states.
double dip_expected_counts(Bell program, double alpha_deg, const NoiseModel& noise, double flux);

DipScan dip_scan(Bell program, const std::vector<double>& alphas, const NoiseModel& noise,
                 const DipOptions& options);

DipFit fit_visibility(const std::vector<double>& alphas, const std::vector<double>& counts);
inline DipFit fit_visibility(const DipScan& scan) { return fit_visibility(scan.alphas, scan.counts); }

double bootstrap_errors(const DipScan& scan, int replicas, std::uint64_t seed);

struct NoiseFit {
  double v = 1.0;
  double visibility = 1.0;  // fitted visibility of the expected-count scan at v
  int iterations = 0;
};

/// Finds the shared overlap v1 = v2 = v whose expected-count scan has the
/// target fitted visibility.
NoiseFit fit_noise_to_visibility(Bell program, const std::vector<double>& alphas, double target,
                                 double hwp_offset_deg = 0.0, double flux = 1e5);

}  // namespace pqp

#endif  // PQP_EXPERIMENTS_HPP

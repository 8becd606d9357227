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

#ifndef PQP_TOMOGRAPHY_HPP
#define PQP_TOMOGRAPHY_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "pqp/algebra.hpp"
#include "pqp/processor.hpp"

namespace pqp {

inline constexpr int kSettings = 6;

/// probe (row) x measurement outcome (column)
using Grid6 = Eigen::Matrix<double, kSettings, kSettings, Eigen::RowMajor>;

/// Six probe states H, V, D, A, R, L and the matching six rank-1 outcome
/// projectors, grouped in the three bases H/V, D/A, R/L.
struct TomographySettings {
  std::array<Ket2, kSettings> probes;
  std::array<Op2, kSettings> outcomes;
  double flux = 1e5;
  std::uint64_t seed = 1;

  static TomographySettings standard(double flux = 1e5, std::uint64_t seed = 1);

  Op2 probe_density(int j) const { return projector(probes[j]); }
  /// Pi_k (x) rho_j^T, the Choi-space effect of setting (j, k).
  Op4 effect(int j, int k) const;
};

/// Coincidence counts per (probe, outcome). Simulated tables hold integers;
/// expected-count tables hold their real-valued means.
struct CountTable {
  Grid6 counts = Grid6::Zero();
  double flux = 0.0;
  std::uint64_t seed = 0;

  double total() const { return counts.sum(); }
};

/// Choi matrix in (output (x) input) order.
struct ChoiMatrix {
  Op4 matrix = Op4::Zero();

  double scale() const { return matrix.trace().real(); }
  ChoiMatrix rescaled(double trace) const;
};

ChoiMatrix choi_from_kraus(const Op2& kraus);

Grid6 predict_probabilities(const KrausChannel& channel, const TomographySettings& settings);
Grid6 predict_probabilities(const ChoiMatrix& chi, const TomographySettings& settings);
/// Probabilities from an arbitrary per-probe simulation returning the
/// unnormalized conditional output state.
Grid6 predict_probabilities(const std::function<Op2(const Ket2&)>& output_for_probe,
                            const TomographySettings& settings);

/// Mean count for probability p is flux * p * 16, so a calibration setting
/// with success probability 1/16 has mean `flux`.
inline constexpr double kCountScale = 16.0;

CountTable expected_counts(const Grid6& p, double flux);
CountTable simulate_counts(const Grid6& p, double flux, std::uint64_t seed);
/// Poisson draw with the given per-entry means.
CountTable resample_counts(const Grid6& means, std::uint64_t seed);

struct MleOptions {
  int max_iterations = 100000;
  double tolerance = 1e-10;
  double dilution = 0.1;
  double probability_floor = 1e-12;
  bool record_likelihood = false;
};

struct MleResult {
  ChoiMatrix chi;  // unit trace
  int iterations = 0;
  bool converged = false;
  std::vector<double> log_likelihood;  // per accepted iteration, when recorded
};

MleResult mle_reconstruct(const CountTable& counts, const TomographySettings& settings,
                          const MleOptions& options = {}, const Op4* start = nullptr);

double log_likelihood(const CountTable& counts, const TomographySettings& settings,
                      const Op4& chi);

struct KEstimate {
  double K = 0.0;
  double sigma_K = 0.0;
};

/// K = sqrt(2 N_signal / N_calibration) over the 36-setting grand totals.
KEstimate extract_K(const CountTable& signal, const CountTable& calibration);

/// Tr[chi chi_th] / (Tr chi Tr chi_th).
double process_fidelity(const ChoiMatrix& chi, const ChoiMatrix& chi_th);

}  // namespace pqp

#endif  // PQP_TOMOGRAPHY_HPP

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

// Linear-optical model of the programmable gate and of the two-gate cascade.
//
// A single gate is a PBS on which the signal photon and one program photon
// interfere, followed by projection of the program output onto |D>. The
// cascade runs gate 1, the central unitary U on the signal and gate 2. With
// the program pair in |Psi-> the signal undergoes -[Z,U]/(4 sqrt 2); with
// |Phi-> it undergoes {Z,U}/(4 sqrt 2).

#ifndef PQP_PROCESSOR_HPP
#define PQP_PROCESSOR_HPP

#include <string>
#include <variant>

#include "pqp/algebra.hpp"

namespace pqp {

/// Interference overlap at each PBS and the central waveplate miscalibration.
struct NoiseModel {
  double v1 = 1.0;
  double v2 = 1.0;
  double hwp_offset_deg = 0.0;

  static NoiseModel ideal() { return {}; }
  static NoiseModel distinguishable() { return {0.0, 0.0, 0.0}; }
  static NoiseModel symmetric(double v, double hwp_offset_deg = 0.0) {
    return {v, v, hwp_offset_deg};
  }

  void validate() const;
};

struct KrausChannel {
  Op2 kraus = Op2::Zero();

  Op2 apply(const Op2& rho) const { return kraus * rho * kraus.adjoint(); }
  double success_probability(const Op2& rho) const { return apply(rho).trace().real(); }
  double largest_singular_value() const;
};

/// The transformation applied to the signal between the two gates. Either an
/// explicit matrix or a half-wave plate angle; only the latter is affected
/// by NoiseModel::hwp_offset_deg.
class CentralOp {
 public:
  static CentralOp matrix(const Op2& u, std::string label = "U");
  static CentralOp waveplate(double alpha_deg);

  Op2 resolve(double hwp_offset_deg = 0.0) const;
  const std::string& label() const { return label_; }
  bool is_waveplate() const { return std::holds_alternative<double>(value_); }

 private:
  CentralOp(std::variant<Op2, double> v, std::string label)
      : value_(std::move(v)), label_(std::move(label)) {}

  std::variant<Op2, double> value_;
  std::string label_;
};

struct CascadeOutcome {
  Op2 rho_out = Op2::Zero();  // unnormalized conditional signal state
  double p_success = 0.0;
};

KrausChannel single_gate_kraus(const Ket2& program);

/// (1/4) sum_pq c_pq O_q M O_p in the D/A program basis, for an arbitrary
/// 2x2 matrix M. Linear in M; no unitarity check.
Op2 cascade_operator(const Ket4& program, const Op2& m);

KrausChannel cascade_kraus(const Ket4& program, const Op2& u);

/// PBS coincidence post-selection on a (signal, program) pair: projection on
/// span{|HH>, |VV>} with the |HH><VV| coherences scaled by `v`.
Op4 pbs_postselect_map(const Op4& joint, double v);

/// Full density-matrix simulation of the cascade on the three-photon register.
CascadeOutcome oracle_cascade(const Op2& rho_signal, const Ket4& program, const CentralOp& u,
                              const NoiseModel& noise);
CascadeOutcome oracle_cascade(const Ket2& signal, const Ket4& program, const CentralOp& u,
                              const NoiseModel& noise);

/// Reference run with temporally delayed (distinguishable) photons.
CascadeOutcome calibration_cascade(const Ket2& signal, const Ket4& program, const CentralOp& u,
                                   double hwp_offset_deg = 0.0);
CascadeOutcome calibration_cascade(const Op2& rho_signal, const Ket4& program,
                                   const CentralOp& u, double hwp_offset_deg = 0.0);

namespace detail {
// Single gate acting on register slot `program_slot` (1 or 2) of the
// (signal, program 1, program 2) register. `program_marginal` is the state
// the program photon was prepared in; it feeds the distinguishable branch.
Op8 apply_gate(const Op8& reg, int program_slot, double v, const Op2& program_marginal);
}  // namespace detail

}  // namespace pqp

#endif  // PQP_PROCESSOR_HPP

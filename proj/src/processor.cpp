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

#include "pqp/processor.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace pqp {

namespace {

constexpr double kNormTol = 1e-9;

void require_normalized(double norm, const char* what) {
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kNormTol) {
    std::ostringstream os;
    os << what << " is not normalized (norm " << norm << ")";
    throw std::invalid_argument(os.str());
  }
}

void require_overlap(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << name << " must lie in [0,1], got " << v;
    throw std::invalid_argument(os.str());
  }
}

Op2 basis_projector(int s) {
  Op2 p = Op2::Zero();
  p(s, s) = 1.0;
  return p;
}

// |H><t| on one photon.
Op2 reset_to_h(int t) {
  Op2 p = Op2::Zero();
  p(0, t) = 1.0;
  return p;
}

// Embeds (signal op) x (program op) into the 8-dim register with the other
// program photon untouched.
Op8 embed(const Op2& signal_op, const Op2& program_op, int program_slot) {
  const Op2 id = Op2::Identity();
  if (program_slot == 1) return tensor(tensor(signal_op, program_op), id);
  return tensor(tensor(signal_op, id), program_op);
}

Op2 program_marginal(const Ket4& program, int slot) {
  Op2 m = Op2::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        const int ia = slot == 1 ? 2 * a + c : 2 * c + a;
        const int ib = slot == 1 ? 2 * b + c : 2 * c + b;
        m(a, b) += program(ia) * std::conj(program(ib));
      }
  return m;
}

}  // namespace

void NoiseModel::validate() const {
  require_overlap(v1, "v1");
  require_overlap(v2, "v2");
  if (!std::isfinite(hwp_offset_deg)) throw std::invalid_argument("hwp_offset must be finite");
}

double KrausChannel::largest_singular_value() const {
  Eigen::JacobiSVD<Op2> svd(kraus);
  return svd.singularValues()(0);
}

CentralOp CentralOp::matrix(const Op2& u, std::string label) {
  return CentralOp(u, std::move(label));
}

CentralOp CentralOp::waveplate(double alpha_deg) {
  if (!std::isfinite(alpha_deg)) throw std::invalid_argument("waveplate angle must be finite");
  std::ostringstream os;
  os << "hwp(" << alpha_deg << ")";
  return CentralOp(alpha_deg, os.str());
}

Op2 CentralOp::resolve(double hwp_offset_deg) const {
  if (const auto* angle = std::get_if<double>(&value_)) return hwp_unitary(*angle + hwp_offset_deg);
  return std::get<Op2>(value_);
}

KrausChannel single_gate_kraus(const Ket2& program) {
  require_normalized(program.norm(), "program state");
  const complex_t a = polarization_ket(Polarization::D).dot(program);
  const complex_t b = polarization_ket(Polarization::A).dot(program);
  return {0.5 * (a * pauli(Pauli::I) + b * pauli(Pauli::Z))};
}

Op2 cascade_operator(const Ket4& program, const Op2& m) {
  const std::array<Ket2, 2> basis = {polarization_ket(Polarization::D),
                                     polarization_ket(Polarization::A)};
  const std::array<Op2, 2> ops = {pauli(Pauli::I), pauli(Pauli::Z)};
  Op2 out = Op2::Zero();
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) {
      const complex_t c = tensor(basis[p], basis[q]).dot(program);
      out += c * ops[q] * m * ops[p];
    }
  return 0.25 * out;
}

KrausChannel cascade_kraus(const Ket4& program, const Op2& u) {
  require_normalized(program.norm(), "program state");
  if (!is_unitary(u, kNormTol)) throw std::invalid_argument("central operation is not unitary");
  return {cascade_operator(program, u)};
}

Op4 pbs_postselect_map(const Op4& joint, double v) {
  require_overlap(v, "v");
  Op4 out = Op4::Zero();
  // |HH> is index 0, |VV> is index 3.
  out(0, 0) = joint(0, 0);
  out(3, 3) = joint(3, 3);
  out(0, 3) = v * joint(0, 3);
  out(3, 0) = v * joint(3, 0);
  return out;
}

namespace detail {

Op8 apply_gate(const Op8& reg, int program_slot, double v, const Op2& marginal) {
  Op8 out = Op8::Zero();
  if (v > 0.0) {
    // Parity projection, then the program photon is projected onto |D> and
    // its slot reset to |H> so the register keeps a fixed shape.
    Op8 parity = embed(basis_projector(0), basis_projector(0), program_slot) +
                 embed(basis_projector(1), basis_projector(1), program_slot);
    const Op2 to_d = reset_to_h(0) * std::sqrt(0.5) + reset_to_h(1) * std::sqrt(0.5);
    const Op8 a = embed(Op2::Identity(), to_d, program_slot) * parity;
    out += v * (a * reg * a.adjoint());
  }
  if (v < 1.0) {
    // Distinguishable photons: a dephased parity check against an
    // independent program photon in its prepared state.
    for (int s = 0; s < 2; ++s) {
      const double weight = 0.5 * marginal(s, s).real();
      if (weight == 0.0) continue;
      for (int t = 0; t < 2; ++t) {
        const Op8 b = embed(basis_projector(s), reset_to_h(t), program_slot);
        out += ((1.0 - v) * weight) * (b * reg * b.adjoint());
      }
    }
  }
  return out;
}

}  // namespace detail

CascadeOutcome oracle_cascade(const Op2& rho_signal, const Ket4& program, const CentralOp& u,
                              const NoiseModel& noise) {
  noise.validate();
  require_normalized(program.norm(), "program state");
  const Op2 central = u.resolve(noise.hwp_offset_deg);
  if (!is_unitary(central, kNormTol)) throw std::invalid_argument("central operation is not unitary");

  Op8 reg = tensor(rho_signal, projector(program));
  reg = detail::apply_gate(reg, 1, noise.v1, program_marginal(program, 1));
  const Op8 u_full = tensor(central, Op4::Identity().eval());
  reg = u_full * reg * u_full.adjoint();
  reg = detail::apply_gate(reg, 2, noise.v2, program_marginal(program, 2));

  CascadeOutcome out;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      for (int q = 0; q < 4; ++q) out.rho_out(s, t) += reg(4 * s + q, 4 * t + q);
  out.p_success = out.rho_out.trace().real();
  return out;
}

CascadeOutcome oracle_cascade(const Ket2& signal, const Ket4& program, const CentralOp& u,
                              const NoiseModel& noise) {
  require_normalized(signal.norm(), "signal state");
  return oracle_cascade(projector(signal), program, u, noise);
}

CascadeOutcome calibration_cascade(const Ket2& signal, const Ket4& program, const CentralOp& u,
                                   double hwp_offset_deg) {
  return oracle_cascade(signal, program, u, {0.0, 0.0, hwp_offset_deg});
}

CascadeOutcome calibration_cascade(const Op2& rho_signal, const Ket4& program,
                                   const CentralOp& u, double hwp_offset_deg) {
  return oracle_cascade(rho_signal, program, u, {0.0, 0.0, hwp_offset_deg});
}

}  // namespace pqp

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

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "pqp/experiments.hpp"
#include "support.hpp"

namespace pqp {
namespace {

const double kSqrt2 = std::sqrt(2.0);

Ket2 pol(Polarization p) { return polarization_ket(p); }

oracle::V4 to_v4(const Ket4& k) { return {k(0), k(1), k(2), k(3)}; }

// The nine table cases as (program, U).
std::vector<std::pair<Kind, CentralOp>> table_cases() {
  std::vector<std::pair<Kind, CentralOp>> out;
  for (Kind k : {Kind::Commutator, Kind::Anticommutator})
    for (const CentralOp& u : table_presets(k)) out.emplace_back(k, u);
  return out;
}

std::vector<Op2> density_basis() {
  return {projector(pol(Polarization::H)), projector(pol(Polarization::V)),
          projector(pol(Polarization::D)), projector(pol(Polarization::R))};
}

TEST(SingleGate, DiagonalPrograms) {
  EXPECT_LT(max_abs_diff(single_gate_kraus(pol(Polarization::D)).kraus, Op2::Identity() / 2.0),
            1e-15);
  EXPECT_LT(max_abs_diff(single_gate_kraus(pol(Polarization::A)).kraus, pauli(Pauli::Z) / 2.0),
            1e-15);
  const Op2 h_kraus = (Op2::Identity() + pauli(Pauli::Z)) / (2.0 * kSqrt2);
  EXPECT_LT(max_abs_diff(single_gate_kraus(pol(Polarization::H)).kraus, h_kraus), 1e-15);
}

TEST(SingleGate, HProgramMatchesRegisterSimulation) {
  // Gate 1 programmed with |H>, gate 2 with |D> (identity), U = I.
  const Ket4 prog = tensor(pol(Polarization::H), pol(Polarization::D));
  const Op2 k = single_gate_kraus(pol(Polarization::H)).kraus / 2.0;
  gen::Gen g(21);
  for (int t = 0; t < 10; ++t) {
    const Ket2 s = g.ket();
    const auto out = oracle_cascade(s, prog, CentralOp::matrix(Op2::Identity()), NoiseModel::ideal());
    EXPECT_LT(max_abs_diff(out.rho_out, Op2(k * projector(s) * k.adjoint())), 1e-14);
  }
}

TEST(SingleGate, SuccessProbabilityIsAQuarter) {
  gen::Gen g(22);
  for (Polarization p : {Polarization::D, Polarization::A}) {
    const KrausChannel ch = single_gate_kraus(pol(p));
    for (int t = 0; t < 100; ++t)
      EXPECT_NEAR(ch.success_probability(g.density()), 0.25, 1e-12);
  }
}

TEST(SingleGate, RejectsUnnormalizedProgram) {
  EXPECT_THROW(single_gate_kraus(Ket2(1.0, 1.0)), std::invalid_argument);
  EXPECT_NO_THROW(single_gate_kraus(Ket2(1.0 + 1e-10, 0.0)));
}

TEST(Cascade, NamedExamples) {
  const Op2 X = pauli(Pauli::X), Z = pauli(Pauli::Z);
  const auto c = cascade_kraus(bell_ket(Bell::PsiMinus), X);
  const Op2 expected = commutator(Z, X) / (4.0 * kSqrt2);
  EXPECT_LT(std::min(max_abs_diff(c.kraus, expected), max_abs_diff(c.kraus, Op2(-expected))), 1e-15);

  const auto a = cascade_kraus(bell_ket(Bell::PhiMinus), Z);
  const Op2 i_over = Op2::Identity() / (2.0 * kSqrt2);
  EXPECT_LT(std::min(max_abs_diff(a.kraus, i_over), max_abs_diff(a.kraus, Op2(-i_over))), 1e-15);

  gen::Gen g(23);
  const Ket4 dd = tensor(pol(Polarization::D), pol(Polarization::D));
  for (int t = 0; t < 10; ++t) {
    const Op2 u = g.unitary();
    EXPECT_LT(max_abs_diff(cascade_kraus(dd, u).kraus, Op2(u / 4.0)), 1e-15);
  }
}

TEST(Cascade, MatchesAmplitudeOracleOnRandomInputs) {
  gen::Gen g(24);
  for (int t = 0; t < 200; ++t) {
    const Ket4 prog = g.ket4();
    const Op2 u = g.unitary();
    const Op2 ref = oracle::to_eigen(oracle::ideal_cascade_kraus(to_v4(prog), oracle::from_eigen(u)));
    const Op2 k = cascade_kraus(prog, u).kraus;
    const Op2 rho = g.density();
    EXPECT_LT(max_abs_diff(Op2(k * rho * k.adjoint()), Op2(ref * rho * ref.adjoint())), 1e-14);
  }
}

TEST(Cascade, CommutatorAndAnticommutatorChannels) {
  gen::Gen g(25);
  const Op2 Z = pauli(Pauli::Z);
  for (int t = 0; t < 50; ++t) {
    const Op2 u = g.unitary(), rho = g.density();
    const Op2 c = commutator(Z, u) / (4.0 * kSqrt2), a = anticommutator(Z, u) / (4.0 * kSqrt2);
    const KrausChannel kc = cascade_kraus(bell_ket(Bell::PsiMinus), u);
    const KrausChannel ka = cascade_kraus(bell_ket(Bell::PhiMinus), u);
    EXPECT_LT(max_abs_diff(kc.apply(rho), Op2(c * rho * c.adjoint())), 1e-14);
    EXPECT_LT(max_abs_diff(ka.apply(rho), Op2(a * rho * a.adjoint())), 1e-14);
    EXPECT_LE(kc.largest_singular_value(), 1.0 + 1e-12);
    EXPECT_LE(ka.largest_singular_value(), 1.0 + 1e-12);
  }
}

TEST(Cascade, RejectsNonUnitary) {
  EXPECT_THROW(cascade_kraus(bell_ket(Bell::PsiMinus), Op2(2.0 * pauli(Pauli::X))),
               std::invalid_argument);
  EXPECT_THROW(cascade_kraus(Ket4(1, 1, 0, 0), pauli(Pauli::X)), std::invalid_argument);
}

TEST(Cascade, LinearInCentralMatrix) {
  gen::Gen g(26);
  for (int t = 0; t < 20; ++t) {
    const Ket4 prog = g.ket4();
    const Op2 m1 = g.matrix(), m2 = g.matrix();
    const complex_t a = g.cnormal(), b = g.cnormal();
    const Op2 lhs = cascade_operator(prog, a * m1 + b * m2);
    const Op2 rhs = a * cascade_operator(prog, m1) + b * cascade_operator(prog, m2);
    EXPECT_LT(max_abs_diff(lhs, rhs), 1e-14);
  }
}

TEST(Cascade, GlobalPhaseUnobservable) {
  gen::Gen g(27);
  const KrausChannel k = cascade_kraus(bell_ket(Bell::PsiMinus), g.unitary());
  for (int t = 0; t < 20; ++t) {
    KrausChannel kp{std::polar(1.0, g.uniform(0.0, 2 * oracle::kPi)) * k.kraus};
    const Op2 rho = g.density();
    EXPECT_LT(max_abs_diff(k.apply(rho), kp.apply(rho)), 1e-15);
  }
}

TEST(PbsPostselect, ExamplesAndOracle) {
  const Ket2 h = pol(Polarization::H), v = pol(Polarization::V);
  const Op4 hh = projector(Ket4(tensor(h, h)));
  EXPECT_LT(max_abs_diff(pbs_postselect_map(hh, 1.0), hh), 1e-16);
  const Op4 hv = projector(Ket4(tensor(h, v)));
  gen::Gen g(28);
  EXPECT_EQ(pbs_postselect_map(hv, g.uniform()).cwiseAbs().maxCoeff(), 0.0);

  Op4 mixed = Op4::Zero();
  mixed(0, 0) = mixed(3, 3) = 0.5;
  EXPECT_LT(max_abs_diff(pbs_postselect_map(projector(bell_ket(Bell::PhiPlus)), 0.0), mixed), 1e-15);

  for (int t = 0; t < 50; ++t) {
    const Op4 rho = g.density4();
    const double vis = g.uniform();
    oracle::M4 o{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) o[i][j] = rho(i, j);
    EXPECT_LT(max_abs_diff(pbs_postselect_map(rho, vis), oracle::to_eigen(oracle::pbs_postselect(o, vis))),
              1e-16);
  }
}

TEST(PbsPostselect, RejectsOverlapOutsideUnitInterval) {
  EXPECT_THROW(pbs_postselect_map(Op4::Identity() / 4.0, 1.2), std::invalid_argument);
  EXPECT_THROW(pbs_postselect_map(Op4::Identity() / 4.0, -0.1), std::invalid_argument);
}

TEST(Oracle, IdealEqualsKrausForTableCases) {
  for (const auto& [kind, u] : table_cases()) {
    const Ket4 prog = bell_ket(program_for(kind));
    const KrausChannel k = cascade_kraus(prog, u.resolve());
    for (const Op2& rho : density_basis()) {
      const auto out = oracle_cascade(rho, prog, u, NoiseModel::ideal());
      EXPECT_LT(max_abs_diff(out.rho_out, k.apply(rho)), 1e-12) << u.label();
      EXPECT_NEAR(out.p_success, k.success_probability(rho), 1e-12);
    }
  }
}

TEST(Oracle, IdealEqualsKrausOnRandomSignals) {
  gen::Gen g(29);
  for (int t = 0; t < 50; ++t) {
    const Ket2 s = g.ket();
    const Op2 u = g.unitary();
    const Ket4 prog = g.ket4();
    const auto out = oracle_cascade(s, prog, CentralOp::matrix(u), NoiseModel::ideal());
    EXPECT_LT(max_abs_diff(out.rho_out, cascade_kraus(prog, u).apply(projector(s))), 1e-12);
  }
}

TEST(Oracle, DistinguishableSuccessIsOneSixteenth) {
  gen::Gen g(30);
  for (int t = 0; t < 100; ++t) {
    const auto out = oracle_cascade(g.density(), bell_ket(g.bell()), CentralOp::matrix(g.unitary()),
                                    NoiseModel::distinguishable());
    EXPECT_NEAR(out.p_success, 1.0 / 16.0, 1e-12);
  }
}

TEST(Oracle, NullCoincidenceForPhiMinusAndX) {
  gen::Gen g(31);
  for (int t = 0; t < 20; ++t) {
    const auto out = oracle_cascade(g.ket(), bell_ket(Bell::PhiMinus),
                                    CentralOp::matrix(pauli(Pauli::X)), NoiseModel::ideal());
    EXPECT_LT(std::abs(out.p_success), 1e-15);
    EXPECT_LT(out.rho_out.cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Oracle, BilinearInOverlaps) {
  gen::Gen g(32);
  for (int t = 0; t < 30; ++t) {
    const Op2 rho = g.density();
    const Ket4 prog = bell_ket(g.bell());
    const CentralOp u = CentralOp::matrix(g.unitary());
    const double v1 = g.uniform(), v2 = g.uniform();
    auto run = [&](double a, double b) { return oracle_cascade(rho, prog, u, {a, b, 0.0}).rho_out; };
    const Op2 mix = v1 * v2 * run(1, 1) + v1 * (1 - v2) * run(1, 0) + (1 - v1) * v2 * run(0, 1) +
                    (1 - v1) * (1 - v2) * run(0, 0);
    EXPECT_LT(max_abs_diff(run(v1, v2), mix), 1e-14);
  }
}

TEST(Oracle, OutputIsPositive) {
  gen::Gen g(33);
  for (int t = 0; t < 50; ++t) {
    const NoiseModel n{g.uniform(), g.uniform(), g.uniform(-5.0, 5.0)};
    const auto out = oracle_cascade(g.density(), g.ket4(), CentralOp::waveplate(g.uniform(-90, 90)), n);
    EXPECT_TRUE(is_psd(out.rho_out, 1e-14));
    EXPECT_NEAR(out.p_success, out.rho_out.trace().real(), 1e-15);
  }
}

TEST(Oracle, PhiMinusXCoincidencesGrowWithDistinguishability) {
  double last = -1.0;
  for (int i = 0; i <= 10; ++i) {
    const double v = 1.0 - 0.1 * i;
    const auto out = oracle_cascade(pol(Polarization::D), bell_ket(Bell::PhiMinus),
                                    CentralOp::matrix(pauli(Pauli::X)), NoiseModel::symmetric(v));
    EXPECT_GE(out.p_success, last - 1e-15);
    last = out.p_success;
  }
}

TEST(Calibration, SuccessAndDephasing) {
  gen::Gen g(34);
  for (Bell b : {Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus}) {
    const auto out = calibration_cascade(pol(Polarization::H), bell_ket(b), CentralOp::matrix(g.unitary()));
    EXPECT_NEAR(out.p_success, 1.0 / 16.0, 1e-12);
  }
  const CentralOp id = CentralOp::matrix(Op2::Identity(), "I");
  const auto h = calibration_cascade(pol(Polarization::H), bell_ket(Bell::PsiMinus), id);
  EXPECT_LT(max_abs_diff(Op2(h.rho_out / h.p_success), projector(pol(Polarization::H))), 1e-14);
  const auto d = calibration_cascade(pol(Polarization::D), bell_ket(Bell::PsiMinus), id);
  EXPECT_LT(max_abs_diff(Op2(d.rho_out / d.p_success), Op2(Op2::Identity() / 2.0)), 1e-14);
}

TEST(Calibration, EqualsOracleAtZeroOverlap) {
  gen::Gen g(35);
  for (int t = 0; t < 20; ++t) {
    const Ket2 s = g.ket();
    const Ket4 p = bell_ket(g.bell());
    const CentralOp u = CentralOp::waveplate(g.uniform(0, 90));
    const double off = g.uniform(-3, 3);
    const auto a = calibration_cascade(s, p, u, off);
    const auto b = oracle_cascade(s, p, u, {0.0, 0.0, off});
    EXPECT_LT(max_abs_diff(a.rho_out, b.rho_out), 1e-16);
  }
}

TEST(CentralOp, OffsetOnlyMovesWaveplates) {
  EXPECT_LT(max_abs_diff(CentralOp::waveplate(40.0).resolve(5.0), hwp_unitary(45.0)), 1e-15);
  const Op2 y = pauli(Pauli::Y);
  EXPECT_EQ(max_abs_diff(CentralOp::matrix(y, "Y").resolve(5.0), y), 0.0);
  EXPECT_TRUE(CentralOp::waveplate(1.0).is_waveplate());
  EXPECT_FALSE(CentralOp::matrix(y).is_waveplate());
}

TEST(NoiseModelValidation, RejectsOutOfRange) {
  EXPECT_NO_THROW(NoiseModel::ideal().validate());
  EXPECT_NO_THROW(NoiseModel::distinguishable().validate());
  EXPECT_THROW((NoiseModel{1.1, 1.0, 0.0}.validate()), std::invalid_argument);
  EXPECT_THROW((NoiseModel{1.0, -0.5, 0.0}.validate()), std::invalid_argument);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW((NoiseModel{nan, 1.0, 0.0}.validate()), std::invalid_argument);
  EXPECT_THROW((NoiseModel{1.0, 1.0, std::numeric_limits<double>::infinity()}.validate()),
               std::invalid_argument);
}

}  // namespace
}  // namespace pqp

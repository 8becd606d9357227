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

// Test-only reference implementations and random generators.
//
// The oracles below are written against plain std::complex arrays with
// explicit index loops so that they share no code path with the library.

#ifndef PQP_TESTS_SUPPORT_HPP
#define PQP_TESTS_SUPPORT_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "pqp/algebra.hpp"

namespace oracle {

using C = std::complex<double>;
using M2 = std::array<std::array<C, 2>, 2>;
using M4 = std::array<std::array<C, 4>, 4>;
using V2 = std::array<C, 2>;
using V4 = std::array<C, 4>;

inline constexpr double kPi = 3.14159265358979323846;
inline const C kI{0.0, 1.0};

inline M2 from_eigen(const pqp::Op2& m) {
  M2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = m(i, j);
  return r;
}

inline pqp::Op2 to_eigen(const M2& m) {
  pqp::Op2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = m[i][j];
  return r;
}

inline pqp::Op4 to_eigen(const M4& m) {
  pqp::Op4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = m[i][j];
  return r;
}

inline M2 mul(const M2& a, const M2& b) {
  M2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline M2 dagger(const M2& a) {
  M2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = std::conj(a[j][i]);
  return r;
}

inline M2 lincomb(C x, const M2& a, C y, const M2& b) {
  M2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = x * a[i][j] + y * b[i][j];
  return r;
}

inline M2 pauli_x() { return {{{0.0, 1.0}, {1.0, 0.0}}}; }
inline M2 pauli_y() { return {{{0.0, -kI}, {kI, 0.0}}}; }
inline M2 pauli_z() { return {{{1.0, 0.0}, {0.0, -1.0}}}; }
inline M2 identity() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }

/// Post-selected cascade written out amplitude by amplitude. The program pair
/// amplitude prog[2*p1 + p2] survives the two parity checks only when p1
/// matches the signal before U and p2 matches it after; each program output
/// projected on |D> contributes 1/sqrt2. That leaves
///   K[s', s] = U[s', s] * prog[2*s + s'] / 2.
inline M2 ideal_cascade_kraus(const V4& prog, const M2& u) {
  M2 k{};
  for (int sp = 0; sp < 2; ++sp)
    for (int s = 0; s < 2; ++s) k[sp][s] = u[sp][s] * prog[2 * s + sp] / 2.0;
  return k;
}

/// Choi matrix sum_ij K|i><j|K^dag (x) |i><j|, output index slow.
inline M4 choi(const M2& k) {
  M4 r{};
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 2; ++i)
      for (int b = 0; b < 2; ++b)
        for (int j = 0; j < 2; ++j) r[2 * a + i][2 * b + j] = k[a][i] * std::conj(k[b][j]);
  return r;
}

/// Tr[K rho K^dag Pi] for pure probe and outcome kets.
inline double click_probability(const M2& k, const V2& probe, const V2& outcome) {
  C amp = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 2; ++i) amp += std::conj(outcome[a]) * k[a][i] * probe[i];
  return std::norm(amp);
}

inline std::array<V2, 6> probe_kets() {
  const double s = 1.0 / std::sqrt(2.0);
  return {V2{1.0, 0.0}, V2{0.0, 1.0}, V2{s, s}, V2{s, -s}, V2{s, s * kI}, V2{s, -s * kI}};
}

/// PBS post-selection by hand: keep the |HH>,|VV> block, damp its coherences.
inline M4 pbs_postselect(const M4& joint, double v) {
  M4 r{};
  for (int i : {0, 3})
    for (int j : {0, 3}) r[i][j] = joint[i][j] * (i == j ? 1.0 : v);
  return r;
}

inline double trace_fidelity(const M4& a, const M4& b) {
  C ab = 0.0, ta = 0.0, tb = 0.0;
  for (int i = 0; i < 4; ++i) {
    ta += a[i][i];
    tb += b[i][i];
    for (int j = 0; j < 4; ++j) ab += a[i][j] * b[j][i];
  }
  return ab.real() / (ta.real() * tb.real());
}

/// 8 |b><b| for a Bell vector b.
inline M4 scaled_bell_projector(const V4& b) {
  M4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = 8.0 * b[i] * std::conj(b[j]);
  return r;
}

inline V4 phi_plus() { return {1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0)}; }
inline V4 phi_minus() { return {1 / std::sqrt(2.0), 0, 0, -1 / std::sqrt(2.0)}; }
inline V4 psi_plus() { return {0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0}; }
inline V4 psi_minus() { return {0, 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0}; }

}  // namespace oracle

namespace gen {

/// Seeded source of random test inputs.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  double normal() { return std::normal_distribution<double>()(rng_); }
  std::uint64_t bits() { return rng_(); }

  pqp::complex_t cnormal() { return {normal(), normal()}; }

  /// Haar-ish SU(2) from Euler angles with a global phase.
  pqp::Op2 unitary() {
    const double t = uniform(0.0, oracle::kPi / 2), a = uniform(0.0, 2 * oracle::kPi),
                 b = uniform(0.0, 2 * oracle::kPi), g = uniform(0.0, 2 * oracle::kPi);
    const pqp::complex_t ea = std::polar(1.0, a), eb = std::polar(1.0, b), eg = std::polar(1.0, g);
    pqp::Op2 u;
    u << ea * std::cos(t), -eb * std::sin(t), std::conj(eb) * std::sin(t), std::conj(ea) * std::cos(t);
    return eg * u;
  }

  pqp::Op2 matrix() {
    pqp::Op2 m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = cnormal();
    return m;
  }

  pqp::Ket2 ket() {
    pqp::Ket2 k(cnormal(), cnormal());
    return k / k.norm();
  }

  pqp::Ket4 ket4() {
    pqp::Ket4 k;
    for (int i = 0; i < 4; ++i) k(i) = cnormal();
    return k / k.norm();
  }

  pqp::Op2 density() {
    const pqp::Op2 m = matrix();
    const pqp::Op2 r = m * m.adjoint();
    return r / r.trace();
  }

  pqp::Op4 density4() {
    pqp::Op4 m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = cnormal();
    const pqp::Op4 r = m * m.adjoint();
    return r / r.trace();
  }

  pqp::Bell bell() { return static_cast<pqp::Bell>(bits() % 4); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen

#endif  // PQP_TESTS_SUPPORT_HPP

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

#ifndef PQP_ALGEBRA_HPP
#define PQP_ALGEBRA_HPP

#include <complex>
#include <stdexcept>
#include <string_view>

#include <Eigen/Dense>

namespace pqp {

using complex_t = std::complex<double>;

// Polarization qubit operators. Basis order is |H> = (1,0), |V> = (0,1);
// two-photon operators use the first factor as the slower-varying index.
using Op2 = Eigen::Matrix2cd;
using Op4 = Eigen::Matrix4cd;
using Op8 = Eigen::Matrix<complex_t, 8, 8>;
using Ket2 = Eigen::Vector2cd;
using Ket4 = Eigen::Vector4cd;

inline constexpr double kDefaultTol = 1e-12;

enum class Pauli { I, X, Y, Z };
enum class Bell { PhiPlus, PhiMinus, PsiPlus, PsiMinus };
enum class Polarization { H, V, D, A, R, L };

Pauli parse_pauli(std::string_view label);
Bell parse_bell(std::string_view label);
std::string_view to_string(Bell b);

Op2 pauli(Pauli p);
inline Op2 pauli(std::string_view label) { return pauli(parse_pauli(label)); }

/// Hadamard, (X + Z)/sqrt(2).
Op2 hadamard();

Ket2 polarization_ket(Polarization p);
Ket4 bell_ket(Bell b);
inline Ket4 bell_ket(std::string_view label) { return bell_ket(parse_bell(label)); }

/// Central half-wave plate at angle `alpha_deg`: cos(2a) Z + sin(2a) X.
Op2 hwp_unitary(double alpha_deg);

inline double deg_to_rad(double deg) { return deg * (EIGEN_PI / 180.0); }

namespace detail {
template <class A, class B>
void require_same_shape(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw std::invalid_argument("operator dimensions do not match");
}
}  // namespace detail

template <class A, class B>
auto commutator(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  detail::require_same_shape(a, b);
  using Result = typename A::PlainObject;
  Result r = a * b - b * a;
  return r;
}

template <class A, class B>
auto anticommutator(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  detail::require_same_shape(a, b);
  using Result = typename A::PlainObject;
  Result r = a * b + b * a;
  return r;
}

namespace detail {
constexpr int product_extent(int a, int b) {
  return (a == Eigen::Dynamic || b == Eigen::Dynamic) ? int(Eigen::Dynamic) : a * b;
}

template <class A, class B>
using KroneckerResult =
    Eigen::Matrix<complex_t, product_extent(int(A::RowsAtCompileTime), int(B::RowsAtCompileTime)),
                  product_extent(int(A::ColsAtCompileTime), int(B::ColsAtCompileTime))>;
}  // namespace detail

/// Kronecker product; works for operators and kets alike.
template <class A, class B>
detail::KroneckerResult<A, B> tensor(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  detail::KroneckerResult<A, B> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

template <class M>
bool is_hermitian(const Eigen::MatrixBase<M>& m, double tol = kDefaultTol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

template <class M>
bool is_unitary(const Eigen::MatrixBase<M>& m, double tol = kDefaultTol) {
  if (m.rows() != m.cols()) return false;
  using Plain = typename M::PlainObject;
  return (m.adjoint() * m - Plain::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

/// Smallest eigenvalue of the Hermitian part.
template <class M>
double min_eigenvalue(const Eigen::MatrixBase<M>& m) {
  using Plain = typename M::PlainObject;
  Plain h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Plain> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

template <class M>
bool is_psd(const Eigen::MatrixBase<M>& m, double tol = kDefaultTol) {
  return is_hermitian(m, tol) && min_eigenvalue(m) >= -tol;
}

template <class A, class B>
double max_abs_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

template <class K>
auto projector(const Eigen::MatrixBase<K>& ket) {
  using Plain = Eigen::Matrix<complex_t, K::RowsAtCompileTime, K::RowsAtCompileTime>;
  Plain p = ket * ket.adjoint();
  return p;
}

}  // namespace pqp

#endif  // PQP_ALGEBRA_HPP

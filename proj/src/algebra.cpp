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

#include "pqp/algebra.hpp"

#include <cmath>
#include <string>

namespace pqp {

namespace {
const complex_t kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}  // namespace

Pauli parse_pauli(std::string_view label) {
  if (label == "I") return Pauli::I;
  if (label == "X") return Pauli::X;
  if (label == "Y") return Pauli::Y;
  if (label == "Z") return Pauli::Z;
  throw std::invalid_argument("unknown Pauli label '" + std::string(label) + "'");
}

Bell parse_bell(std::string_view label) {
  if (label == "phi+" || label == "Phi+") return Bell::PhiPlus;
  if (label == "phi-" || label == "Phi-") return Bell::PhiMinus;
  if (label == "psi+" || label == "Psi+") return Bell::PsiPlus;
  if (label == "psi-" || label == "Psi-") return Bell::PsiMinus;
  throw std::invalid_argument("unknown Bell label '" + std::string(label) + "'");
}

std::string_view to_string(Bell b) {
  switch (b) {
    case Bell::PhiPlus: return "phi+";
    case Bell::PhiMinus: return "phi-";
    case Bell::PsiPlus: return "psi+";
    case Bell::PsiMinus: return "psi-";
  }
  return "?";
}

Op2 pauli(Pauli p) {
  Op2 m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -kI, kI, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

Op2 hadamard() { return kInvSqrt2 * (pauli(Pauli::X) + pauli(Pauli::Z)); }

Ket2 polarization_ket(Polarization p) {
  Ket2 k;
  switch (p) {
    case Polarization::H: k << 1, 0; break;
    case Polarization::V: k << 0, 1; break;
    case Polarization::D: k << kInvSqrt2, kInvSqrt2; break;
    case Polarization::A: k << kInvSqrt2, -kInvSqrt2; break;
    case Polarization::R: k << kInvSqrt2, kI * kInvSqrt2; break;
    case Polarization::L: k << kInvSqrt2, -kI * kInvSqrt2; break;
  }
  return k;
}

Ket4 bell_ket(Bell b) {
  Ket4 k;
  switch (b) {
    case Bell::PhiPlus: k << 1, 0, 0, 1; break;
    case Bell::PhiMinus: k << 1, 0, 0, -1; break;
    case Bell::PsiPlus: k << 0, 1, 1, 0; break;
    case Bell::PsiMinus: k << 0, 1, -1, 0; break;
  }
  return kInvSqrt2 * k;
}

Op2 hwp_unitary(double alpha_deg) {
  const double twice = 2.0 * deg_to_rad(alpha_deg);
  return std::cos(twice) * pauli(Pauli::Z) + std::sin(twice) * pauli(Pauli::X);
}

}  // namespace pqp

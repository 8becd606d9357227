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

#include "pqp/tomography.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pqp/random.hpp"

namespace pqp {

namespace {

constexpr std::array<Polarization, kSettings> kOrder = {
    Polarization::H, Polarization::V, Polarization::D,
    Polarization::A, Polarization::R, Polarization::L};

// Tr(a b) without forming the product.
complex_t trace_product(const Op4& a, const Op4& b) {
  return (a.array() * b.transpose().array()).sum();
}

void require_flux(double flux) {
  if (!(flux > 0.0) || !std::isfinite(flux)) {
    std::ostringstream os;
    os << "flux must be positive, got " << flux;
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

TomographySettings TomographySettings::standard(double flux, std::uint64_t seed) {
  TomographySettings s;
  for (int i = 0; i < kSettings; ++i) {
    s.probes[i] = polarization_ket(kOrder[i]);
    s.outcomes[i] = projector(s.probes[i]);
  }
  s.flux = flux;
  s.seed = seed;
  return s;
}

Op4 TomographySettings::effect(int j, int k) const {
  return tensor(outcomes[k], probe_density(j).transpose().eval());
}

ChoiMatrix ChoiMatrix::rescaled(double trace) const {
  const double s = scale();
  if (s <= 0.0) throw std::invalid_argument("cannot rescale a zero-trace Choi matrix");
  return {matrix * (trace / s)};
}

ChoiMatrix choi_from_kraus(const Op2& kraus) {
  // sum_i C|i> (x) |i>, i.e. (C (x) I) times the unnormalized |Phi+>.
  Ket4 psi = Ket4::Zero();
  for (int i = 0; i < 2; ++i)
    for (int out = 0; out < 2; ++out) psi(2 * out + i) = kraus(out, i);
  return {psi * psi.adjoint()};
}

Grid6 predict_probabilities(const KrausChannel& channel, const TomographySettings& settings) {
  Grid6 p;
  for (int j = 0; j < kSettings; ++j) {
    const Op2 out = channel.apply(settings.probe_density(j));
    for (int k = 0; k < kSettings; ++k) p(j, k) = (out * settings.outcomes[k]).trace().real();
  }
  return p;
}

Grid6 predict_probabilities(const ChoiMatrix& chi, const TomographySettings& settings) {
  Grid6 p;
  for (int j = 0; j < kSettings; ++j)
    for (int k = 0; k < kSettings; ++k)
      p(j, k) = trace_product(chi.matrix, settings.effect(j, k)).real();
  return p;
}

Grid6 predict_probabilities(const std::function<Op2(const Ket2&)>& output_for_probe,
                            const TomographySettings& settings) {
  Grid6 p;
  for (int j = 0; j < kSettings; ++j) {
    const Op2 out = output_for_probe(settings.probes[j]);
    for (int k = 0; k < kSettings; ++k) p(j, k) = (out * settings.outcomes[k]).trace().real();
  }
  return p;
}

CountTable expected_counts(const Grid6& p, double flux) {
  require_flux(flux);
  if ((p.array() < 0.0).any()) throw std::invalid_argument("negative probability in count model");
  return {p * (flux * kCountScale), flux, 0};
}

CountTable resample_counts(const Grid6& means, std::uint64_t seed) {
  CountTable t;
  t.seed = seed;
  for (int j = 0; j < kSettings; ++j)
    for (int k = 0; k < kSettings; ++k)
      t.counts(j, k) = draw_poisson(means(j, k), derive_seed(seed, {std::uint64_t(j), std::uint64_t(k)}));
  return t;
}

CountTable simulate_counts(const Grid6& p, double flux, std::uint64_t seed) {
  // Round-off in upstream simulations can leave tiny negative entries.
  if ((p.array() < -1e-14).any()) throw std::invalid_argument("negative probability in count model");
  CountTable t = resample_counts(expected_counts(p.cwiseMax(0.0), flux).counts, seed);
  t.flux = flux;
  return t;
}

double log_likelihood(const CountTable& counts, const TomographySettings& settings,
                      const Op4& chi) {
  double ll = 0.0;
  for (int j = 0; j < kSettings; ++j)
    for (int k = 0; k < kSettings; ++k) {
      const double n = counts.counts(j, k);
      if (n == 0.0) continue;
      const double p = trace_product(chi, settings.effect(j, k)).real();
      ll += n * std::log(std::max(p, 1e-300));
    }
  return ll;
}

namespace {

struct Likelihood {
  std::array<Op4, kSettings * kSettings> effects;
  std::array<double, kSettings * kSettings> n{};

  Likelihood(const CountTable& counts, const TomographySettings& settings) {
    for (int j = 0; j < kSettings; ++j)
      for (int k = 0; k < kSettings; ++k) {
        effects[j * kSettings + k] = settings.effect(j, k);
        n[j * kSettings + k] = counts.counts(j, k);
      }
  }

  // Fills `p` and returns the log-likelihood of `chi`.
  double evaluate(const Op4& chi, std::array<double, kSettings * kSettings>& p,
                  double floor) const {
    double ll = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = std::max(trace_product(chi, effects[i]).real(), floor);
      if (n[i] > 0.0) ll += n[i] * std::log(p[i]);
    }
    return ll;
  }

  Op4 r_operator(const std::array<double, kSettings * kSettings>& p) const {
    Op4 r = Op4::Zero();
    for (std::size_t i = 0; i < p.size(); ++i)
      if (n[i] > 0.0) r += (n[i] / p[i]) * effects[i];
    return r;
  }
};

Op4 normalized(const Op4& m) {
  Op4 h = 0.5 * (m + m.adjoint());
  return h / h.trace().real();
}

}  // namespace

MleResult mle_reconstruct(const CountTable& counts, const TomographySettings& settings,
                          const MleOptions& options, const Op4* start) {
  if ((counts.counts.array() < 0.0).any()) throw std::invalid_argument("negative counts");
  if (!(counts.total() > 0.0))
    throw std::invalid_argument("all-zero count table cannot be reconstructed");

  const Likelihood model(counts, settings);
  std::array<double, kSettings * kSettings> p{};
  std::array<double, kSettings * kSettings> p_next{};

  Op4 chi = start ? normalized(*start) : Op4(Op4::Identity() * 0.25);
  double ll = model.evaluate(chi, p, options.probability_floor);

  MleResult result;
  if (options.record_likelihood) result.log_likelihood.push_back(ll);

  for (int it = 0; it < options.max_iterations; ++it) {
    result.iterations = it + 1;
    const Op4 r = model.r_operator(p);
    const Op4 step = normalized(r * chi * r);

    Op4 next = step;
    double ll_next = model.evaluate(next, p_next, options.probability_floor);
    if (ll_next < ll) {
      // Diluted step; shrink until the likelihood stops decreasing.
      bool accepted = false;
      for (double eps = options.dilution; eps > 1e-9; eps *= 0.5) {
        next = normalized((1.0 - eps) * chi + eps * step);
        ll_next = model.evaluate(next, p_next, options.probability_floor);
        if (ll_next >= ll) {
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        result.converged = true;
        break;
      }
    }

    const double delta = (next - chi).cwiseAbs().maxCoeff();
    chi = next;
    ll = ll_next;
    p.swap(p_next);
    if (options.record_likelihood) result.log_likelihood.push_back(ll);
    if (delta < options.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.chi = {chi};
  return result;
}

KEstimate extract_K(const CountTable& signal, const CountTable& calibration) {
  const double s = signal.total();
  const double c = calibration.total();
  if (!(c > 0.0)) throw std::invalid_argument("calibration counts sum to zero");
  if (s < 0.0) throw std::invalid_argument("negative signal counts");
  KEstimate k;
  k.K = std::sqrt(2.0 * s / c);
  if (s > 0.0) k.sigma_K = 0.5 * k.K * std::sqrt(1.0 / s + 1.0 / c);
  return k;
}

double process_fidelity(const ChoiMatrix& chi, const ChoiMatrix& chi_th) {
  const double a = chi.scale();
  const double b = chi_th.scale();
  if (!(std::abs(a) > 0.0) || !(std::abs(b) > 0.0))
    throw std::invalid_argument("fidelity undefined for a zero-trace Choi matrix");
  return trace_product(chi.matrix, chi_th.matrix).real() / (a * b);
}

}  // namespace pqp

// Copyright 2026 The tessfact Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tessfact/marchenko_pastur.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "quadrature.hpp"
#include "tessfact/errors.hpp"

namespace tessfact {
namespace {

constexpr double kPi = std::numbers::pi;

// x = λ₋ + w sin²θ maps [0, π/2] onto the support and removes both
// square-root singularities of the density.
double theta_of(double x, const MarchenkoPastur& law) {
  const double w = law.upper_edge() - law.lower_edge();
  const double s2 = std::clamp((x - law.lower_edge()) / w, 0.0, 1.0);
  return std::asin(std::sqrt(s2));
}

}  // namespace

MarchenkoPastur::MarchenkoPastur(double ratio) : ratio_(ratio) {
  if (!std::isfinite(ratio) || ratio <= 0.0) {
    throw InputError("Marchenko-Pastur ratio must be positive and finite (got " +
                     std::to_string(ratio) + ")");
  }
  const double root = std::sqrt(ratio);
  lower_ = (1.0 - root) * (1.0 - root);
  upper_ = (1.0 + root) * (1.0 + root);
  atom_ = ratio > 1.0 ? 1.0 - 1.0 / ratio : 0.0;
}

double mp_pdf(double x, const MarchenkoPastur& law) {
  if (x <= law.lower_edge() || x >= law.upper_edge() || x <= 0.0) return 0.0;
  const double v = (law.upper_edge() - x) * (x - law.lower_edge());
  return std::sqrt(v) / (2.0 * kPi * law.ratio() * x);
}

double mp_cdf(double x, const MarchenkoPastur& law) {
  const double lam = law.ratio();
  const double lo = law.lower_edge(), hi = law.upper_edge();
  if (x >= hi) return 1.0;
  if (x <= lo) return x >= 0.0 ? law.atom_mass() : 0.0;

  const double r = std::sqrt((hi - x) / (x - lo));
  const double root = std::sqrt((hi - x) * (x - lo));
  double value = kPi * lam + root - (1.0 + lam) * std::atan(0.5 * (r - 1.0 / r));
  if (lam != 1.0) {
    value += (1.0 - lam) * std::atan((lo * r - hi / r) / (2.0 * (1.0 - lam)));
  }
  value /= 2.0 * kPi * lam;
  if (lam > 1.0) value += (lam - 1.0) / (2.0 * lam);
  return std::clamp(value, 0.0, 1.0);
}

double mp_mass(double from, double to, const MarchenkoPastur& law) {
  const double lo = law.lower_edge();
  const double w = law.upper_edge() - lo;
  const double lam = law.ratio();
  auto integrand = [=](double th) {
    const double s = std::sin(th), c = std::cos(th);
    const double x = lo + w * s * s;
    if (x <= 0.0) return w * c * c / (kPi * lam);
    return w * w * s * s * c * c / (kPi * lam * x);
  };
  return detail::integrate(integrand, theta_of(from, law), theta_of(to, law), 1e-12);
}

Quantile mp_cdf_inv(double p, const MarchenkoPastur& law) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InputError("probability must lie in [0, 1] (got " + std::to_string(p) + ")");
  }
  const double lo = law.lower_edge(), hi = law.upper_edge();
  if (p < law.atom_mass()) return {lo, true};
  if (p <= law.atom_mass()) return {lo, false};
  if (p >= 1.0) return {hi, false};
  double a = lo, b = hi;
  for (int i = 0; i < 80; ++i) {
    const double m = 0.5 * (a + b);
    (mp_cdf(m, law) < p ? a : b) = m;
  }
  return {0.5 * (a + b), false};
}

PartialMoment incomplete_first_moment(double upper, double lower,
                                      const MarchenkoPastur& law) {
  const double lo = law.lower_edge(), hi = law.upper_edge();
  PartialMoment out;
  const double a = std::clamp(lower, lo, hi);
  const double b = std::clamp(upper, lo, hi);
  out.clamped = a != lower || b != upper;
  if (!(b > a)) return out;
  const double w = hi - lo;
  const double scale = w * w / (kPi * law.ratio());
  auto integrand = [=](double th) {
    const double sc = std::sin(th) * std::cos(th);
    return scale * sc * sc;
  };
  out.value = detail::integrate(integrand, theta_of(a, law), theta_of(b, law));
  return out;
}

namespace {

ErrorPrediction predict(double ratio, double target) {
  const MarchenkoPastur law(ratio);
  ErrorPrediction out;
  out.ratio = ratio;
  out.cdf_target = target;
  const Quantile t = mp_cdf_inv(target, law);
  out.truncation_point = t.x;
  out.below_atom = t.below_atom;
  out.epsilon = incomplete_first_moment(t.x, law.lower_edge(), law).value;
  return out;
}

}  // namespace

ErrorPrediction predicted_error(const SchemeParams& params) {
  const SchemeParams p = validate(params, Requirement::budgets);
  if (p.users % p.link_budget != 0 || p.subfunctions % p.compute_budget != 0) {
    throw InputError("error prediction requires Delta | K and Gamma | L (K=" +
                     std::to_string(p.users) + ", Delta=" + std::to_string(p.link_budget) +
                     ", L=" + std::to_string(p.subfunctions) +
                     ", Gamma=" + std::to_string(p.compute_budget) + ")");
  }
  // TγN/K = TΓN/(KL): the fraction of each tile's spectrum that is kept.
  const Rational kept = Rational(p.shots * p.compute_budget, p.users) *
                        Rational(p.servers, p.subfunctions);
  if (kept > 1) {
    throw InputError("error prediction requires T*gamma*N/K <= 1 (got " +
                     std::to_string(to_double(kept)) + ")");
  }
  return predict(to_double(Rational(p.link_budget, p.compute_budget)),
                 to_double(1 - kept));
}

ErrorPrediction predicted_error(const NormalizedOperatingPoint& point) {
  const double d = point.link_fraction, g = point.compute_fraction;
  const double k = point.aspect_ratio;
  if (!(d > 0.0 && d <= 1.0) || !(g > 0.0 && g <= 1.0) || !(k > 0.0) ||
      !std::isfinite(k) || point.shots < 1 || !(point.rate >= 0.0)) {
    throw InputError("normalized operating point needs 0 < delta, gamma <= 1, "
                     "kappa > 0, T >= 1 and R >= 0");
  }
  const double kept = point.rate == 0.0 ? 0.0
                                        : static_cast<double>(point.shots) * g / point.rate;
  if (kept > 1.0) {
    throw InputError("error prediction requires T*gamma/R <= 1 (got " +
                     std::to_string(kept) + ")");
  }
  return predict(d * k / g, 1.0 - kept);
}

double asymptotic_capacity(double link_fraction, double compute_fraction,
                           double aspect_ratio, std::int64_t shots) {
  return static_cast<double>(shots) * std::max(link_fraction * aspect_ratio, compute_fraction);
}

}  // namespace tessfact

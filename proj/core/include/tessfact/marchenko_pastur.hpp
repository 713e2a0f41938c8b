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

#pragma once

// Marchenko-Pastur law for unit-variance entries and the resulting
// reconstruction-error predictor for the truncated tile scheme.

#include <cstdint>

#include "tessfact/params.hpp"

namespace tessfact {

/// Limiting spectrum of (1/Γ) A Aᵀ for a Δ x Γ matrix A with i.i.d. unit
/// variance entries and Δ/Γ -> ratio.
class MarchenkoPastur {
 public:
  /// Throws InputError unless ratio is finite and positive.
  explicit MarchenkoPastur(double ratio);

  double ratio() const noexcept { return ratio_; }
  double lower_edge() const noexcept { return lower_; }
  double upper_edge() const noexcept { return upper_; }
  /// Point mass at zero, 1 − 1/ratio for ratio > 1 and 0 otherwise.
  double atom_mass() const noexcept { return atom_; }

 private:
  double ratio_;
  double lower_;
  double upper_;
  double atom_;
};

/// Continuous part of the density; the atom at zero is never folded in.
double mp_pdf(double x, const MarchenkoPastur& law);

/// Closed-form CDF including the atom.
double mp_cdf(double x, const MarchenkoPastur& law);

/// Mass of the continuous part on [from, to] by adaptive quadrature.
double mp_mass(double from, double to, const MarchenkoPastur& law);

struct Quantile {
  double x = 0.0;
  /// Set when p lies below the atom mass; x is then the lower edge.
  bool below_atom = false;
};

/// Bisection inverse of mp_cdf. Throws InputError for p outside [0, 1].
Quantile mp_cdf_inv(double p, const MarchenkoPastur& law);

struct PartialMoment {
  double value = 0.0;
  bool clamped = false;  ///< limits were moved into the support
};

/// ∫_lower^upper x f(x) dx with both limits clamped to the support.
PartialMoment incomplete_first_moment(double upper, double lower,
                                      const MarchenkoPastur& law);

struct ErrorPrediction {
  double ratio = 0.0;              ///< λ = Δ/Γ
  double cdf_target = 0.0;         ///< 1 − TγN/K
  double truncation_point = 0.0;   ///< t with F(t) = cdf_target
  double epsilon = 0.0;            ///< ∫_{λ₋}^t x f(x) dx
  bool below_atom = false;
};

/// Normalized description of an operating point, for settings that have no
/// integral realization.
struct NormalizedOperatingPoint {
  double link_fraction = 0.0;     ///< δ
  double compute_fraction = 0.0;  ///< γ
  double aspect_ratio = 0.0;      ///< κ = K/L
  std::int64_t shots = 1;         ///< T
  double rate = 0.0;              ///< R = K/N; 0 means no servers
};

/// Predicted average normalized error at params.servers servers. Requires
/// Δ | K, Γ | L and TγN/K <= 1; throws InputError otherwise.
ErrorPrediction predicted_error(const SchemeParams& params);

ErrorPrediction predicted_error(const NormalizedOperatingPoint& point);

/// T max(δκ, γ): the lossless rate K/N reached asymptotically.
double asymptotic_capacity(double link_fraction, double compute_fraction,
                           double aspect_ratio, std::int64_t shots);

}  // namespace tessfact

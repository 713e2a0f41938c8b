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

// Closed-form server counts, converse bounds and capacity for lossless
// tessellated computing. Everything here is exact integer/rational arithmetic.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tessfact/params.hpp"

namespace tessfact {

/// Servers consumed by the tessellation scheme: the four tile families each
/// need ceil(rank/T) servers per tile. Families with an empty dimension
/// contribute nothing. The server count in `params` is ignored.
std::int64_t n_opt_upper(const SchemeParams& params);

/// The generic converse KL / (T max(Γ, Δ)).
Rational n_lower(const SchemeParams& params);

/// Best converse available for these parameters. For T >= min(Δ, Γ) every
/// tile costs a whole server, so the tile-covering count ceil(K/Δ)ceil(L/Γ)
/// also bounds N from below.
Rational converse_bound(const SchemeParams& params);

enum class CapacityCase {
  shots_divide_rank,    ///< T | min(Δ,Γ): C = T max(ζ, γ)
  shots_exceed_rank,    ///< T > min(Δ,Γ): C = L ζ γ
  outside_closed_form,  ///< T ∤ min(Δ,Γ) and T < min(Δ,Γ)
};

struct ClosedFormCapacity {
  CapacityCase kind = CapacityCase::outside_closed_form;
  std::optional<Rational> value;
};

/// Requires Δ | K and Γ | L, otherwise throws InputError.
ClosedFormCapacity capacity_simple(const SchemeParams& params);

enum class Optimality { exact, constant_gap };

Optimality optimality_status(const SchemeParams& params);

/// n_opt_upper / converse_bound. Throws std::logic_error if the ratio reaches
/// 8 while T < max(Δ, Γ); that can only mean a bug in the formulas.
Rational gap_ratio(const SchemeParams& params);

struct OperatingPoint {
  Rational compute_fraction;  // γ
  Rational link_fraction;     // δ
  std::string_view label;
};

enum class TradeoffKind {
  hyperbola,            ///< γδ = 1/N
  corner_points,        ///< two optimal (γ, δ) points
  outside_closed_form,
};

struct Tradeoff {
  TradeoffKind kind = TradeoffKind::outside_closed_form;
  std::int64_t servers = 0;             ///< N = n_opt_upper
  std::optional<Rational> product;      ///< γδ for the hyperbola case
  std::vector<OperatingPoint> corners;
  std::vector<OperatingPoint> baselines;  ///< dominated reference schemes
};

/// Requires Δ | K and Γ | L, otherwise throws InputError.
Tradeoff tradeoff_points(const SchemeParams& params);

struct CapacityReport {
  std::int64_t n_upper = 0;
  Rational n_lower;
  Rational n_converse;
  Rational capacity;  ///< K / n_upper
  Optimality exactness = Optimality::constant_gap;
  Rational gap_ratio;
};

CapacityReport capacity_report(const SchemeParams& params);

std::string_view to_string(CapacityCase c);
std::string_view to_string(Optimality o);
std::string_view to_string(TradeoffKind k);

}  // namespace tessfact

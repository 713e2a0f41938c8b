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

#include "tessfact/capacity.hpp"

#include <algorithm>
#include <stdexcept>

#include "tessfact/errors.hpp"

namespace tessfact {
namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// ceil(rank/T) servers per tile of this family; an empty family costs nothing.
std::int64_t family_servers(std::int64_t rank, std::int64_t shots) {
  if (rank == 0) return 0;
  return ceil_div(rank, shots);
}

void require_divisible(const SchemeParams& p, const char* what) {
  if (p.users % p.link_budget != 0) {
    throw InputError(std::string(what) + " requires Delta | K (Delta=" +
                     std::to_string(p.link_budget) + ", K=" + std::to_string(p.users) +
                     ")");
  }
  if (p.subfunctions % p.compute_budget != 0) {
    throw InputError(std::string(what) + " requires Gamma | L (Gamma=" +
                     std::to_string(p.compute_budget) +
                     ", L=" + std::to_string(p.subfunctions) + ")");
  }
}

}  // namespace

std::int64_t n_opt_upper(const SchemeParams& params) {
  const auto p = validate(params, Requirement::budgets);
  const std::int64_t K = p.users, L = p.subfunctions, T = p.shots;
  const std::int64_t D = p.link_budget, G = p.compute_budget;
  const std::int64_t row_blocks = K / D, col_blocks = L / G;
  const std::int64_t row_rem = K % D, col_rem = L % G;

  return family_servers(std::min(D, G), T) * row_blocks * col_blocks +
         family_servers(std::min(row_rem, G), T) * col_blocks +
         family_servers(std::min(col_rem, D), T) * row_blocks +
         family_servers(std::min(row_rem, col_rem), T);
}

Rational n_lower(const SchemeParams& params) {
  const auto p = validate(params, Requirement::budgets);
  return Rational(p.users * p.subfunctions,
                  p.shots * std::max(p.link_budget, p.compute_budget));
}

Rational converse_bound(const SchemeParams& params) {
  const auto p = validate(params, Requirement::budgets);
  Rational bound = n_lower(p);
  if (p.shots >= std::min(p.link_budget, p.compute_budget)) {
    const Rational tiles(ceil_div(p.users, p.link_budget) *
                         ceil_div(p.subfunctions, p.compute_budget));
    bound = std::max(bound, tiles);
  }
  return bound;
}

ClosedFormCapacity capacity_simple(const SchemeParams& params) {
  const auto p = validate(params, Requirement::budgets);
  require_divisible(p, "closed-form capacity");

  const std::int64_t rank = std::min(p.link_budget, p.compute_budget);
  const Rational zeta = p.links_per_subfunction();
  const Rational gamma = p.compute_fraction();

  ClosedFormCapacity out;
  if (rank % p.shots == 0) {
    out.kind = CapacityCase::shots_divide_rank;
    out.value = Rational(p.shots) * std::max(zeta, gamma);
  } else if (p.shots > rank) {
    out.kind = CapacityCase::shots_exceed_rank;
    out.value = Rational(p.subfunctions) * zeta * gamma;
  }
  return out;
}

Optimality optimality_status(const SchemeParams& params) {
  const auto p = validate(params, Requirement::budgets);
  const std::int64_t D = p.link_budget, G = p.compute_budget, T = p.shots;
  const bool exact = T >= std::min(D, G) ||
                     (D >= G && p.users % D == 0 && G % T == 0) ||
                     (G >= D && p.subfunctions % G == 0 && D % T == 0);
  return exact ? Optimality::exact : Optimality::constant_gap;
}

Rational gap_ratio(const SchemeParams& params) {
  const auto p = validate(params, Requirement::budgets);
  const Rational ratio = Rational(n_opt_upper(p)) / converse_bound(p);
  if (p.shots < std::max(p.link_budget, p.compute_budget) && ratio >= Rational(8)) {
    throw std::logic_error("gap ratio " + std::to_string(to_double(ratio)) +
                           " reached 8 under T < max(Delta, Gamma)");
  }
  return ratio;
}

Tradeoff tradeoff_points(const SchemeParams& params) {
  const auto p = validate(params, Requirement::budgets);
  require_divisible(p, "tradeoff points");

  Tradeoff out;
  out.servers = n_opt_upper(p);
  const std::int64_t K = p.users, L = p.subfunctions, T = p.shots, N = out.servers;
  // L min(ζ, γ) = min(Δ, Γ)
  const std::int64_t rank = std::min(p.link_budget, p.compute_budget);

  if (T > rank) {
    out.kind = TradeoffKind::hyperbola;
    out.product = Rational(1, N);
  } else if (rank % T == 0) {
    out.kind = TradeoffKind::corner_points;
    out.corners.push_back({Rational(K, N * T), Rational(T, K), "user-limited"});
    out.corners.push_back({Rational(T, L), Rational(L, N * T), "subfunction-limited"});
  }
  out.baselines.push_back({Rational(1, L), Rational(1), "centralized"});
  out.baselines.push_back({Rational(1), Rational(1, K), "fully-parallel"});
  return out;
}

CapacityReport capacity_report(const SchemeParams& params) {
  const auto p = validate(params, Requirement::budgets);
  CapacityReport r;
  r.n_upper = n_opt_upper(p);
  r.n_lower = n_lower(p);
  r.n_converse = converse_bound(p);
  r.capacity = Rational(p.users, r.n_upper);
  r.exactness = optimality_status(p);
  r.gap_ratio = gap_ratio(p);
  return r;
}

std::string_view to_string(CapacityCase c) {
  switch (c) {
    case CapacityCase::shots_divide_rank: return "shots-divide-rank";
    case CapacityCase::shots_exceed_rank: return "shots-exceed-rank";
    case CapacityCase::outside_closed_form: return "outside-closed-form";
  }
  return "unknown";
}

std::string_view to_string(Optimality o) {
  return o == Optimality::exact ? "exact" : "constant-gap";
}

std::string_view to_string(TradeoffKind k) {
  switch (k) {
    case TradeoffKind::hyperbola: return "hyperbola";
    case TradeoffKind::corner_points: return "corner-points";
    case TradeoffKind::outside_closed_form: return "outside-closed-form";
  }
  return "unknown";
}

}  // namespace tessfact

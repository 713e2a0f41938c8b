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

#include <cstdint>

#include <boost/rational.hpp>

namespace tessfact {

using Rational = boost::rational<std::int64_t>;

/// System dimensions and per-server budgets.
///
/// `link_budget` is the number of users a server may reach across all of its
/// shots; `compute_budget` is the number of subfunctions a server may compute.
/// Server count zero is allowed for analytic queries but rejected by the
/// factorization entry points.
struct SchemeParams {
  std::int64_t users = 0;
  std::int64_t subfunctions = 0;
  std::int64_t servers = 0;
  std::int64_t shots = 1;
  std::int64_t link_budget = 0;
  std::int64_t compute_budget = 0;

  /// Γ/L
  Rational compute_fraction() const;
  /// Δ/K
  Rational link_fraction() const;
  /// Δ/L
  Rational links_per_subfunction() const;
  /// K/L
  Rational aspect_ratio() const;
  /// K/N; requires servers > 0.
  Rational rate() const;

  friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

enum class Requirement {
  budgets,   ///< positive dimensions and 1 <= Δ <= K, 1 <= Γ <= L; N >= 0
  lossy,     ///< budgets plus N >= 1
  lossless,  ///< lossy plus NT >= K and NT >= L
};

/// Returns `params` unchanged when every invariant for `level` holds,
/// otherwise throws InputError naming the violated inequality.
SchemeParams validate(const SchemeParams& params,
                      Requirement level = Requirement::lossless);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace tessfact

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
#include <random>

#include "tessfact/params.hpp"

namespace tessfact::testing {

/// Uniform budgets for K, L in [1, max_dim] and T in [1, max_shots]; N = 0.
inline SchemeParams random_params(std::mt19937_64& rng, std::int64_t max_dim,
                                  std::int64_t max_shots) {
  auto pick = [&](std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(1, hi)(rng);
  };
  SchemeParams p;
  p.users = pick(max_dim);
  p.subfunctions = pick(max_dim);
  p.link_budget = pick(p.users);
  p.compute_budget = pick(p.subfunctions);
  p.shots = pick(max_shots);
  return p;
}

}  // namespace tessfact::testing

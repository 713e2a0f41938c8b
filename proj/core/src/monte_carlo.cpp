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

#include "tessfact/monte_carlo.hpp"

#include <cmath>
#include <random>

#include "parallel.hpp"
#include "tessfact/errors.hpp"
#include "tessfact/factorization.hpp"

namespace tessfact {

Matrix draw_demand(std::int64_t users, std::int64_t subfunctions, std::uint64_t seed,
                   std::uint64_t trial, Ensemble ensemble) {
  if (users <= 0 || subfunctions <= 0) {
    throw InputError("demand matrix needs positive dimensions");
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);
  Matrix f(static_cast<std::size_t>(users), static_cast<std::size_t>(subfunctions));
  if (ensemble == Ensemble::gaussian) {
    std::normal_distribution<double> dist(0.0, 1.0);
    for (double& v : f.values()) v = dist(rng);
  } else {
    const double a = std::sqrt(3.0);
    std::uniform_real_distribution<double> dist(-a, a);
    for (double& v : f.values()) v = dist(rng);
  }
  return f;
}

MonteCarloResult monte_carlo(const SchemeParams& params, const MonteCarloOptions& options) {
  const SchemeParams p = validate(params, Requirement::lossy);
  if (options.trials < 1) throw InputError("trials must be at least 1");
  MonteCarloResult out;
  out.per_trial.assign(static_cast<std::size_t>(options.trials), 0.0);
  const double cells = static_cast<double>(p.users) * static_cast<double>(p.subfunctions);
  const LossyOptions lossy{options.allow_dropped_tiles};

  detail::parallel_for(out.per_trial.size(), resolve_thread_count(options.threads),
                       [&](std::size_t trial) {
                         const Matrix f = draw_demand(p.users, p.subfunctions, options.seed,
                                                      trial, options.ensemble);
                         const Factorization fac = factorize_lossy(f, p, lossy);
                         out.per_trial[trial] = residual_error(f, fac.pair) / cells;
                       });

  // In-order reduction keeps the result independent of the thread count.
  double sum = 0.0;
  for (double e : out.per_trial) sum += e;
  const double n = static_cast<double>(out.per_trial.size());
  out.mean = sum / n;
  if (out.per_trial.size() > 1) {
    double ss = 0.0;
    for (double e : out.per_trial) ss += (e - out.mean) * (e - out.mean);
    out.standard_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

}  // namespace tessfact

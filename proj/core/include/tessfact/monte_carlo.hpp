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
#include <vector>

#include "tessfact/matrix.hpp"
#include "tessfact/params.hpp"

namespace tessfact {

enum class Ensemble {
  gaussian,  ///< standard normal entries
  uniform,   ///< uniform on [−√3, √3], also unit variance
};

/// Demand matrix for one trial. The stream depends only on (seed, trial).
Matrix draw_demand(std::int64_t users, std::int64_t subfunctions, std::uint64_t seed,
                   std::uint64_t trial, Ensemble ensemble = Ensemble::gaussian);

struct MonteCarloOptions {
  int trials = 1;
  std::uint64_t seed = 0;
  Ensemble ensemble = Ensemble::gaussian;
  /// 0 reads TESSFACT_THREADS, where 0 or unset means hardware concurrency.
  unsigned threads = 0;
  bool allow_dropped_tiles = true;
};

struct MonteCarloResult {
  double mean = 0.0;
  double standard_error = 0.0;
  std::vector<double> per_trial;  ///< ‖DE − F‖²_F / (KL) per trial
};

/// Average normalized error of the lossy scheme over random demand matrices.
/// Results do not depend on the thread count.
MonteCarloResult monte_carlo(const SchemeParams& params, const MonteCarloOptions& options);

/// Worker count after applying TESSFACT_THREADS and the hardware limit.
unsigned resolve_thread_count(unsigned requested);

}  // namespace tessfact

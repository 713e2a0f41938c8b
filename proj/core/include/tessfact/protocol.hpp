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

// Algebraic simulation of the master/server/user pipeline: servers compute
// z = E w (T shots each), users decode D z.

#include <cstdint>
#include <span>
#include <vector>

#include "tessfact/factorization.hpp"
#include "tessfact/matrix.hpp"

namespace tessfact {

/// Transmitted signals, one per server shot.
std::vector<double> encode(const Matrix& encoding, std::span<const double> outputs);

/// Retrieved function values, one per user.
std::vector<double> decode(const Matrix& decoding, std::span<const double> signals);

/// Realized per-server costs: the largest number of subfunctions any server
/// touches and the largest number of users any server reaches, each taken as
/// the union over that server's T shots.
struct CostMeasurement {
  std::int64_t compute = 0;  ///< measured Γ
  std::int64_t links = 0;    ///< measured Δ

  friend bool operator==(const CostMeasurement&, const CostMeasurement&) = default;
};

/// Throws InputError when D's columns and E's rows disagree or are not a
/// multiple of `shots`.
CostMeasurement measure_costs(const Matrix& decoding, const Matrix& encoding,
                              std::int64_t shots);
CostMeasurement measure_costs(const FactorPair& pair, std::int64_t shots);

struct SimulationReport {
  std::vector<double> signals;    ///< z
  std::vector<double> expected;   ///< F w
  std::vector<double> decoded;    ///< D z
  double error = 0.0;             ///< Σ_k |decoded_k − expected_k|²
  CostMeasurement costs;
};

SimulationReport run_end_to_end(const Matrix& demand, std::span<const double> outputs,
                                const FactorPair& pair, std::int64_t shots);

}  // namespace tessfact

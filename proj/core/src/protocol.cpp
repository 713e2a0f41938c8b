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

#include "tessfact/protocol.hpp"

#include <algorithm>
#include <string>

#include "tessfact/errors.hpp"

namespace tessfact {

std::vector<double> encode(const Matrix& encoding, std::span<const double> outputs) {
  return multiply(encoding, outputs);
}

std::vector<double> decode(const Matrix& decoding, std::span<const double> signals) {
  return multiply(decoding, signals);
}

CostMeasurement measure_costs(const Matrix& decoding, const Matrix& encoding,
                              std::int64_t shots) {
  if (shots < 1) throw InputError("shots must be positive");
  if (decoding.cols() != encoding.rows()) {
    throw InputError("D has " + std::to_string(decoding.cols()) + " columns but E has " +
                     std::to_string(encoding.rows()) + " rows");
  }
  const auto T = static_cast<std::size_t>(shots);
  if (decoding.cols() % T != 0) {
    throw InputError(std::to_string(decoding.cols()) +
                     " shot columns are not a multiple of T=" + std::to_string(shots));
  }

  CostMeasurement out;
  std::vector<std::uint8_t> users(decoding.rows());
  std::vector<std::uint8_t> subfunctions(encoding.cols());
  for (std::size_t server = 0; server < decoding.cols() / T; ++server) {
    std::fill(users.begin(), users.end(), 0);
    std::fill(subfunctions.begin(), subfunctions.end(), 0);
    for (std::size_t c = server * T; c < (server + 1) * T; ++c) {
      for (std::size_t k = 0; k < decoding.rows(); ++k)
        if (decoding(k, c) != 0.0) users[k] = 1;
      for (std::size_t l = 0; l < encoding.cols(); ++l)
        if (encoding(c, l) != 0.0) subfunctions[l] = 1;
    }
    out.links = std::max<std::int64_t>(out.links, std::count(users.begin(), users.end(), 1));
    out.compute = std::max<std::int64_t>(
        out.compute, std::count(subfunctions.begin(), subfunctions.end(), 1));
  }
  return out;
}

CostMeasurement measure_costs(const FactorPair& pair, std::int64_t shots) {
  return measure_costs(pair.decoding, pair.encoding, shots);
}

SimulationReport run_end_to_end(const Matrix& demand, std::span<const double> outputs,
                                const FactorPair& pair, std::int64_t shots) {
  if (pair.decoding.rows() != demand.rows() || pair.encoding.cols() != demand.cols()) {
    throw InputError("scheme shape does not match the demand matrix");
  }
  SimulationReport report;
  report.signals = encode(pair.encoding, outputs);
  report.decoded = decode(pair.decoding, report.signals);
  report.expected = multiply(demand, outputs);
  for (std::size_t k = 0; k < report.decoded.size(); ++k) {
    const double diff = report.decoded[k] - report.expected[k];
    report.error += diff * diff;
  }
  report.costs = measure_costs(pair, shots);
  return report;
}

}  // namespace tessfact

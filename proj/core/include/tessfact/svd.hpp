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

#include <cstddef>
#include <vector>

#include "tessfact/matrix.hpp"

namespace tessfact {

/// Thin SVD A = U diag(S) Vᵀ with r = min(m, n).
struct SvdResult {
  Matrix u;               ///< m x r, orthonormal columns
  std::vector<double> s;  ///< non-increasing, non-negative
  Matrix v;               ///< n x r, orthonormal columns
  int sweeps = 0;

  std::size_t rank() const { return s.size(); }
};

struct SvdOptions {
  int max_sweeps = 60;
  double tolerance = 1e-14;
};

/// One-sided Jacobi on the smaller dimension. Each singular pair is signed so
/// that the largest-magnitude entry of the U column is positive. Throws
/// InputError on non-finite input and NumericalError when the sweep cap is hit.
SvdResult svd(const Matrix& a, const SvdOptions& options = {});

/// Rank-q factors left = U_q diag(S_q), right = V_qᵀ and the discarded energy
/// Σ_{i>q} σ_i².
struct TruncatedFactors {
  Matrix left;
  Matrix right;
  double residual_sq = 0.0;
};

/// Throws InputError for q > rank.
TruncatedFactors truncate(const SvdResult& svd, std::size_t q);

}  // namespace tessfact

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
#include <cstdint>
#include <span>
#include <vector>

#include "tessfact/matrix.hpp"
#include "tessfact/params.hpp"
#include "tessfact/svd.hpp"
#include "tessfact/tessellation.hpp"

namespace tessfact {

/// D (K x NT) and E (NT x L) together with the support each is allowed to use.
/// Column c of D and row c of E belong to server c / T, shot c % T.
struct FactorPair {
  Matrix decoding;    ///< D
  Matrix encoding;    ///< E
  Mask decoding_support;
  Mask encoding_support;
};

/// Per-tile factors: left = U_q diag(S_q), right = V_qᵀ.
struct TileFactor {
  std::size_t tile_id = 0;
  Matrix left;
  Matrix right;
  double residual_sq = 0.0;
  std::vector<double> singular_values;
};

struct Factorization {
  FactorPair pair;
  TilePlan plan;
  std::vector<TileFactor> tiles;
  /// False for lossy runs with Δ ∤ K or Γ ∤ L, where the error predictor does
  /// not apply.
  bool within_guarantees = true;
  std::vector<std::size_t> dropped_tiles;

  double residual_sq() const;
};

/// F restricted to tile.rows x tile.cols in the tile's own ordering.
Matrix extract_tile(const Matrix& demand, const Tile& tile);

/// Per-tile ranks for a lossy run over plan.params.servers servers.
///
/// Every tile first receives ⌊NT/m⌋ shots (capped at its rank). Remaining
/// shots are handed out one at a time: to the tile whose next singular value
/// is largest when `singular_values` is given, otherwise to the tile with the
/// fewest shots so far (ties in tile order). Tiles never share a server, so a
/// shot that needs a fresh server is only granted while servers remain.
/// Throws InfeasibleError when a tile would get rank 0 and
/// `allow_dropped_tiles` is false.
std::vector<std::int64_t> rank_budget(
    const TilePlan& plan, std::span<const std::vector<double>> singular_values = {},
    bool allow_dropped_tiles = false);

/// Exact factorization DE = F with the minimum server count. Requires
/// validate(params) and params.servers >= n_opt_upper(params).
Factorization factorize_lossless(const Matrix& demand, const SchemeParams& params);

struct LossyOptions {
  bool allow_dropped_tiles = false;
};

/// Truncated-SVD factorization with params.servers servers (NT < K or NT < L
/// allowed).
Factorization factorize_lossy(const Matrix& demand, const SchemeParams& params,
                              const LossyOptions& options = {});

/// ‖DE − F‖²_F computed densely.
double residual_error(const Matrix& demand, const FactorPair& pair);

/// Any two rank-one supports D(:,i)E(i,:) are equal or disjoint.
bool has_disjoint_support(const FactorPair& pair);

/// Disjoint support plus equal support sizes across all columns of D and all
/// rows of E.
bool has_balanced_support(const FactorPair& pair);

/// Every nonzero of D and E lies inside its support mask.
bool respects_support(const FactorPair& pair);

}  // namespace tessfact

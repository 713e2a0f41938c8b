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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "random_params.hpp"
#include "tessfact/capacity.hpp"
#include "tessfact/errors.hpp"
#include "tessfact/factorization.hpp"
#include "tessfact/protocol.hpp"

namespace tessfact {
namespace {

SchemeParams P(std::int64_t K, std::int64_t L, std::int64_t N, std::int64_t T,
               std::int64_t D, std::int64_t G) {
  return {K, L, N, T, D, G};
}

std::size_t max_column_support(const Matrix& m) {
  std::size_t best = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::size_t n = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) n += m(r, c) != 0.0;
    best = std::max(best, n);
  }
  return best;
}

std::size_t max_row_support(const Matrix& m) { return max_column_support(transpose(m)); }

TEST(ExtractTile, TopLeftAndCorner) {
  std::mt19937_64 rng(1);
  const Matrix f = testing::random_matrix(7, 11, rng);
  const TilePlan plan = build_tessellation(P(7, 11, 0, 1, 3, 5));
  const Matrix top = extract_tile(f, plan.tiles[0]);
  ASSERT_EQ(top.rows(), 3u);
  ASSERT_EQ(top.cols(), 5u);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 5; ++c) EXPECT_EQ(top(r, c), f(r, c));
  const Matrix corner = extract_tile(f, plan.tiles.back());
  ASSERT_EQ(corner.size(), 1u);
  EXPECT_EQ(corner(0, 0), f(6, 10));
  Tile bad = plan.tiles[0];
  bad.rows.push_back(7);
  EXPECT_THROW(extract_tile(f, bad), InputError);
}

TEST(ExtractTile, TilesReassembleF) {
  std::mt19937_64 rng(2);
  const Matrix f = testing::random_matrix(7, 11, rng);
  const TilePlan plan = build_tessellation(P(7, 11, 0, 1, 3, 5));
  Matrix back(7, 11);
  for (const auto& t : plan.tiles) {
    const Matrix s = extract_tile(f, t);
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      for (std::size_t j = 0; j < t.cols.size(); ++j) back(t.rows[i], t.cols[j]) = s(i, j);
  }
  EXPECT_EQ(back, f);
}

TEST(Lossless, SixByTenFullRank) {
  std::mt19937_64 rng(3);
  const Matrix f = testing::random_matrix(6, 10, rng);
  const Factorization fac = factorize_lossless(f, P(6, 10, 12, 1, 3, 5));
  ASSERT_EQ(fac.pair.decoding.rows(), 6u);
  ASSERT_EQ(fac.pair.decoding.cols(), 12u);
  ASSERT_EQ(fac.pair.encoding.rows(), 12u);
  ASSERT_EQ(fac.pair.encoding.cols(), 10u);
  EXPECT_LE(std::sqrt(residual_error(f, fac.pair)), 1e-10 * std::sqrt(frobenius_norm_sq(f)));
  EXPECT_LE(max_column_support(fac.pair.decoding), 3u);
  EXPECT_LE(max_row_support(fac.pair.encoding), 5u);
  EXPECT_TRUE(respects_support(fac.pair));
  EXPECT_TRUE(has_disjoint_support(fac.pair));
  EXPECT_TRUE(has_balanced_support(fac.pair));
}

TEST(Lossless, NonDivisibleUsesSeventeenServers) {
  std::mt19937_64 rng(4);
  const Matrix f = testing::random_matrix(7, 11, rng);
  const Factorization fac = factorize_lossless(f, P(7, 11, 20, 1, 3, 5));
  EXPECT_EQ(fac.plan.servers_used(), 17);
  std::size_t used_columns = 0;
  for (std::size_t c = 0; c < fac.pair.decoding.cols(); ++c) {
    for (std::size_t r = 0; r < 7; ++r) {
      if (fac.pair.decoding_support(r, c)) {
        ++used_columns;
        break;
      }
    }
  }
  EXPECT_EQ(used_columns, 17u);
  EXPECT_LE(residual_error(f, fac.pair), 1e-20 * frobenius_norm_sq(f));
}

TEST(Lossless, MultiShotPlacementPadsToShots) {
  std::mt19937_64 rng(5);
  const Matrix f = testing::random_matrix(6, 10, rng);
  const Factorization fac = factorize_lossless(f, P(6, 10, 8, 2, 3, 5));
  EXPECT_EQ(fac.pair.decoding.cols(), 16u);
  // Each tile holds columns [4j, 4j+4); only the first three are used.
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t r = 0; r < 6; ++r) EXPECT_EQ(fac.pair.decoding(r, 4 * j + 3), 0.0);
  }
  const CostMeasurement c = measure_costs(fac.pair, 2);
  EXPECT_EQ(c.compute, 5);
  EXPECT_EQ(c.links, 3);
  EXPECT_LE(residual_error(f, fac.pair), 1e-20 * frobenius_norm_sq(f));
}

TEST(Lossless, ZeroDemand) {
  const Matrix f(6, 10);
  const Factorization fac = factorize_lossless(f, P(6, 10, 12, 1, 3, 5));
  EXPECT_EQ(residual_error(f, fac.pair), 0.0);
  EXPECT_EQ(frobenius_norm_sq(multiply(fac.pair.decoding, fac.pair.encoding)), 0.0);
}

TEST(Lossless, Errors) {
  const Matrix f(6, 10);
  EXPECT_THROW(factorize_lossless(f, P(6, 10, 11, 1, 3, 5)), InfeasibleError);
  EXPECT_THROW(factorize_lossless(Matrix(5, 10), P(6, 10, 12, 1, 3, 5)), InputError);
  Matrix nan(6, 10);
  nan(1, 1) = std::nan("");
  EXPECT_THROW(factorize_lossless(nan, P(6, 10, 12, 1, 3, 5)), InputError);
}

TEST(Lossy, FourServerSquaredTail) {
  std::mt19937_64 rng(6);
  const Matrix f = testing::random_matrix(6, 10, rng);
  const Factorization fac = factorize_lossy(f, P(6, 10, 4, 1, 3, 5));
  double expected = 0.0;
  for (const auto& t : fac.plan.tiles) {
    EXPECT_EQ(t.allocated_rank, 1);
    const auto s = testing::reference_singular_values(extract_tile(f, t));
    expected += s[1] * s[1] + s[2] * s[2];
  }
  EXPECT_NEAR(residual_error(f, fac.pair), expected, 1e-9 * expected);
  EXPECT_NEAR(fac.residual_sq(), expected, 1e-9 * expected);
  EXPECT_NEAR(testing::reference_residual(f, fac.pair.decoding, fac.pair.encoding), expected,
              1e-9 * expected);
  EXPECT_TRUE(fac.within_guarantees);
  EXPECT_TRUE(has_balanced_support(fac.pair));
}

TEST(Lossy, FullBudgetIsLossless) {
  std::mt19937_64 rng(7);
  const Matrix f = testing::random_matrix(6, 10, rng);
  const Factorization fac = factorize_lossy(f, P(6, 10, 12, 1, 3, 5));
  EXPECT_LE(residual_error(f, fac.pair), 1e-20 * frobenius_norm_sq(f));
}

TEST(Lossy, TwoTileToyMatchesBestRankOne) {
  std::mt19937_64 rng(8);
  const Matrix f = testing::random_matrix(4, 2, rng);
  const Factorization fac = factorize_lossy(f, P(4, 2, 2, 1, 2, 2));
  ASSERT_EQ(fac.plan.tiles.size(), 2u);
  double expected = 0.0;
  for (const auto& t : fac.plan.tiles) expected += testing::reference_tail(extract_tile(f, t), 1);
  EXPECT_NEAR(residual_error(f, fac.pair), expected, 1e-12);
}

TEST(Lossy, ScalarTilesKeepTheLargestEntries) {
  Matrix f(2, 2);
  f(0, 0) = 1;
  f(0, 1) = -4;
  f(1, 0) = 2;
  f(1, 1) = 3;
  EXPECT_THROW(factorize_lossy(f, P(2, 2, 2, 1, 1, 1)), InfeasibleError);
  const Factorization fac = factorize_lossy(f, P(2, 2, 2, 1, 1, 1), {true});
  EXPECT_DOUBLE_EQ(residual_error(f, fac.pair), 1.0 + 4.0);
  EXPECT_EQ(fac.dropped_tiles, (std::vector<std::size_t>{0, 2}));
}

TEST(Lossy, NonDivisibleOutsideGuarantees) {
  std::mt19937_64 rng(9);
  const Matrix f = testing::random_matrix(7, 11, rng);
  const Factorization fac = factorize_lossy(f, P(7, 11, 9, 1, 3, 5));
  EXPECT_FALSE(fac.within_guarantees);
  EXPECT_NEAR(residual_error(f, fac.pair), fac.residual_sq(), 1e-9 * fac.residual_sq());
}

TEST(RankBudget, UniformAndFull) {
  const TilePlan plan = build_tessellation(P(6, 10, 4, 1, 3, 5));
  EXPECT_EQ(rank_budget(plan), (std::vector<std::int64_t>(4, 1)));
  const TilePlan full = build_tessellation(P(6, 10, 12, 1, 3, 5));
  EXPECT_EQ(rank_budget(full), (std::vector<std::int64_t>(4, 3)));
  const TilePlan over = build_tessellation(P(6, 10, 40, 1, 3, 5));
  EXPECT_EQ(rank_budget(over), (std::vector<std::int64_t>(4, 3)));
}

TEST(RankBudget, LeftoverInEnumerationOrderWithoutSpectra) {
  const TilePlan plan = build_tessellation(P(6, 10, 6, 1, 3, 5));
  EXPECT_EQ(rank_budget(plan), (std::vector<std::int64_t>{2, 2, 1, 1}));
}

// The extra unit goes where it removes the most energy; brute force agrees.
TEST(RankBudget, GreedyMatchesBruteForce) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix f = testing::random_matrix(6, 10, rng);
    const SchemeParams p = P(6, 10, 5, 1, 3, 5);
    const TilePlan plan = build_tessellation(p);
    std::vector<std::vector<double>> spectra;
    for (const auto& t : plan.tiles) spectra.push_back(testing::reference_singular_values(extract_tile(f, t)));
    const auto q = rank_budget(plan, spectra);
    EXPECT_EQ(std::accumulate(q.begin(), q.end(), std::int64_t{0}), 5);
    std::size_t best = 0;
    double best_err = INFINITY;
    for (std::size_t extra = 0; extra < 4; ++extra) {
      double err = 0.0;
      for (std::size_t j = 0; j < 4; ++j) {
        const std::size_t keep = j == extra ? 2 : 1;
        for (std::size_t i = keep; i < spectra[j].size(); ++i) err += spectra[j][i] * spectra[j][i];
      }
      if (err < best_err) {
        best_err = err;
        best = extra;
      }
    }
    EXPECT_EQ(q[best], 2);
    const Factorization fac = factorize_lossy(f, p);
    EXPECT_NEAR(residual_error(f, fac.pair), best_err, 1e-9 * best_err);
  }
}

TEST(RankBudget, MultiShotStaysWithinServers) {
  const TilePlan plan = build_tessellation(P(4, 2, 3, 2, 2, 2));
  const auto q = rank_budget(plan);
  std::int64_t servers = 0;
  for (auto x : q) servers += (x + 1) / 2;
  EXPECT_LE(servers, 3);
  EXPECT_EQ(q, (std::vector<std::int64_t>{2, 2}));
  const TilePlan tight = build_tessellation(P(6, 10, 3, 2, 3, 5));
  const auto q2 = rank_budget(tight, {}, true);
  servers = 0;
  for (auto x : q2) servers += (x + 1) / 2;
  EXPECT_LE(servers, 3);
}

// The uniform base jumps at multiples of the tile count m, so monotonicity
// holds within [k*m, (k+1)*m) and across multiples of m, and N >= k*m never
// does worse than k*m.
TEST(Lossy, ResidualNonIncreasingInServers) {
  std::mt19937_64 rng(11);
  const Matrix f = testing::random_matrix(8, 12, rng);
  const std::int64_t m = 8;
  std::vector<double> err;
  for (std::int64_t n = 0; n <= 24; ++n) {
    const Factorization fac = factorize_lossy(f, P(8, 12, n, 1, 4, 3), {true});
    err.push_back(residual_error(f, fac.pair));
  }
  for (std::int64_t n = 1; n <= 24; ++n) {
    if (n % m != 0) {
      EXPECT_LE(err[n], err[n - 1] * (1 + 1e-12)) << "N=" << n;
    }
    EXPECT_LE(err[n], err[(n / m) * m] * (1 + 1e-12)) << "N=" << n;
  }
  for (std::int64_t k = 1; k * m <= 24; ++k)
    EXPECT_LE(err[k * m], err[(k - 1) * m] * (1 + 1e-12)) << "k=" << k;
  EXPECT_NEAR(err.back(), 0.0, 1e-20);
}

TEST(Lossy, IdentitiesOverRandomConfigurations) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    SchemeParams p = testing::random_params(rng, 16, 3);
    const std::int64_t full = n_opt_upper(p);
    p.servers = std::uniform_int_distribution<std::int64_t>(1, full)(rng);
    const Matrix f = testing::random_matrix(p.users, p.subfunctions, rng);
    const Factorization fac = factorize_lossy(f, p, {true});
    const double total = fac.residual_sq();
    const double actual = residual_error(f, fac.pair);
    EXPECT_NEAR(actual, total, 1e-9 * std::max(total, 1e-12 * frobenius_norm_sq(f)));
    for (std::size_t j = 0; j < fac.tiles.size(); ++j) {
      const Matrix s = extract_tile(f, fac.plan.tiles[j]);
      const double tail = testing::reference_tail(
          s, static_cast<std::size_t>(fac.plan.tiles[j].allocated_rank));
      EXPECT_NEAR(fac.tiles[j].residual_sq, tail,
                  1e-9 * std::max(tail, 1e-12 * frobenius_norm_sq(s)));
    }
    EXPECT_TRUE(respects_support(fac.pair));
    EXPECT_TRUE(has_disjoint_support(fac.pair));
    EXPECT_LE(fac.plan.servers_used(), p.servers);
    const CostMeasurement c = measure_costs(fac.pair, p.shots);
    EXPECT_LE(c.compute, p.compute_budget);
    EXPECT_LE(c.links, p.link_budget);
  }
}

TEST(Support, DetectsViolations) {
  std::mt19937_64 rng(13);
  const Matrix f = testing::random_matrix(6, 10, rng);
  Factorization fac = factorize_lossless(f, P(6, 10, 12, 1, 3, 5));
  FactorPair pair = fac.pair;
  pair.decoding(5, 0) = 1.0;  // outside tile 0's rows
  EXPECT_FALSE(respects_support(pair));
  FactorPair overlap = fac.pair;
  overlap.decoding_support(3, 0) = 1;  // column 0 now straddles two tiles
  EXPECT_FALSE(has_disjoint_support(overlap));
  EXPECT_FALSE(has_balanced_support(overlap));
}

TEST(Residual, ZeroFactorsGiveFullEnergy) {
  std::mt19937_64 rng(14);
  const Matrix f = testing::random_matrix(3, 4, rng);
  const FactorPair zero{Matrix(3, 2), Matrix(2, 4), Mask(3, 2), Mask(2, 4)};
  EXPECT_DOUBLE_EQ(residual_error(f, zero), frobenius_norm_sq(f));
  const FactorPair bad{Matrix(3, 2), Matrix(3, 4), Mask(3, 2), Mask(3, 4)};
  EXPECT_THROW(residual_error(f, bad), InputError);
}

}  // namespace
}  // namespace tessfact

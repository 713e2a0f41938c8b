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

#include <random>

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

double direct_error(const Matrix& f, const FactorPair& pair, const std::vector<double>& w) {
  const Eigen::MatrixXd diff =
      testing::to_eigen(pair.decoding) * testing::to_eigen(pair.encoding) - testing::to_eigen(f);
  const Eigen::VectorXd wv = Eigen::Map<const Eigen::VectorXd>(w.data(), w.size());
  return (diff * wv).squaredNorm();
}

TEST(Encode, IdentityAndTwoTermSum) {
  const std::vector<double> w{2, 3, 4};
  EXPECT_EQ(encode(identity(3), w), w);
  Matrix e(1, 3);
  e(0, 0) = 1;
  e(0, 1) = 1;
  EXPECT_EQ(encode(e, w), std::vector<double>{5});
  EXPECT_THROW(encode(identity(2), w), InputError);
}

TEST(Decode, IdentityAndZero) {
  const std::vector<double> z{1, -2};
  EXPECT_EQ(decode(identity(2), z), z);
  EXPECT_EQ(decode(Matrix(3, 2), z), std::vector<double>(3, 0.0));
}

TEST(Pipeline, LosslessSixByTen) {
  std::mt19937_64 rng(1);
  const Matrix f = testing::random_matrix(6, 10, rng);
  const Factorization fac = factorize_lossless(f, P(6, 10, 12, 1, 3, 5));
  const auto w = testing::random_vector(10, rng);
  const SimulationReport r = run_end_to_end(f, w, fac.pair, 1);
  const Eigen::VectorXd z_ref =
      testing::to_eigen(fac.pair.encoding) * Eigen::Map<const Eigen::VectorXd>(w.data(), 10);
  ASSERT_EQ(r.signals.size(), 12u);
  for (std::size_t i = 0; i < 12; ++i) EXPECT_NEAR(r.signals[i], z_ref(i), 1e-12);
  double norm = 0.0;
  for (std::size_t k = 0; k < 6; ++k) {
    EXPECT_NEAR(r.decoded[k], r.expected[k], 1e-9 * std::abs(r.expected[k]) + 1e-12);
    norm += r.expected[k] * r.expected[k];
  }
  EXPECT_LE(r.error, 1e-18 * frobenius_norm_sq(f) * squared_norm(w));
  EXPECT_EQ(r.costs, (CostMeasurement{5, 3}));
  EXPECT_GT(norm, 0.0);
}

TEST(Pipeline, ZeroDecoderAndZeroOutputs) {
  std::mt19937_64 rng(2);
  const Matrix f = testing::random_matrix(6, 10, rng);
  const auto w = testing::random_vector(10, rng);
  const FactorPair zero{Matrix(6, 4), Matrix(4, 10), Mask(6, 4), Mask(4, 10)};
  const SimulationReport r = run_end_to_end(f, w, zero, 1);
  EXPECT_NEAR(r.error, squared_norm(multiply(f, w)), 1e-12);
  EXPECT_EQ(r.costs, (CostMeasurement{0, 0}));
  const Factorization fac = factorize_lossy(f, P(6, 10, 4, 1, 3, 5));
  EXPECT_EQ(run_end_to_end(f, std::vector<double>(10, 0.0), fac.pair, 1).error, 0.0);
}

TEST(Pipeline, UnitVectorExtractsColumnError) {
  std::mt19937_64 rng(3);
  const Matrix f = testing::random_matrix(6, 10, rng);
  const Factorization fac = factorize_lossy(f, P(6, 10, 4, 1, 3, 5));
  const Matrix diff = subtract(multiply(fac.pair.decoding, fac.pair.encoding), f);
  for (std::size_t j = 0; j < 10; ++j) {
    std::vector<double> e(10, 0.0);
    e[j] = 1.0;
    double col = 0.0;
    for (std::size_t k = 0; k < 6; ++k) col += diff(k, j) * diff(k, j);
    EXPECT_NEAR(run_end_to_end(f, e, fac.pair, 1).error, col, 1e-12 * col);
  }
}

TEST(Pipeline, ShapeMismatch) {
  const Matrix f(6, 10);
  const Factorization fac = factorize_lossless(f, P(6, 10, 12, 1, 3, 5));
  EXPECT_THROW(run_end_to_end(f, std::vector<double>(9, 1.0), fac.pair, 1), InputError);
  EXPECT_THROW(run_end_to_end(Matrix(5, 10), std::vector<double>(10, 1.0), fac.pair, 1),
               InputError);
}

TEST(Costs, MeasuredAndRejected) {
  std::mt19937_64 rng(4);
  const Matrix f = testing::random_matrix(6, 10, rng);
  EXPECT_EQ(measure_costs(factorize_lossless(f, P(6, 10, 12, 1, 3, 5)).pair, 1),
            (CostMeasurement{5, 3}));
  EXPECT_EQ(measure_costs(factorize_lossless(f, P(6, 10, 8, 2, 3, 5)).pair, 2),
            (CostMeasurement{5, 3}));
  EXPECT_EQ(measure_costs(Matrix(3, 4), Matrix(4, 5), 2), (CostMeasurement{0, 0}));
  EXPECT_THROW(measure_costs(Matrix(3, 4), Matrix(5, 5), 1), InputError);
  EXPECT_THROW(measure_costs(Matrix(3, 3), Matrix(3, 5), 2), InputError);
}

// Two consecutive shots of a server count once, as a union.
TEST(Costs, UnionOverShots) {
  Matrix d(4, 2), e(2, 3);
  d(0, 0) = 1;
  d(1, 0) = 1;
  d(1, 1) = 1;
  d(2, 1) = 1;
  e(0, 0) = 1;
  e(1, 2) = 1;
  EXPECT_EQ(measure_costs(d, e, 2), (CostMeasurement{2, 3}));
  EXPECT_EQ(measure_costs(d, e, 1), (CostMeasurement{1, 2}));
}

TEST(Pipeline, SimulatedErrorMatchesDirectProduct) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    SchemeParams p = testing::random_params(rng, 12, 3);
    p.servers = std::uniform_int_distribution<std::int64_t>(1, n_opt_upper(p))(rng);
    const Matrix f = testing::random_matrix(p.users, p.subfunctions, rng);
    const Factorization fac = factorize_lossy(f, p, {true});
    const auto w = testing::random_vector(p.subfunctions, rng);
    const double sim = run_end_to_end(f, w, fac.pair, p.shots).error;
    const double ref = direct_error(f, fac.pair, w);
    EXPECT_NEAR(sim, ref, 1e-9 * ref + 1e-24);
  }
}

TEST(Costs, EverySchemeWithinBudgets) {
  std::vector<SchemeParams> configs = {P(6, 10, 12, 1, 3, 5), P(6, 10, 20, 1, 3, 2),
                                       P(6, 10, 12, 1, 2, 5), P(7, 11, 17, 1, 3, 5),
                                       P(6, 10, 8, 2, 3, 5)};
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    SchemeParams p = testing::random_params(rng, 20, 4);
    p.servers = std::max(n_opt_upper(p),
                         (std::max(p.users, p.subfunctions) + p.shots - 1) / p.shots);
    configs.push_back(p);
  }
  for (const auto& p : configs) {
    const Matrix f = testing::random_matrix(p.users, p.subfunctions, rng);
    for (bool lossy : {false, true}) {
      SchemeParams q = p;
      if (lossy) q.servers = std::max<std::int64_t>(1, p.servers / 2);
      const Factorization fac =
          lossy ? factorize_lossy(f, q, {true}) : factorize_lossless(f, q);
      const CostMeasurement c = measure_costs(fac.pair, q.shots);
      EXPECT_LE(c.compute, q.compute_budget);
      EXPECT_LE(c.links, q.link_budget);
    }
  }
}

TEST(Pipeline, AverageOverOutputsTracksResidual) {
  std::mt19937_64 rng(7);
  const Matrix f = testing::random_matrix(12, 20, rng);
  const SchemeParams p = P(12, 20, 18, 1, 4, 5);
  const Factorization fac = factorize_lossy(f, p);
  const double residual = residual_error(f, fac.pair);
  ASSERT_GT(residual, 0.0);
  double sum = 0.0;
  const int samples = 10000;
  for (int i = 0; i < samples; ++i) {
    const auto w = testing::random_vector(20, rng);
    sum += run_end_to_end(f, w, fac.pair, 1).error;
  }
  EXPECT_NEAR(sum / samples / 240.0, residual / 240.0, 0.05 * residual / 240.0);
}

}  // namespace
}  // namespace tessfact

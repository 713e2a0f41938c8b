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

#include <cmath>
#include <cstdlib>

#include "tessfact/errors.hpp"
#include "tessfact/marchenko_pastur.hpp"
#include "tessfact/monte_carlo.hpp"

namespace tessfact {
namespace {

TEST(Demand, DeterministicPerTrial) {
  EXPECT_EQ(draw_demand(5, 7, 42, 3), draw_demand(5, 7, 42, 3));
  EXPECT_NE(draw_demand(5, 7, 42, 3), draw_demand(5, 7, 42, 4));
  EXPECT_NE(draw_demand(5, 7, 42, 3), draw_demand(5, 7, 43, 3));
  EXPECT_THROW(draw_demand(0, 7, 1, 1), InputError);
}

TEST(Demand, UnitVarianceEnsembles) {
  for (Ensemble e : {Ensemble::gaussian, Ensemble::uniform}) {
    const Matrix f = draw_demand(200, 200, 9, 0, e);
    double sum = 0.0, sq = 0.0;
    for (double v : f.values()) {
      sum += v;
      sq += v * v;
    }
    const double n = static_cast<double>(f.size());
    EXPECT_NEAR(sum / n, 0.0, 0.02);
    EXPECT_NEAR(sq / n, 1.0, 0.03);
  }
  for (double v : draw_demand(50, 50, 1, 0, Ensemble::uniform).values()) {
    EXPECT_LE(std::abs(v), std::sqrt(3.0));
  }
}

TEST(MonteCarlo, FullRankGivesZeroError) {
  const MonteCarloResult r = monte_carlo({20, 20, 40, 1, 10, 5}, {5, 1});
  ASSERT_EQ(r.per_trial.size(), 5u);
  for (double e : r.per_trial) EXPECT_LT(e, 1e-25);
}

TEST(MonteCarlo, SameSeedSameBitsAcrossThreadCounts) {
  const SchemeParams p{60, 60, 12, 1, 30, 20};
  const MonteCarloResult a = monte_carlo(p, {8, 77, Ensemble::gaussian, 1});
  const MonteCarloResult b = monte_carlo(p, {8, 77, Ensemble::gaussian, 4});
  const MonteCarloResult c = monte_carlo(p, {8, 77, Ensemble::gaussian, 1});
  EXPECT_EQ(a.per_trial, b.per_trial);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.standard_error, b.standard_error);
  EXPECT_EQ(a.per_trial, c.per_trial);
  EXPECT_NE(monte_carlo(p, {8, 78}).mean, a.mean);
}

TEST(MonteCarlo, TracksPredictionOnSmallTiles) {
  const SchemeParams p{120, 120, 24, 1, 60, 40};
  const double predicted = predicted_error(p).epsilon;
  for (Ensemble e : {Ensemble::gaussian, Ensemble::uniform}) {
    const MonteCarloResult r = monte_carlo(p, {20, 5, e});
    EXPECT_NEAR(r.mean, predicted, 0.06 * predicted);
    EXPECT_GT(r.standard_error, 0.0);
  }
}

TEST(MonteCarlo, Errors) {
  EXPECT_THROW(monte_carlo({20, 20, 4, 1, 10, 5}, {0, 1}), InputError);
  EXPECT_THROW(monte_carlo({20, 20, 0, 1, 10, 5}, {1, 1}), InputError);
}

TEST(Threads, EnvironmentOverride) {
  EXPECT_EQ(resolve_thread_count(3), 3u);
  ::setenv("TESSFACT_THREADS", "2", 1);
  EXPECT_EQ(resolve_thread_count(0), 2u);
  ::setenv("TESSFACT_THREADS", "0", 1);
  EXPECT_GE(resolve_thread_count(0), 1u);
  ::setenv("TESSFACT_THREADS", "two", 1);
  EXPECT_THROW(resolve_thread_count(0), InputError);
  ::unsetenv("TESSFACT_THREADS");
  EXPECT_GE(resolve_thread_count(0), 1u);
}

}  // namespace
}  // namespace tessfact

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

#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "tessfact/errors.hpp"
#include "tessfact/factorization.hpp"
#include "tessfact/io.hpp"

namespace tessfact {
namespace {

TEST(Csv, ParsesWithHeaderAndBlankLines) {
  const Matrix m = parse_csv("# 2 3\n1, 2,3\n\n-4.5,5e-3,+6\n");
  ASSERT_EQ(m.rows(), 2u);
  ASSERT_EQ(m.cols(), 3u);
  EXPECT_EQ(m(1, 0), -4.5);
  EXPECT_EQ(m(1, 1), 5e-3);
  EXPECT_EQ(m(1, 2), 6.0);
}

TEST(Csv, ReportsLineNumbers) {
  try {
    parse_csv("1,2\n3,4\n5,oops\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  try {
    parse_csv("1,2\n3\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_csv("# 3 3\n1,2\n"), InputError);
  EXPECT_THROW(parse_csv(""), InputError);
}

TEST(Csv, RoundTripIsBitExact) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    Matrix m = testing::random_matrix(1 + rng() % 7, 1 + rng() % 7, rng);
    m(0, 0) = 1e-300 * static_cast<double>(i);
    EXPECT_EQ(parse_csv(format_csv(m, i % 2 == 0)), m);
  }
}

TEST(Descriptor, JsonRoundTrip) {
  std::mt19937_64 rng(2);
  const Matrix f = testing::random_matrix(7, 11, rng);
  const Factorization fac = factorize_lossless(f, {7, 11, 17, 1, 3, 5});
  const SchemeDescriptor d{fac.plan.params, fac.plan.tiles, SchemeMode::lossless,
                           "F.csv", "D.csv", "E.csv"};
  const std::string text = to_json(d);
  const SchemeDescriptor back = descriptor_from_json(text);
  EXPECT_EQ(back, d);
  EXPECT_EQ(to_json(back), text);
  EXPECT_THROW(descriptor_from_json("{\"params\": 1}"), InputError);
}

TEST(Descriptor, LoadChecksReferencedFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "tessfact_io_test";
  std::filesystem::create_directories(dir);
  SchemeDescriptor d;
  d.params = {2, 2, 2, 1, 1, 1};
  d.demand_file = "F.csv";
  d.decoding_file = "D.csv";
  d.encoding_file = "E.csv";
  std::ofstream(dir / "scheme.json") << to_json(d);
  std::filesystem::remove(dir / "E.csv");
  write_csv(dir / "F.csv", Matrix(2, 2));
  write_csv(dir / "D.csv", Matrix(2, 2));
  EXPECT_THROW(load_descriptor(dir / "scheme.json"), InputError);
  write_csv(dir / "E.csv", Matrix(2, 2));
  const SchemeDescriptor loaded = load_descriptor(dir / "scheme.json");
  EXPECT_EQ(std::filesystem::path(loaded.encoding_file), dir / "E.csv");
  std::filesystem::remove_all(dir);
}

TEST(Vector, SingleRowOrColumn) {
  const auto dir = std::filesystem::temp_directory_path();
  write_csv(dir / "tessfact_w.csv", parse_csv("1\n2\n3\n"));
  EXPECT_EQ(read_vector_csv(dir / "tessfact_w.csv"), (std::vector<double>{1, 2, 3}));
  write_csv(dir / "tessfact_w.csv", Matrix(2, 2));
  EXPECT_THROW(read_vector_csv(dir / "tessfact_w.csv"), InputError);
  std::filesystem::remove(dir / "tessfact_w.csv");
}

}  // namespace
}  // namespace tessfact

// Copyright 2026 The srlproj Authors.
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

#include "srlproj/agreement.h"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "srlproj/error.h"

namespace srlproj {
namespace {

// Random units x coders with missing values; values drawn from `labels`.
ReliabilityData RandomData(std::mt19937 &rng, int units, int coders,
                           int labels) {
  ReliabilityData data;
  std::uniform_int_distribution<int> value(0, labels - 1);
  for (int u = 0; u < units; ++u) {
    for (int c = 0; c < coders; ++c) {
      if (rng() % 4 == 0) continue;
      data.Set("u" + std::to_string(u), "c" + std::to_string(c),
               std::string(1, static_cast<char>('a' + value(rng))));
    }
  }
  return data;
}

std::vector<std::vector<std::string>> Units(const ReliabilityData &data) {
  std::vector<std::vector<std::string>> units;
  for (const std::string &u : data.units()) units.push_back(data.ValuesOf(u));
  return units;
}

bool Defined(const ReliabilityData &data) {
  std::set<std::string> values;
  bool pairable = false;
  for (const auto &v : Units(data)) {
    if (v.size() < 2) continue;
    pairable = true;
    values.insert(v.begin(), v.end());
  }
  return data.coders().size() >= 2 && pairable && values.size() >= 2;
}

TEST(AlphaTest, HandCase) {
  ReliabilityData data;
  data.Set("1", "x", "a");
  data.Set("1", "y", "a");
  data.Set("2", "x", "a");
  data.Set("2", "y", "b");
  data.Set("3", "x", "b");
  data.Set("3", "y", "b");
  EXPECT_NEAR(KrippendorffAlpha(data), 0.4444, 1e-4);
}

TEST(AlphaTest, PerfectAgreementIsOne) {
  ReliabilityData data;
  for (int u = 0; u < 6; ++u) {
    for (const char *coder : {"x", "y", "z"}) {
      data.Set("u" + std::to_string(u), coder, u % 2 ? "A0" : "NONE");
    }
  }
  EXPECT_DOUBLE_EQ(KrippendorffAlpha(data), 1.0);
}

TEST(AlphaTest, UndefinedCasesAreErrors) {
  ReliabilityData one_coder;
  one_coder.Set("u", "x", "a");
  EXPECT_THROW(KrippendorffAlpha(one_coder), Error);

  ReliabilityData unpaired;
  unpaired.Set("u", "x", "a");
  unpaired.Set("v", "y", "b");
  EXPECT_THROW(KrippendorffAlpha(unpaired), Error);

  ReliabilityData constant;
  constant.Set("u", "x", "a");
  constant.Set("u", "y", "a");
  EXPECT_THROW(KrippendorffAlpha(constant), Error);
}

TEST(AlphaTest, MatchesOraclesOnRandomData) {
  std::mt19937 rng(71);
  int checked = 0;
  for (int round = 0; round < 300; ++round) {
    ReliabilityData data = RandomData(rng, 2 + round % 15, 2 + round % 4,
                                      2 + round % 5);
    if (!Defined(data)) continue;
    const double alpha = KrippendorffAlpha(data);
    EXPECT_NEAR(alpha, testing::PairwiseAlphaOracle(Units(data)), 1e-9);
    EXPECT_NEAR(alpha, testing::CoincidenceAlphaOracle(Units(data)), 1e-9);
    ++checked;
  }
  EXPECT_GT(checked, 250);
}

TEST(AlphaTest, InvariantUnderCoderAndUnitRelabelling) {
  std::mt19937 rng(72);
  for (int round = 0; round < 50; ++round) {
    ReliabilityData data = RandomData(rng, 8, 3, 3);
    if (!Defined(data)) continue;
    std::vector<std::string> units = data.units();
    std::shuffle(units.begin(), units.end(), rng);
    std::vector<std::string> coders = data.coders();
    std::shuffle(coders.begin(), coders.end(), rng);
    ReliabilityData relabelled;
    for (const std::string &u : units) {
      const std::vector<std::string> values = data.ValuesOf(u);
      for (size_t i = 0; i < values.size(); ++i) {
        relabelled.Set("U" + u, coders[i], values[i]);
      }
    }
    EXPECT_NEAR(KrippendorffAlpha(relabelled), KrippendorffAlpha(data),
                1e-12);
  }
}

}  // namespace
}  // namespace srlproj

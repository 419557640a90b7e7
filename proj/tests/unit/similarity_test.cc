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

#include "srlproj/similarity.h"

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "srlproj/error.h"

namespace srlproj {
namespace {

PieceEncoding RandomEncoding(std::mt19937 &rng, int pieces, int dim) {
  std::normal_distribution<float> normal;
  PieceEncoding e;
  e.dim = dim;
  for (int p = 0; p < pieces; ++p) {
    e.pieces.push_back("p");
    e.word_index.push_back(p + 1);
    for (int d = 0; d < dim; ++d) e.vectors.push_back(normal(rng));
  }
  return e;
}

TEST(SimilarityTest, CosineExamples) {
  const std::vector<float> x{1, 0}, y{0, 1}, a{3, 4}, b{4, 3};
  EXPECT_DOUBLE_EQ(Cosine(x, x), 1.0);
  EXPECT_DOUBLE_EQ(Cosine(x, y), 0.0);
  EXPECT_NEAR(Cosine(a, b), 0.96, 1e-12);
}

TEST(SimilarityTest, CosineRejectsZeroAndMismatchedVectors) {
  const std::vector<float> zero{0, 0}, x{1, 0}, longer{1, 0, 0};
  EXPECT_THROW(Cosine(zero, x), Error);
  EXPECT_THROW(Cosine(x, longer), Error);
}

TEST(SimilarityTest, MatchesBruteForceOracle) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> size(1, 70);
  for (int round = 0; round < 40; ++round) {
    const int dim = 1 + round % 9;
    PieceEncoding s = RandomEncoding(rng, size(rng), dim);
    PieceEncoding t = RandomEncoding(rng, size(rng), dim);
    SimilarityMatrix sm = ComputeSimilarityMatrix(s, t);
    auto oracle = testing::BruteCosineMatrix(s, t);
    ASSERT_EQ(sm.rows(), s.num_pieces());
    ASSERT_EQ(sm.cols(), t.num_pieces());
    for (int i = 0; i < sm.rows(); ++i) {
      for (int j = 0; j < sm.cols(); ++j) {
        ASSERT_NEAR(sm.at(i, j), oracle[i][j], 1e-6);
      }
    }
  }
}

TEST(SimilarityTest, TransposeAndScaleInvariance) {
  std::mt19937 rng(12);
  PieceEncoding s = RandomEncoding(rng, 5, 8);
  PieceEncoding t = RandomEncoding(rng, 7, 8);
  SimilarityMatrix st = ComputeSimilarityMatrix(s, t);
  SimilarityMatrix ts = ComputeSimilarityMatrix(t, s).Transposed();
  PieceEncoding scaled = s;
  for (float &x : scaled.vectors) x *= 37.5f;
  SimilarityMatrix sc = ComputeSimilarityMatrix(scaled, t);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 7; ++j) {
      EXPECT_NEAR(st.at(i, j), ts.at(i, j), 1e-6);
      EXPECT_NEAR(st.at(i, j), sc.at(i, j), 1e-6);
    }
  }
}

TEST(SimilarityTest, IdentityEmbeddingHasStrictDiagonal) {
  PieceEncoding e;
  e.dim = 4;
  for (int p = 0; p < 4; ++p) {
    e.pieces.push_back("p");
    e.word_index.push_back(p + 1);
    for (int d = 0; d < 4; ++d) e.vectors.push_back(d == p ? 2.0f : 0.1f);
  }
  SimilarityMatrix sm = ComputeSimilarityMatrix(e, e);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(sm.at(i, i), 1.0, 1e-9);
    for (int j = 0; j < 4; ++j) {
      if (j != i) {
        EXPECT_LT(sm.at(i, j), sm.at(i, i));
        EXPECT_LT(sm.at(j, i), sm.at(i, i));
      }
    }
  }
}

TEST(SimilarityTest, ZeroPieceIsNamed) {
  std::mt19937 rng(1);
  PieceEncoding s = RandomEncoding(rng, 3, 2);
  s.vectors[2] = s.vectors[3] = 0.0f;
  try {
    ComputeSimilarityMatrix(s, s);
    FAIL() << "expected an error";
  } catch (const Error &e) {
    EXPECT_NE(std::string(e.what()).find("piece 1"), std::string::npos)
        << e.what();
  }
}

TEST(SimilarityTest, DimensionMismatchIsAnError) {
  std::mt19937 rng(2);
  EXPECT_THROW(ComputeSimilarityMatrix(RandomEncoding(rng, 2, 3),
                                       RandomEncoding(rng, 2, 4)),
               Error);
}

}  // namespace
}  // namespace srlproj

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

#ifndef SRLPROJ_SIMILARITY_H_
#define SRLPROJ_SIMILARITY_H_

#include <span>
#include <vector>

#include "srlproj/bundle.h"

namespace srlproj {

// Dense p x q matrix of piece-level cosine similarities. Entry (i, j) is the
// similarity of source piece i and target piece j.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  SimilarityMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), values_(static_cast<size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double at(int i, int j) const { return values_[Offset(i, j)]; }
  double &at(int i, int j) { return values_[Offset(i, j)]; }

  std::span<const double> row(int i) const {
    return {values_.data() + Offset(i, 0), static_cast<size_t>(cols_)};
  }

  SimilarityMatrix Transposed() const;

 private:
  size_t Offset(int i, int j) const {
    return static_cast<size_t>(i) * cols_ + j;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> values_;
};

// Cosine similarity. Throws Error on a dimension mismatch or a zero vector.
double Cosine(std::span<const float> a, std::span<const float> b);

// Row-normalizes both piece sets and multiplies them. Dot products are
// accumulated in double.
SimilarityMatrix ComputeSimilarityMatrix(const PieceEncoding &source,
                                         const PieceEncoding &target);

}  // namespace srlproj

#endif  // SRLPROJ_SIMILARITY_H_

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

#include <algorithm>
#include <cmath>
#include <string>

#include "srlproj/error.h"

namespace srlproj {
namespace {

// Block edge for the tiled product; 64 doubles of a row fit a few cache lines.
constexpr int kBlock = 64;

// Copies each piece vector to double and scales it to unit length.
std::vector<double> NormalizedRows(const PieceEncoding &encoding,
                                   const char *side) {
  const int n = encoding.num_pieces();
  const int dim = encoding.dim;
  std::vector<double> rows(static_cast<size_t>(n) * dim);
  for (int i = 0; i < n; ++i) {
    const float *v = encoding.vector(i);
    double norm = 0.0;
    for (int d = 0; d < dim; ++d) norm += static_cast<double>(v[d]) * v[d];
    norm = std::sqrt(norm);
    if (norm == 0.0) {
      throw Error(std::string(side) + " piece " + std::to_string(i) +
                  " of sentence '" + encoding.sent_id + "' is a zero vector");
    }
    double *out = rows.data() + static_cast<size_t>(i) * dim;
    for (int d = 0; d < dim; ++d) out[d] = v[d] / norm;
  }
  return rows;
}

}  // namespace

SimilarityMatrix SimilarityMatrix::Transposed() const {
  SimilarityMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  }
  return t;
}

double Cosine(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw Error("cosine of vectors with different dimensions (" +
                std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                ")");
  }
  double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
  for (size_t d = 0; d < a.size(); ++d) {
    dot += static_cast<double>(a[d]) * b[d];
    norm_a += static_cast<double>(a[d]) * a[d];
    norm_b += static_cast<double>(b[d]) * b[d];
  }
  if (norm_a == 0.0 || norm_b == 0.0) {
    throw Error("cosine is undefined for a zero vector");
  }
  return dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

SimilarityMatrix ComputeSimilarityMatrix(const PieceEncoding &source,
                                         const PieceEncoding &target) {
  if (source.dim != target.dim) {
    throw Error("dimension mismatch between source (" +
                std::to_string(source.dim) + ") and target (" +
                std::to_string(target.dim) + ") encodings of '" +
                source.sent_id + "'");
  }
  const int p = source.num_pieces();
  const int q = target.num_pieces();
  const int dim = source.dim;
  const std::vector<double> s = NormalizedRows(source, "source");
  const std::vector<double> t = NormalizedRows(target, "target");

  SimilarityMatrix sm(p, q);
  for (int i0 = 0; i0 < p; i0 += kBlock) {
    const int i1 = std::min(p, i0 + kBlock);
    for (int j0 = 0; j0 < q; j0 += kBlock) {
      const int j1 = std::min(q, j0 + kBlock);
      for (int i = i0; i < i1; ++i) {
        const double *a = s.data() + static_cast<size_t>(i) * dim;
        for (int j = j0; j < j1; ++j) {
          const double *b = t.data() + static_cast<size_t>(j) * dim;
          double dot = 0.0;
          for (int d = 0; d < dim; ++d) dot += a[d] * b[d];
          sm.at(i, j) = dot;
        }
      }
    }
  }
  return sm;
}

}  // namespace srlproj

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

#ifndef SRLPROJ_BUNDLE_H_
#define SRLPROJ_BUNDLE_H_

#include <string>
#include <vector>

#include "srlproj/conll.h"

namespace srlproj {

// Word-piece vectors of one sentence. Vectors are stored row-major, one row
// of `dim` floats per piece.
struct PieceEncoding {
  std::string sent_id;
  std::vector<std::string> pieces;
  // 1-based token index of the word each piece belongs to.
  std::vector<int> word_index;
  int dim = 0;
  std::vector<float> vectors;

  int num_pieces() const { return static_cast<int>(pieces.size()); }
  const float *vector(int piece) const { return vectors.data() + piece * dim; }

  bool operator==(const PieceEncoding &) const = default;
};

struct EmbeddingBundle {
  std::string language;
  std::string model_id;
  int layer = -1;
  int dim = 0;
  std::vector<PieceEncoding> encodings;

  bool operator==(const EmbeddingBundle &) const = default;
};

// `.embjsonl` reader/writer. One header line
//   {"language":..,"model_id":..,"layer":..,"dim":..}
// followed by one line per sentence
//   {"sent_id":..,"pieces":[..],"word_index":[..],"vectors":[[..],..]}.
// Paths ending in ".gz" are gzip-compressed.
EmbeddingBundle ParseBundle(const std::string &text);
std::string SerializeBundle(const EmbeddingBundle &bundle);

EmbeddingBundle LoadBundle(const std::string &path);
void SaveBundle(const std::string &path, const EmbeddingBundle &bundle);

// Throws Error if the encoding does not cover every token of `sentence`
// or references a token past its end.
void ValidateCoverage(const PieceEncoding &encoding, const Sentence &sentence);

struct SentencePair {
  const Sentence *source;
  const Sentence *target;
  const PieceEncoding *source_encoding;
  const PieceEncoding *target_encoding;
};

// Joins corpora and bundles by sent_id, in source corpus order. All four
// collections must contain every source sent_id; the error lists the ids
// missing from each one. The returned pointers refer into the arguments.
std::vector<SentencePair> PairBundles(const EmbeddingBundle &source_bundle,
                                      const EmbeddingBundle &target_bundle,
                                      const Corpus &source_corpus,
                                      const Corpus &target_corpus);

}  // namespace srlproj

#endif  // SRLPROJ_BUNDLE_H_

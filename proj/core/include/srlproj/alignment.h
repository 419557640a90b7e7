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

#ifndef SRLPROJ_ALIGNMENT_H_
#define SRLPROJ_ALIGNMENT_H_

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "srlproj/bundle.h"
#include "srlproj/similarity.h"

namespace srlproj {

enum class Direction { kSourceToTarget, kTargetToSource };

enum class AlignmentMode { kS2T, kT2S, kInter };

const char *AlignmentModeName(AlignmentMode mode);
// Accepts "s2t", "t2s" and "inter" (case-insensitive). Throws ConfigError.
AlignmentMode ParseAlignmentMode(const std::string &name);

struct AlignmentConfig {
  int k = 2;
  AlignmentMode mode = AlignmentMode::kS2T;
};

struct PiecePair {
  int source_piece = 0;
  int target_piece = 0;
  double score = 0.0;

  bool operator==(const PiecePair &) const = default;
};

// For every source piece (S2T) or every target piece (T2S), the min(k, n)
// best-scoring pieces on the other side. Ties go to the lower index. Output
// is grouped by the anchor piece in ascending order, best first within a
// group.
std::vector<PiecePair> TopKPairs(const SimilarityMatrix &sm, int k,
                                 Direction direction);

// A full-word alignment candidate with all piece-level scores that voted
// for it.
struct Candidate {
  int word = 0;
  int votes = 0;
  double max_score = 0.0;
  std::vector<double> scores;

  bool operator==(const Candidate &) const = default;
};

// Word -> candidate words on the other side, candidates ordered by word.
// An S2T table is keyed by source token; a T2S table by target token.
class CandidateTable {
 public:
  void Add(int from_word, int to_word, double score);

  // Empty list if the word has no candidates.
  const std::vector<Candidate> &candidates(int from_word) const;
  bool Contains(int from_word, int to_word) const;

  const std::map<int, std::vector<Candidate>> &entries() const {
    return entries_;
  }
  // Every (from, to) pair, lexicographically ordered.
  std::vector<std::pair<int, int>> Links() const;

  bool operator==(const CandidateTable &) const = default;

 private:
  std::map<int, std::vector<Candidate>> entries_;
};

// Lifts piece pairs to words. Pairs produced with kSourceToTarget give a
// table keyed by source words; kTargetToSource keys it by target words.
CandidateTable BuildCandidateTable(const std::vector<PiecePair> &pairs,
                                   const PieceEncoding &source,
                                   const PieceEncoding &target,
                                   Direction direction);

// Keeps s2t links (ws -> wt) for which t2s has (wt -> ws). Votes and scores
// come from the s2t side.
CandidateTable IntersectTables(const CandidateTable &s2t,
                               const CandidateTable &t2s);

// Re-keys a target-keyed table by source word.
CandidateTable InvertTable(const CandidateTable &table);

// The full word-alignment step for one sentence pair. The result is always
// keyed by source word, whatever the mode.
CandidateTable AlignSentencePair(const PieceEncoding &source,
                                 const PieceEncoding &target,
                                 const AlignmentConfig &config);

// Debug dump of a table: {"links":[{"from":..,"to":..,"votes":..,
// "max_score":..,"scores":[..]},..]}.
nlohmann::json ToJson(const CandidateTable &table);

}  // namespace srlproj

#endif  // SRLPROJ_ALIGNMENT_H_

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

#include "srlproj/alignment.h"

#include <algorithm>
#include <cctype>
#include <numeric>

#include <nlohmann/json.hpp>

#include "srlproj/error.h"

namespace srlproj {

const char *AlignmentModeName(AlignmentMode mode) {
  switch (mode) {
    case AlignmentMode::kS2T:
      return "s2t";
    case AlignmentMode::kT2S:
      return "t2s";
    case AlignmentMode::kInter:
      return "inter";
  }
  return "?";
}

AlignmentMode ParseAlignmentMode(const std::string &name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "s2t") return AlignmentMode::kS2T;
  if (lower == "t2s") return AlignmentMode::kT2S;
  if (lower == "inter") return AlignmentMode::kInter;
  throw ConfigError("unknown alignment mode '" + name +
                    "' (expected s2t, t2s or inter)");
}

std::vector<PiecePair> TopKPairs(const SimilarityMatrix &sm, int k,
                                 Direction direction) {
  if (k < 1) throw ConfigError("k must be >= 1");
  std::vector<PiecePair> pairs;
  if (sm.empty()) return pairs;
  const bool s2t = direction == Direction::kSourceToTarget;
  const int anchors = s2t ? sm.rows() : sm.cols();
  const int others = s2t ? sm.cols() : sm.rows();
  const int keep = std::min(k, others);
  auto score = [&](int anchor, int other) {
    return s2t ? sm.at(anchor, other) : sm.at(other, anchor);
  };

  std::vector<int> order(others);
  pairs.reserve(static_cast<size_t>(anchors) * keep);
  for (int a = 0; a < anchors; ++a) {
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                      [&](int x, int y) {
                        const double sx = score(a, x), sy = score(a, y);
                        return sx > sy || (sx == sy && x < y);
                      });
    for (int r = 0; r < keep; ++r) {
      const int o = order[r];
      pairs.push_back(s2t ? PiecePair{a, o, score(a, o)}
                          : PiecePair{o, a, score(a, o)});
    }
  }
  return pairs;
}

void CandidateTable::Add(int from_word, int to_word, double score) {
  std::vector<Candidate> &list = entries_[from_word];
  auto it = std::lower_bound(
      list.begin(), list.end(), to_word,
      [](const Candidate &c, int word) { return c.word < word; });
  if (it == list.end() || it->word != to_word) {
    it = list.insert(it, Candidate{to_word, 0, score, {}});
  }
  ++it->votes;
  it->max_score = it->scores.empty() ? score : std::max(it->max_score, score);
  it->scores.push_back(score);
}

const std::vector<Candidate> &CandidateTable::candidates(int from_word) const {
  static const std::vector<Candidate> kEmpty;
  auto it = entries_.find(from_word);
  return it == entries_.end() ? kEmpty : it->second;
}

bool CandidateTable::Contains(int from_word, int to_word) const {
  const std::vector<Candidate> &list = candidates(from_word);
  return std::binary_search(
      list.begin(), list.end(), Candidate{to_word, 0, 0.0, {}},
      [](const Candidate &a, const Candidate &b) { return a.word < b.word; });
}

std::vector<std::pair<int, int>> CandidateTable::Links() const {
  std::vector<std::pair<int, int>> links;
  for (const auto &[from, list] : entries_) {
    for (const Candidate &c : list) links.emplace_back(from, c.word);
  }
  return links;
}

CandidateTable BuildCandidateTable(const std::vector<PiecePair> &pairs,
                                   const PieceEncoding &source,
                                   const PieceEncoding &target,
                                   Direction direction) {
  CandidateTable table;
  for (const PiecePair &pair : pairs) {
    const int source_word = source.word_index.at(pair.source_piece);
    const int target_word = target.word_index.at(pair.target_piece);
    if (direction == Direction::kSourceToTarget) {
      table.Add(source_word, target_word, pair.score);
    } else {
      table.Add(target_word, source_word, pair.score);
    }
  }
  return table;
}

CandidateTable IntersectTables(const CandidateTable &s2t,
                               const CandidateTable &t2s) {
  CandidateTable result;
  for (const auto &[source_word, list] : s2t.entries()) {
    for (const Candidate &c : list) {
      if (!t2s.Contains(c.word, source_word)) continue;
      for (double score : c.scores) result.Add(source_word, c.word, score);
    }
  }
  return result;
}

CandidateTable InvertTable(const CandidateTable &table) {
  CandidateTable result;
  for (const auto &[from, list] : table.entries()) {
    for (const Candidate &c : list) {
      for (double score : c.scores) result.Add(c.word, from, score);
    }
  }
  return result;
}

CandidateTable AlignSentencePair(const PieceEncoding &source,
                                 const PieceEncoding &target,
                                 const AlignmentConfig &config) {
  if (config.k < 1) throw ConfigError("k must be >= 1");
  const SimilarityMatrix sm = ComputeSimilarityMatrix(source, target);
  auto table = [&](Direction direction) {
    return BuildCandidateTable(TopKPairs(sm, config.k, direction), source,
                               target, direction);
  };
  switch (config.mode) {
    case AlignmentMode::kS2T:
      return table(Direction::kSourceToTarget);
    case AlignmentMode::kT2S:
      return InvertTable(table(Direction::kTargetToSource));
    case AlignmentMode::kInter:
      return IntersectTables(table(Direction::kSourceToTarget),
                             table(Direction::kTargetToSource));
  }
  return {};
}

nlohmann::json ToJson(const CandidateTable &table) {
  nlohmann::json links = nlohmann::json::array();
  for (const auto &[from, list] : table.entries()) {
    for (const Candidate &c : list) {
      links.push_back({{"from", from},
                       {"to", c.word},
                       {"votes", c.votes},
                       {"max_score", c.max_score},
                       {"scores", c.scores}});
    }
  }
  return {{"links", std::move(links)}};
}

}  // namespace srlproj

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

#ifndef SRLPROJ_PROJECTION_H_
#define SRLPROJ_PROJECTION_H_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "srlproj/alignment.h"
#include "srlproj/bundle.h"
#include "srlproj/conll.h"

namespace srlproj {

enum class SensePolicy {
  // Target frames carry the source sense string unchanged.
  kCopySource,
  // Target lemma plus the numeric suffix of the source sense.
  kTargetLemmaSense,
};

const char *SensePolicyName(SensePolicy policy);
SensePolicy ParseSensePolicy(const std::string &name);

struct ProjectionConfig {
  std::set<std::string> verbal_pos_tags = {"VERB", "AUX"};
  AlignmentConfig alignment;
  bool filters_enabled = true;
  SensePolicy sense_policy = SensePolicy::kCopySource;

  // Throws ConfigError if the invariants do not hold.
  void Validate() const;
};

struct ProjectionCounts {
  int source_predicates = 0;
  int source_arguments = 0;
  int predicates_projected = 0;
  int predicates_dropped_no_candidate = 0;
  int predicates_dropped_no_verbal_candidate = 0;
  int predicates_dropped_collision = 0;
  int arguments_projected = 0;
  int arguments_dropped_no_candidate = 0;
  int arguments_dropped_predicate_dropped = 0;
  int arguments_dropped_collision = 0;

  int predicates_dropped() const {
    return predicates_dropped_no_candidate +
           predicates_dropped_no_verbal_candidate +
           predicates_dropped_collision;
  }
  int arguments_dropped() const {
    return arguments_dropped_no_candidate +
           arguments_dropped_predicate_dropped + arguments_dropped_collision;
  }
  // Projected labels over source labels; 1 when the source has none.
  double coverage() const;

  ProjectionCounts &operator+=(const ProjectionCounts &other);
  bool operator==(const ProjectionCounts &) const = default;
};

struct Collision {
  enum class Kind { kPredicate, kArgument };
  Kind kind = Kind::kPredicate;
  // Position of the frame in the source sentence; for predicate collisions
  // this is the losing frame.
  int frame = 0;
  int losing_source = 0;
  int winning_source = 0;
  int target = 0;

  bool operator==(const Collision &) const = default;
};

struct SentenceReport {
  std::string sent_id;
  ProjectionCounts counts;
  std::vector<Collision> collisions;

  bool operator==(const SentenceReport &) const = default;
};

struct ProjectionReport {
  std::vector<SentenceReport> sentences;
  ProjectionCounts totals;

  void Append(SentenceReport sentence);
};

struct Choice {
  int target = 0;
  double score = 0.0;
};

// Highest-scoring candidate of the frame's predicate word, restricted to
// verbal target tokens when filters are on. Ties go to the lower index.
std::optional<Choice> ProjectPredicate(const PredicateFrame &frame,
                                       const CandidateTable &table,
                                       const Sentence &target,
                                       const ProjectionConfig &config);

// Candidate with the most votes; vote ties broken by max score, then by
// lower index.
std::optional<Choice> ProjectArgument(const Role &argument,
                                      const CandidateTable &table,
                                      const ProjectionConfig &config);

struct ProjectedSentence {
  Sentence sentence;
  SentenceReport report;
};

// `table` must be keyed by source word.
ProjectedSentence ProjectSentence(const Sentence &source,
                                  const Sentence &target,
                                  const CandidateTable &table,
                                  const ProjectionConfig &config);

struct ProjectionResult {
  Corpus corpus;
  ProjectionReport report;
};

// Aligns and projects every pair. Work is spread over `jobs` threads;
// output order always follows `pairs`.
ProjectionResult ProjectCorpus(const std::vector<SentencePair> &pairs,
                               const ProjectionConfig &config, int jobs = 1);

nlohmann::json ToJson(const ProjectionCounts &counts);
nlohmann::json ToJson(const ProjectionReport &report,
                      const ProjectionConfig &config);
// Aligned-column summary of the totals.
std::string FormatReport(const ProjectionReport &report);

}  // namespace srlproj

#endif  // SRLPROJ_PROJECTION_H_

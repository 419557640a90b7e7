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

#ifndef SRLPROJ_EVALUATION_H_
#define SRLPROJ_EVALUATION_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "srlproj/conll.h"

namespace srlproj {

struct Prf {
  int tp = 0;
  int fp = 0;
  int fn = 0;

  // 0/0 is defined as 0 throughout.
  double precision() const;
  double recall() const;
  double f1() const;

  Prf &operator+=(const Prf &other);
  bool operator==(const Prf &) const = default;
};

struct EvalReport {
  Prf predicate;
  Prf argument;
  Prf combined;
  // Sentences of the projected corpus that have no gold counterpart (for
  // example, dropped by the quality filter). They are not scored.
  int unscored_sentences = 0;
};

struct EvalOptions {
  // Predicates must also agree on the sense string.
  bool strict_sense = false;
};

// Scores a projected corpus against a gold one. Frames correspond when they
// sit on the same target predicate token. Every gold sent_id must be present
// in `projected`; otherwise Error.
EvalReport EvaluateProjection(const Corpus &projected, const Corpus &gold,
                              const EvalOptions &options = {});

nlohmann::json ToJson(const EvalReport &report);
// Predicate / argument / combined rows with P, R, F1 in percent.
std::string FormatEvalReport(const EvalReport &report);

struct LabelCount {
  std::string label;
  int count = 0;
};

struct DensityReport {
  std::vector<std::string> corpus_names;
  // label -> count per corpus (same order as corpus_names).
  std::map<std::string, std::vector<int>> counts;
  // Labels ordered by frequency in the first corpus, truncated to top_n.
  std::vector<std::string> top_labels;
  // Total labels per corpus over the first corpus's total.
  std::vector<double> coverage;
};

// Counts predicates (as "PRED") and role labels per corpus. The first corpus
// is the reference for ranking and coverage. Throws Error on an empty list.
DensityReport LabelDensity(
    const std::vector<std::pair<std::string, const Corpus *>> &corpora,
    int top_n);

nlohmann::json ToJson(const DensityReport &report);
std::string DensityCsv(const DensityReport &report);

struct RatedSentence {
  int rating = 0;
  int predicates = 0;
  int arguments = 0;
};

struct QualityStats {
  int sentences = 0;
  int predicates = 0;
  int arguments = 0;
};

// Totals over sentences rated strictly above `threshold`. Throws Error for
// ratings outside 1..5.
QualityStats ComputeQualityStats(const std::vector<RatedSentence> &sentences,
                                 int threshold = 2);

}  // namespace srlproj

#endif  // SRLPROJ_EVALUATION_H_

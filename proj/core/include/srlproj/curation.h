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

#ifndef SRLPROJ_CURATION_H_
#define SRLPROJ_CURATION_H_

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "srlproj/conll.h"
#include "srlproj/error.h"

namespace srlproj {

// Special-case categories an annotator can attach to a marked item.
enum class SpecialFlag {
  kNominalization,
  kLightVerb,
  kSeparablePrefix,
  kMwe,
  kNamedEntity,
  kOther,
};

const char *FlagName(SpecialFlag flag);
std::optional<SpecialFlag> ParseFlag(const std::string &name);

struct TaskArgument {
  int index = 0;
  std::string role;

  bool operator==(const TaskArgument &) const = default;
};

struct TaskPredicate {
  int index = 0;
  std::string sense;
  std::vector<TaskArgument> arguments;

  bool operator==(const TaskPredicate &) const = default;
};

// One sentence to rate and annotate. Indices are 1-based source tokens.
struct AnnotationTask {
  int task_id = 0;
  std::string sent_id;
  std::vector<std::string> source_tokens;
  std::vector<std::string> target_tokens;
  std::string target_text;
  std::vector<TaskPredicate> predicates;

  bool operator==(const AnnotationTask &) const = default;
};

// A predicate (argument == 0) or one of its arguments, by source index.
struct MarkableId {
  int predicate = 0;
  int argument = 0;

  bool is_predicate() const { return argument == 0; }
  std::string ToString() const;
  auto operator<=>(const MarkableId &) const = default;
};

struct MarkableResponse {
  MarkableId id;
  // Selected 1-based target tokens, sorted and unique; nullopt is NONE.
  std::optional<std::vector<int>> selection;
  std::set<SpecialFlag> flags;

  bool operator==(const MarkableResponse &) const = default;
};

struct AnnotationResponse {
  int task_id = 0;
  std::string coder_id;
  int quality = 0;
  std::vector<MarkableResponse> markables;
  std::optional<std::string> edited_target_text;

  const MarkableResponse *Find(const MarkableId &id) const;
  bool operator==(const AnnotationResponse &) const = default;
};

// Canonical comparable value of a markable: "NONE" or the sorted indices
// joined by commas.
std::string CanonicalValue(const MarkableResponse &markable);

struct FieldError {
  std::string path;
  std::string message;

  bool operator==(const FieldError &) const = default;
};

// Thrown by the JSON readers; carries every problem found.
class SchemaError : public Error {
 public:
  explicit SchemaError(std::vector<FieldError> errors);
  const std::vector<FieldError> &errors() const { return errors_; }

 private:
  std::vector<FieldError> errors_;
};

nlohmann::json ToJson(const AnnotationTask &task);
AnnotationTask TaskFromJson(const nlohmann::json &j);
nlohmann::json ToJson(const AnnotationResponse &response);
// Structural decoding only; see ValidateResponse for the task-dependent
// checks. Throws SchemaError.
AnnotationResponse ResponseFromJson(const nlohmann::json &j);

// Checks a response against its task: quality in 1..5, markables that exist
// in the task, selections inside the target sentence, known and non-duplicate
// markables, flags only on selections. Empty result means valid.
std::vector<FieldError> ValidateResponse(const AnnotationResponse &response,
                                         const AnnotationTask &task);

// JSON Lines files with a {"schema":..,"version":1} header record.
void WriteTaskFile(const std::string &path,
                   const std::vector<AnnotationTask> &tasks);
std::vector<AnnotationTask> ReadTaskFile(const std::string &path);
void WriteResponseFile(const std::string &path,
                       const std::vector<AnnotationResponse> &responses);
// Also accepts an annotation service log, from which the accepted
// submissions are taken.
std::vector<AnnotationResponse> ReadResponseFile(const std::string &path);

// One task per sentence pair, listing verbal source predicates (POS in
// `verbal_pos_tags`) with their labeled argument heads. Corpora are paired
// by sent_id; an unpaired sentence on either side is an Error.
std::vector<AnnotationTask> ExportTasks(
    const Corpus &source, const Corpus &target,
    const std::set<std::string> &verbal_pos_tags);

// Syntactic head of a token set: the leftmost span token that has no other
// span token among its ancestors. Falls back to the leftmost token when the
// parse gives no such token (cycles). Throws Error on an empty span or an
// index outside the sentence.
int HeadOfSpan(const std::vector<int> &span, const Sentence &sentence);

struct MergePolicy {
  // Sentences whose (median) rating is <= this are dropped.
  int quality_threshold = 2;
  // Used to find the verb stem in a separable-prefix selection.
  std::set<std::string> verbal_pos_tags = {"VERB", "AUX"};
};

struct AdjudicationItem {
  int task_id = 0;
  std::string sent_id;
  std::string markable;
  std::string reason;
  std::vector<std::string> values;
};

struct PendingEdit {
  int task_id = 0;
  std::string sent_id;
  std::string text;
  std::string reason;
};

struct MergeStats {
  int tasks = 0;
  int sentences_kept = 0;
  int sentences_dropped_quality = 0;
  int sentences_without_response = 0;
  int predicates_kept = 0;
  int arguments_kept = 0;
  int frames_dropped_none = 0;
  int frames_dropped_nominal = 0;
  int markables_relocated = 0;
  int edits_applied = 0;
};

struct MergeResult {
  Corpus gold;
  MergeStats stats;
  std::vector<AdjudicationItem> adjudication;
  std::vector<PendingEdit> pending_edits;
  std::vector<std::string> warnings;
};

// Builds the gold target corpus from human responses. `target` supplies the
// target tokens and dependency parses. Several responses per task are
// reduced by median quality and plurality per markable; ties go to the
// adjudication list instead of the gold data. A response for an unknown
// task is an Error.
MergeResult MergeValidated(const std::vector<AnnotationTask> &tasks,
                           const std::vector<AnnotationResponse> &responses,
                           const Corpus &target,
                           const MergePolicy &policy = {});

nlohmann::json ToJson(const MergeResult &result);

}  // namespace srlproj

#endif  // SRLPROJ_CURATION_H_

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

#include "srlproj/curation.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace srlproj {
namespace {

using nlohmann::json;

constexpr const char *kTaskSchema = "srlproj.tasks";
constexpr const char *kResponseSchema = "srlproj.responses";
constexpr const char *kServiceLogSchema = "srlproj.service_log";
constexpr int kSchemaVersion = 1;

constexpr std::array<std::pair<SpecialFlag, const char *>, 6> kFlagNames = {{
    {SpecialFlag::kNominalization, "nominalization"},
    {SpecialFlag::kLightVerb, "light_verb"},
    {SpecialFlag::kSeparablePrefix, "separable_prefix"},
    {SpecialFlag::kMwe, "mwe"},
    {SpecialFlag::kNamedEntity, "named_entity"},
    {SpecialFlag::kOther, "other"},
}};

std::string JoinErrors(const std::vector<FieldError> &errors) {
  std::string message = "schema violation:";
  for (const FieldError &e : errors) {
    message += " " + (e.path.empty() ? std::string("<record>") : e.path) +
               ": " + e.message + ";";
  }
  return message;
}

// Reads a JSON Lines file and checks its header. Returns the records after
// the header, each paired with its line number.
std::vector<std::pair<int, json>> ReadJsonLines(
    const std::string &path, std::initializer_list<const char *> schemas,
    std::string *schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::vector<std::pair<int, json>> records;
  std::string line;
  int line_number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error &e) {
      throw ParseError(path + ": invalid JSON: " + e.what(), line_number);
    }
    if (!have_header) {
      const std::string found = record.value("schema", "");
      if (std::none_of(schemas.begin(), schemas.end(),
                       [&](const char *s) { return found == s; })) {
        throw ParseError(path + ": unexpected schema '" + found + "'",
                         line_number);
      }
      if (record.value("version", 0) != kSchemaVersion) {
        throw ParseError(path + ": unsupported schema version", line_number);
      }
      *schema = found;
      have_header = true;
      continue;
    }
    records.emplace_back(line_number, std::move(record));
  }
  if (!have_header) throw Error(path + ": missing header record");
  return records;
}

void WriteJsonLines(const std::string &path, const char *schema,
                    const std::vector<json> &records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out << json{{"schema", schema}, {"version", kSchemaVersion}}.dump() << '\n';
  for (const json &record : records) out << record.dump() << '\n';
  if (!out.flush()) throw Error("failed writing '" + path + "'");
}

const Sentence *FindSentence(
    const std::unordered_map<std::string, const Sentence *> &index,
    const std::string &sent_id) {
  auto it = index.find(sent_id);
  return it == index.end() ? nullptr : it->second;
}

std::string FlagKey(const MarkableResponse &m) {
  std::string key = CanonicalValue(m) + "|";
  for (SpecialFlag flag : m.flags) key += std::string(FlagName(flag)) + ",";
  return key;
}

bool HasFlag(const MarkableResponse &m, SpecialFlag flag) {
  return m.flags.count(flag) > 0;
}

std::vector<std::string> WhitespaceTokens(const std::string &text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

}  // namespace

const char *FlagName(SpecialFlag flag) {
  for (const auto &[f, name] : kFlagNames) {
    if (f == flag) return name;
  }
  return "?";
}

std::optional<SpecialFlag> ParseFlag(const std::string &name) {
  for (const auto &[f, n] : kFlagNames) {
    if (name == n) return f;
  }
  return std::nullopt;
}

std::string MarkableId::ToString() const {
  std::string s = "p" + std::to_string(predicate);
  if (argument != 0) s += ":a" + std::to_string(argument);
  return s;
}

const MarkableResponse *AnnotationResponse::Find(const MarkableId &id) const {
  for (const MarkableResponse &m : markables) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

std::string CanonicalValue(const MarkableResponse &markable) {
  if (!markable.selection) return "NONE";
  std::vector<int> sorted = *markable.selection;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::string value;
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0) value += ',';
    value += std::to_string(sorted[i]);
  }
  return value;
}

SchemaError::SchemaError(std::vector<FieldError> errors)
    : Error(JoinErrors(errors)), errors_(std::move(errors)) {}

json ToJson(const AnnotationTask &task) {
  json predicates = json::array();
  for (const TaskPredicate &p : task.predicates) {
    json arguments = json::array();
    for (const TaskArgument &a : p.arguments) {
      arguments.push_back({{"index", a.index}, {"role", a.role}});
    }
    predicates.push_back({{"index", p.index},
                          {"sense", p.sense},
                          {"arguments", std::move(arguments)}});
  }
  return {{"task_id", task.task_id},
          {"sent_id", task.sent_id},
          {"source_tokens", task.source_tokens},
          {"target_tokens", task.target_tokens},
          {"target_text", task.target_text},
          {"predicates", std::move(predicates)}};
}

AnnotationTask TaskFromJson(const json &j) {
  try {
    AnnotationTask task;
    task.task_id = j.at("task_id").get<int>();
    task.sent_id = j.at("sent_id").get<std::string>();
    task.source_tokens = j.at("source_tokens").get<std::vector<std::string>>();
    task.target_tokens = j.at("target_tokens").get<std::vector<std::string>>();
    task.target_text = j.at("target_text").get<std::string>();
    for (const json &p : j.at("predicates")) {
      TaskPredicate predicate;
      predicate.index = p.at("index").get<int>();
      predicate.sense = p.at("sense").get<std::string>();
      for (const json &a : p.at("arguments")) {
        predicate.arguments.push_back(
            {a.at("index").get<int>(), a.at("role").get<std::string>()});
      }
      task.predicates.push_back(std::move(predicate));
    }
    return task;
  } catch (const json::exception &e) {
    throw SchemaError(std::vector<FieldError>{
        {"", std::string("malformed task: ") + e.what()}});
  }
}

json ToJson(const AnnotationResponse &response) {
  json markables = json::array();
  for (const MarkableResponse &m : response.markables) {
    json flags = json::array();
    for (SpecialFlag flag : m.flags) flags.push_back(FlagName(flag));
    markables.push_back(
        {{"predicate", m.id.predicate},
         {"argument", m.id.argument},
         {"selection", m.selection ? json(*m.selection) : json("NONE")},
         {"flags", std::move(flags)}});
  }
  return {{"task_id", response.task_id},
          {"coder_id", response.coder_id},
          {"quality", response.quality},
          {"markables", std::move(markables)},
          {"edited_target_text", response.edited_target_text
                                     ? json(*response.edited_target_text)
                                     : json(nullptr)}};
}

AnnotationResponse ResponseFromJson(const json &j) {
  std::vector<FieldError> errors;
  AnnotationResponse response;
  if (!j.is_object()) {
    throw SchemaError(std::vector<FieldError>{{"", "expected a JSON object"}});
  }

  auto integer = [&](const json &parent, const char *key,
                     const std::string &path, int *out, bool required) {
    auto it = parent.find(key);
    if (it == parent.end() || it->is_null()) {
      if (required) errors.push_back({path, "missing"});
      return;
    }
    if (!it->is_number_integer()) {
      errors.push_back({path, "expected an integer"});
      return;
    }
    *out = it->get<int>();
  };

  integer(j, "task_id", "task_id", &response.task_id, true);
  integer(j, "quality", "quality", &response.quality, true);
  if (auto it = j.find("coder_id"); it != j.end() && it->is_string()) {
    response.coder_id = it->get<std::string>();
  } else {
    errors.push_back({"coder_id", "expected a string"});
  }
  if (auto it = j.find("edited_target_text");
      it != j.end() && !it->is_null()) {
    if (it->is_string()) {
      response.edited_target_text = it->get<std::string>();
    } else {
      errors.push_back({"edited_target_text", "expected a string or null"});
    }
  }

  auto markables = j.find("markables");
  if (markables != j.end() && !markables->is_null()) {
    if (!markables->is_array()) {
      errors.push_back({"markables", "expected an array"});
    } else {
      for (size_t i = 0; i < markables->size(); ++i) {
        const json &m = (*markables)[i];
        const std::string path = "markables[" + std::to_string(i) + "]";
        if (!m.is_object()) {
          errors.push_back({path, "expected an object"});
          continue;
        }
        MarkableResponse markable;
        integer(m, "predicate", path + ".predicate", &markable.id.predicate,
                true);
        integer(m, "argument", path + ".argument", &markable.id.argument,
                false);
        auto selection = m.find("selection");
        if (selection == m.end()) {
          errors.push_back({path + ".selection", "missing"});
        } else if (selection->is_string() && *selection == "NONE") {
          markable.selection = std::nullopt;
        } else if (selection->is_array()) {
          std::vector<int> indices;
          for (size_t k = 0; k < selection->size(); ++k) {
            const json &v = (*selection)[k];
            if (!v.is_number_integer()) {
              errors.push_back({path + ".selection[" + std::to_string(k) + "]",
                                "expected an integer"});
              continue;
            }
            indices.push_back(v.get<int>());
          }
          std::sort(indices.begin(), indices.end());
          indices.erase(std::unique(indices.begin(), indices.end()),
                        indices.end());
          markable.selection = std::move(indices);
        } else {
          errors.push_back(
              {path + ".selection", "expected an index array or \"NONE\""});
        }
        if (auto flags = m.find("flags"); flags != m.end() && !flags->is_null()) {
          if (!flags->is_array()) {
            errors.push_back({path + ".flags", "expected an array"});
          } else {
            for (size_t k = 0; k < flags->size(); ++k) {
              const json &f = (*flags)[k];
              std::optional<SpecialFlag> flag =
                  f.is_string() ? ParseFlag(f.get<std::string>())
                                : std::nullopt;
              if (!flag) {
                errors.push_back({path + ".flags[" + std::to_string(k) + "]",
                                  "unknown special-case flag"});
                continue;
              }
              markable.flags.insert(*flag);
            }
          }
        }
        response.markables.push_back(std::move(markable));
      }
    }
  }
  if (!errors.empty()) throw SchemaError(std::move(errors));
  return response;
}

std::vector<FieldError> ValidateResponse(const AnnotationResponse &response,
                                         const AnnotationTask &task) {
  std::vector<FieldError> errors;
  if (response.task_id != task.task_id) {
    errors.push_back({"task_id", "does not match task " +
                                     std::to_string(task.task_id)});
  }
  if (response.coder_id.empty()) errors.push_back({"coder_id", "empty"});
  if (response.quality < 1 || response.quality > 5) {
    errors.push_back({"quality", "quality out of range (expected 1..5)"});
  }
  std::set<MarkableId> known;
  for (const TaskPredicate &p : task.predicates) {
    known.insert({p.index, 0});
    for (const TaskArgument &a : p.arguments) known.insert({p.index, a.index});
  }
  const int target_size = static_cast<int>(task.target_tokens.size());
  std::set<MarkableId> seen;
  for (size_t i = 0; i < response.markables.size(); ++i) {
    const MarkableResponse &m = response.markables[i];
    const std::string path = "markables[" + std::to_string(i) + "]";
    if (!known.count(m.id)) {
      errors.push_back({path, "unknown markable " + m.id.ToString()});
      continue;
    }
    if (!seen.insert(m.id).second) {
      errors.push_back({path, "duplicate markable " + m.id.ToString()});
    }
    if (m.selection) {
      if (m.selection->empty()) {
        errors.push_back({path + ".selection", "empty selection (use NONE)"});
      }
      for (size_t k = 0; k < m.selection->size(); ++k) {
        const int index = (*m.selection)[k];
        if (index < 1 || index > target_size) {
          errors.push_back({path + ".selection[" + std::to_string(k) + "]",
                            "target index " + std::to_string(index) +
                                " out of range"});
        }
      }
    } else if (!m.flags.empty()) {
      errors.push_back({path + ".flags", "flags require a selection"});
    }
  }
  return errors;
}

void WriteTaskFile(const std::string &path,
                   const std::vector<AnnotationTask> &tasks) {
  std::vector<json> records;
  records.reserve(tasks.size());
  for (const AnnotationTask &task : tasks) records.push_back(ToJson(task));
  WriteJsonLines(path, kTaskSchema, records);
}

std::vector<AnnotationTask> ReadTaskFile(const std::string &path) {
  std::string schema;
  std::vector<AnnotationTask> tasks;
  std::set<int> ids;
  for (auto &[line, record] : ReadJsonLines(path, {kTaskSchema}, &schema)) {
    try {
      tasks.push_back(TaskFromJson(record));
    } catch (const SchemaError &e) {
      throw ParseError(path + ": " + e.what(), line);
    }
    if (!ids.insert(tasks.back().task_id).second) {
      throw ParseError(path + ": duplicate task_id " +
                           std::to_string(tasks.back().task_id),
                       line);
    }
  }
  return tasks;
}

void WriteResponseFile(const std::string &path,
                       const std::vector<AnnotationResponse> &responses) {
  std::vector<json> records;
  records.reserve(responses.size());
  for (const AnnotationResponse &r : responses) records.push_back(ToJson(r));
  WriteJsonLines(path, kResponseSchema, records);
}

std::vector<AnnotationResponse> ReadResponseFile(const std::string &path) {
  std::string schema;
  std::vector<AnnotationResponse> responses;
  for (auto &[line, record] :
       ReadJsonLines(path, {kResponseSchema, kServiceLogSchema}, &schema)) {
    try {
      if (schema == kServiceLogSchema) {
        if (record.value("event", "") != "submit" ||
            !record.value("accepted", false)) {
          continue;
        }
        responses.push_back(ResponseFromJson(record.at("response")));
      } else {
        responses.push_back(ResponseFromJson(record));
      }
    } catch (const SchemaError &e) {
      throw ParseError(path + ": " + e.what(), line);
    } catch (const json::exception &e) {
      throw ParseError(path + ": " + e.what(), line);
    }
  }
  return responses;
}

std::vector<AnnotationTask> ExportTasks(
    const Corpus &source, const Corpus &target,
    const std::set<std::string> &verbal_pos_tags) {
  std::unordered_map<std::string, const Sentence *> targets;
  for (const Sentence &t : target) targets.emplace(t.sent_id, &t);
  std::set<std::string> source_ids;
  std::vector<std::string> unpaired;
  for (const Sentence &s : source) {
    source_ids.insert(s.sent_id);
    if (!targets.count(s.sent_id)) unpaired.push_back("source:" + s.sent_id);
  }
  for (const Sentence &t : target) {
    if (!source_ids.count(t.sent_id)) unpaired.push_back("target:" + t.sent_id);
  }
  if (!unpaired.empty()) {
    std::string message = "unpaired sentences:";
    for (const std::string &id : unpaired) message += " " + id;
    throw Error(message);
  }

  std::vector<AnnotationTask> tasks;
  tasks.reserve(source.size());
  for (const Sentence &s : source) {
    const Sentence &t = *targets.at(s.sent_id);
    AnnotationTask task;
    task.task_id = static_cast<int>(tasks.size()) + 1;
    task.sent_id = s.sent_id;
    for (const Token &token : s.tokens) task.source_tokens.push_back(token.form);
    for (const Token &token : t.tokens) {
      if (!task.target_text.empty()) task.target_text += ' ';
      task.target_text += token.form;
      task.target_tokens.push_back(token.form);
    }
    for (const PredicateFrame &frame : s.frames) {
      if (!verbal_pos_tags.count(s.token(frame.predicate_index).pos)) continue;
      TaskPredicate predicate{frame.predicate_index, frame.sense, {}};
      for (const Role &role : frame.roles) {
        predicate.arguments.push_back({role.index, role.label});
      }
      task.predicates.push_back(std::move(predicate));
    }
    tasks.push_back(std::move(task));
  }
  return tasks;
}

int HeadOfSpan(const std::vector<int> &span, const Sentence &sentence) {
  if (span.empty()) throw Error("head of an empty span");
  std::vector<bool> in_span(sentence.tokens.size() + 1, false);
  for (int index : span) {
    if (index < 1 || index > sentence.size()) {
      throw Error("span index " + std::to_string(index) +
                  " outside sentence '" + sentence.sent_id + "'");
    }
    in_span[index] = true;
  }
  std::vector<int> sorted = span;
  std::sort(sorted.begin(), sorted.end());
  for (int t : sorted) {
    bool dominated = false;
    // Bounded walk so a cyclic parse cannot loop forever.
    int h = sentence.token(t).head;
    for (int steps = 0; h != 0 && steps < sentence.size(); ++steps) {
      if (h == t) break;
      if (in_span[h]) {
        dominated = true;
        break;
      }
      h = sentence.token(h).head;
    }
    if (!dominated) return t;
  }
  return sorted.front();
}

MergeResult MergeValidated(const std::vector<AnnotationTask> &tasks,
                           const std::vector<AnnotationResponse> &responses,
                           const Corpus &target, const MergePolicy &policy) {
  MergeResult result;
  std::map<int, const AnnotationTask *> task_by_id;
  for (const AnnotationTask &task : tasks) task_by_id.emplace(task.task_id, &task);
  std::unordered_map<std::string, const Sentence *> target_by_id;
  for (const Sentence &s : target) target_by_id.emplace(s.sent_id, &s);

  // Latest response per (task, coder); coders iterate in id order.
  std::map<int, std::map<std::string, const AnnotationResponse *>> by_task;
  for (const AnnotationResponse &r : responses) {
    if (!task_by_id.count(r.task_id)) {
      throw Error("response from coder '" + r.coder_id +
                  "' references unknown task " + std::to_string(r.task_id));
    }
    by_task[r.task_id][r.coder_id] = &r;
  }

  auto warn = [&](const AnnotationTask &task, const std::string &what) {
    result.warnings.push_back("task " + std::to_string(task.task_id) + " (" +
                              task.sent_id + "): " + what);
  };

  for (const AnnotationTask &task : tasks) {
    ++result.stats.tasks;
    auto responses_it = by_task.find(task.task_id);
    if (responses_it == by_task.end()) {
      ++result.stats.sentences_without_response;
      continue;
    }
    std::vector<const AnnotationResponse *> coded;
    for (const auto &[coder, r] : responses_it->second) coded.push_back(r);

    for (const AnnotationResponse *r : coded) {
      for (const FieldError &e : ValidateResponse(*r, task)) {
        warn(task, "coder " + r->coder_id + ": " + e.path + ": " + e.message);
      }
    }

    std::vector<int> ratings;
    for (const AnnotationResponse *r : coded) ratings.push_back(r->quality);
    std::sort(ratings.begin(), ratings.end());
    const size_t mid = ratings.size() / 2;
    const double quality = ratings.size() % 2 == 1
                               ? ratings[mid]
                               : (ratings[mid - 1] + ratings[mid]) / 2.0;
    if (quality <= policy.quality_threshold) {
      ++result.stats.sentences_dropped_quality;
      continue;
    }

    const Sentence *base = FindSentence(target_by_id, task.sent_id);
    if (base == nullptr) {
      throw Error("task " + std::to_string(task.task_id) + ": sentence '" +
                  task.sent_id + "' is missing from the target corpus");
    }
    Sentence gold;
    gold.sent_id = base->sent_id;
    gold.tokens = base->tokens;

    std::set<std::string> edits;
    for (const AnnotationResponse *r : coded) {
      if (r->edited_target_text && *r->edited_target_text != task.target_text) {
        edits.insert(*r->edited_target_text);
      }
    }
    if (edits.size() > 1) {
      for (const std::string &text : edits) {
        result.pending_edits.push_back(
            {task.task_id, task.sent_id, text, "conflicting edits"});
      }
    } else if (edits.size() == 1) {
      const std::string &text = *edits.begin();
      std::vector<std::string> forms = WhitespaceTokens(text);
      if (forms.size() == gold.tokens.size()) {
        for (size_t i = 0; i < forms.size(); ++i) gold.tokens[i].form = forms[i];
        ++result.stats.edits_applied;
      } else {
        result.pending_edits.push_back(
            {task.task_id, task.sent_id, text,
             "token count changed; needs re-annotation"});
      }
    }

    // Plurality value of one markable across coders; nullopt when nobody
    // addressed it or when the top value is tied.
    auto resolve = [&](const MarkableId &id) -> std::optional<MarkableResponse> {
      std::map<std::string, std::pair<int, const MarkableResponse *>> votes;
      for (const AnnotationResponse *r : coded) {
        if (const MarkableResponse *m = r->Find(id)) {
          auto &entry = votes[FlagKey(*m)];
          ++entry.first;
          entry.second = m;
        }
      }
      if (votes.empty()) {
        warn(task, "markable " + id.ToString() + " was not addressed");
        return std::nullopt;
      }
      int best = 0, ties = 0;
      const MarkableResponse *winner = nullptr;
      for (const auto &[key, entry] : votes) {
        if (entry.first > best) {
          best = entry.first;
          ties = 1;
          winner = entry.second;
        } else if (entry.first == best) {
          ++ties;
        }
      }
      if (ties > 1) {
        AdjudicationItem item{task.task_id, task.sent_id, id.ToString(),
                              "tied responses", {}};
        for (const auto &[key, entry] : votes) item.values.push_back(key);
        result.adjudication.push_back(std::move(item));
        return std::nullopt;
      }
      if (!winner->selection && !winner->flags.empty()) {
        warn(task, "markable " + id.ToString() + " has flags but no selection");
      }
      return *winner;
    };

    // Single gold token for a selection.
    auto locate = [&](const MarkableResponse &m, bool predicate) {
      const std::vector<int> &selection = *m.selection;
      if (predicate && HasFlag(m, SpecialFlag::kSeparablePrefix)) {
        for (int index : selection) {
          if (policy.verbal_pos_tags.count(gold.token(index).pos)) {
            if (selection.size() > 1) ++result.stats.markables_relocated;
            return index;
          }
        }
      }
      if (selection.size() == 1 && !HasFlag(m, SpecialFlag::kMwe) &&
          !HasFlag(m, SpecialFlag::kNamedEntity)) {
        return selection.front();
      }
      if (selection.size() > 1) ++result.stats.markables_relocated;
      return HeadOfSpan(selection, gold);
    };

    auto in_range = [&](const MarkableResponse &m) {
      if (m.selection->empty()) return false;
      for (int index : *m.selection) {
        if (index < 1 || index > gold.size()) return false;
      }
      return true;
    };

    std::set<int> claimed_predicates;
    for (const TaskPredicate &predicate : task.predicates) {
      const MarkableId pid{predicate.index, 0};
      std::optional<MarkableResponse> p = resolve(pid);
      if (!p) continue;
      if (!p->selection) {
        ++result.stats.frames_dropped_none;
        continue;
      }
      if (HasFlag(*p, SpecialFlag::kNominalization) ||
          HasFlag(*p, SpecialFlag::kLightVerb)) {
        ++result.stats.frames_dropped_nominal;
        continue;
      }
      if (!in_range(*p)) {
        warn(task, "markable " + pid.ToString() + " has an invalid selection");
        continue;
      }
      PredicateFrame frame;
      frame.predicate_index = locate(*p, true);
      frame.sense = predicate.sense;
      if (!claimed_predicates.insert(frame.predicate_index).second) {
        result.adjudication.push_back(
            {task.task_id, task.sent_id, pid.ToString(),
             "target predicate token already taken by another frame",
             {std::to_string(frame.predicate_index)}});
        continue;
      }
      std::set<int> claimed_arguments;
      for (const TaskArgument &argument : predicate.arguments) {
        const MarkableId aid{predicate.index, argument.index};
        std::optional<MarkableResponse> a = resolve(aid);
        if (!a || !a->selection) continue;
        if (!in_range(*a)) {
          warn(task, "markable " + aid.ToString() + " has an invalid selection");
          continue;
        }
        const int head = locate(*a, false);
        if (!claimed_arguments.insert(head).second) {
          warn(task, "markable " + aid.ToString() + " resolves to token " +
                         std::to_string(head) +
                         " which already carries a role; dropped");
          continue;
        }
        frame.roles.push_back({head, argument.role});
      }
      gold.frames.push_back(std::move(frame));
    }
    CanonicalizeFrames(&gold);
    ++result.stats.sentences_kept;
    result.stats.predicates_kept += static_cast<int>(gold.frames.size());
    for (const PredicateFrame &frame : gold.frames) {
      result.stats.arguments_kept += static_cast<int>(frame.roles.size());
    }
    result.gold.push_back(std::move(gold));
  }
  return result;
}

json ToJson(const MergeResult &result) {
  const MergeStats &s = result.stats;
  json adjudication = json::array();
  for (const AdjudicationItem &item : result.adjudication) {
    adjudication.push_back({{"task_id", item.task_id},
                            {"sent_id", item.sent_id},
                            {"markable", item.markable},
                            {"reason", item.reason},
                            {"values", item.values}});
  }
  json edits = json::array();
  for (const PendingEdit &edit : result.pending_edits) {
    edits.push_back({{"task_id", edit.task_id},
                     {"sent_id", edit.sent_id},
                     {"text", edit.text},
                     {"reason", edit.reason}});
  }
  return {{"stats",
           {{"tasks", s.tasks},
            {"sentences_kept", s.sentences_kept},
            {"sentences_dropped_quality", s.sentences_dropped_quality},
            {"sentences_without_response", s.sentences_without_response},
            {"predicates_kept", s.predicates_kept},
            {"arguments_kept", s.arguments_kept},
            {"frames_dropped_none", s.frames_dropped_none},
            {"frames_dropped_nominal", s.frames_dropped_nominal},
            {"markables_relocated", s.markables_relocated},
            {"edits_applied", s.edits_applied}}},
          {"needs_adjudication", std::move(adjudication)},
          {"pending_edits", std::move(edits)},
          {"warnings", result.warnings}};
}

}  // namespace srlproj

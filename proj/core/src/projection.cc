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

#include "srlproj/projection.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "srlproj/parallel.h"
#include "srlproj/error.h"

namespace srlproj {
namespace {

// Picks one winner per target token: higher score wins, the earlier
// claimant on equal scores. Returns, per claimant, the index of the winning
// claimant (itself if it won).
template <typename Claim>
std::vector<size_t> ResolveClaims(const std::vector<Claim> &claims) {
  std::map<int, size_t> best;
  for (size_t i = 0; i < claims.size(); ++i) {
    auto [it, inserted] = best.emplace(claims[i].choice.target, i);
    if (!inserted && claims[i].choice.score > claims[it->second].choice.score) {
      it->second = i;
    }
  }
  std::vector<size_t> winner(claims.size());
  for (size_t i = 0; i < claims.size(); ++i) {
    winner[i] = best.at(claims[i].choice.target);
  }
  return winner;
}

std::string TargetSense(const std::string &source_sense, const Token &target,
                        SensePolicy policy) {
  if (policy == SensePolicy::kCopySource) return source_sense;
  const std::string &lemma = target.lemma.empty() ? target.form : target.lemma;
  const size_t dot = source_sense.rfind('.');
  if (dot == std::string::npos) return lemma;
  return lemma + source_sense.substr(dot);
}

}  // namespace

const char *SensePolicyName(SensePolicy policy) {
  return policy == SensePolicy::kCopySource ? "copy_source"
                                            : "target_lemma_sense";
}

SensePolicy ParseSensePolicy(const std::string &name) {
  if (name == "copy_source") return SensePolicy::kCopySource;
  if (name == "target_lemma_sense") return SensePolicy::kTargetLemmaSense;
  throw ConfigError("unknown sense policy '" + name +
                    "' (expected copy_source or target_lemma_sense)");
}

void ProjectionConfig::Validate() const {
  if (alignment.k < 1) throw ConfigError("k must be >= 1");
  if (filters_enabled && verbal_pos_tags.empty()) {
    throw ConfigError("verbal POS tag set is empty while filters are enabled");
  }
}

double ProjectionCounts::coverage() const {
  const int source = source_predicates + source_arguments;
  if (source == 0) return 1.0;
  return static_cast<double>(predicates_projected + arguments_projected) /
         source;
}

ProjectionCounts &ProjectionCounts::operator+=(const ProjectionCounts &o) {
  source_predicates += o.source_predicates;
  source_arguments += o.source_arguments;
  predicates_projected += o.predicates_projected;
  predicates_dropped_no_candidate += o.predicates_dropped_no_candidate;
  predicates_dropped_no_verbal_candidate +=
      o.predicates_dropped_no_verbal_candidate;
  predicates_dropped_collision += o.predicates_dropped_collision;
  arguments_projected += o.arguments_projected;
  arguments_dropped_no_candidate += o.arguments_dropped_no_candidate;
  arguments_dropped_predicate_dropped += o.arguments_dropped_predicate_dropped;
  arguments_dropped_collision += o.arguments_dropped_collision;
  return *this;
}

void ProjectionReport::Append(SentenceReport sentence) {
  totals += sentence.counts;
  sentences.push_back(std::move(sentence));
}

std::optional<Choice> ProjectPredicate(const PredicateFrame &frame,
                                       const CandidateTable &table,
                                       const Sentence &target,
                                       const ProjectionConfig &config) {
  std::optional<Choice> best;
  for (const Candidate &c : table.candidates(frame.predicate_index)) {
    if (c.word < 1 || c.word > target.size()) continue;
    if (config.filters_enabled &&
        !config.verbal_pos_tags.count(target.token(c.word).pos)) {
      continue;
    }
    // Candidates are ordered by word, so strict > keeps the lower index.
    if (!best || c.max_score > best->score) best = Choice{c.word, c.max_score};
  }
  return best;
}

std::optional<Choice> ProjectArgument(const Role &argument,
                                      const CandidateTable &table,
                                      const ProjectionConfig &) {
  const Candidate *best = nullptr;
  for (const Candidate &c : table.candidates(argument.index)) {
    if (best == nullptr || c.votes > best->votes ||
        (c.votes == best->votes && c.max_score > best->max_score)) {
      best = &c;
    }
  }
  if (best == nullptr) return std::nullopt;
  return Choice{best->word, best->max_score};
}

ProjectedSentence ProjectSentence(const Sentence &source,
                                  const Sentence &target,
                                  const CandidateTable &table,
                                  const ProjectionConfig &config) {
  if (config.filters_enabled) {
    for (const Token &token : target.tokens) {
      if (token.pos.empty()) {
        throw ConfigError("target sentence '" + target.sent_id + "' token " +
                          std::to_string(token.index) +
                          " has no POS tag; the verbal filter needs POS");
      }
    }
  }

  ProjectedSentence out;
  out.sentence.sent_id = target.sent_id;
  out.sentence.tokens = target.tokens;
  SentenceReport &report = out.report;
  report.sent_id = source.sent_id;
  ProjectionCounts &counts = report.counts;

  struct PredicateClaim {
    int frame;
    Choice choice;
  };
  std::vector<PredicateClaim> predicates;
  for (size_t f = 0; f < source.frames.size(); ++f) {
    const PredicateFrame &frame = source.frames[f];
    ++counts.source_predicates;
    counts.source_arguments += static_cast<int>(frame.roles.size());
    std::optional<Choice> choice =
        ProjectPredicate(frame, table, target, config);
    if (!choice) {
      if (table.candidates(frame.predicate_index).empty() ||
          !config.filters_enabled) {
        ++counts.predicates_dropped_no_candidate;
      } else {
        ++counts.predicates_dropped_no_verbal_candidate;
      }
      counts.arguments_dropped_predicate_dropped +=
          static_cast<int>(frame.roles.size());
      continue;
    }
    predicates.push_back({static_cast<int>(f), *choice});
  }

  const std::vector<size_t> predicate_winner = ResolveClaims(predicates);
  for (size_t p = 0; p < predicates.size(); ++p) {
    const PredicateFrame &frame = source.frames[predicates[p].frame];
    if (predicate_winner[p] != p) {
      const PredicateFrame &winner =
          source.frames[predicates[predicate_winner[p]].frame];
      ++counts.predicates_dropped_collision;
      counts.arguments_dropped_predicate_dropped +=
          static_cast<int>(frame.roles.size());
      report.collisions.push_back({Collision::Kind::kPredicate,
                                   predicates[p].frame, frame.predicate_index,
                                   winner.predicate_index,
                                   predicates[p].choice.target});
      continue;
    }
    ++counts.predicates_projected;

    struct ArgumentClaim {
      int role;
      Choice choice;
    };
    std::vector<ArgumentClaim> arguments;
    for (size_t r = 0; r < frame.roles.size(); ++r) {
      std::optional<Choice> choice =
          ProjectArgument(frame.roles[r], table, config);
      if (!choice || choice->target < 1 || choice->target > target.size()) {
        ++counts.arguments_dropped_no_candidate;
        continue;
      }
      arguments.push_back({static_cast<int>(r), *choice});
    }
    const std::vector<size_t> argument_winner = ResolveClaims(arguments);

    PredicateFrame projected;
    projected.predicate_index = predicates[p].choice.target;
    projected.sense = TargetSense(
        frame.sense, target.token(projected.predicate_index),
        config.sense_policy);
    for (size_t a = 0; a < arguments.size(); ++a) {
      const Role &role = frame.roles[arguments[a].role];
      if (argument_winner[a] != a) {
        ++counts.arguments_dropped_collision;
        report.collisions.push_back(
            {Collision::Kind::kArgument, predicates[p].frame, role.index,
             frame.roles[arguments[argument_winner[a]].role].index,
             arguments[a].choice.target});
        continue;
      }
      ++counts.arguments_projected;
      projected.roles.push_back({arguments[a].choice.target, role.label});
    }
    out.sentence.frames.push_back(std::move(projected));
  }
  CanonicalizeFrames(&out.sentence);
  return out;
}

ProjectionResult ProjectCorpus(const std::vector<SentencePair> &pairs,
                               const ProjectionConfig &config, int jobs) {
  config.Validate();
  std::vector<ProjectedSentence> projected(pairs.size());
  ParallelFor(pairs.size(), jobs, [&](size_t i) {
    const SentencePair &pair = pairs[i];
    const CandidateTable table = AlignSentencePair(
        *pair.source_encoding, *pair.target_encoding, config.alignment);
    projected[i] = ProjectSentence(*pair.source, *pair.target, table, config);
  });
  ProjectionResult result;
  result.corpus.reserve(projected.size());
  for (ProjectedSentence &p : projected) {
    result.corpus.push_back(std::move(p.sentence));
    result.report.Append(std::move(p.report));
  }
  return result;
}

nlohmann::json ToJson(const ProjectionCounts &c) {
  return {
      {"source_predicates", c.source_predicates},
      {"source_arguments", c.source_arguments},
      {"predicates_projected", c.predicates_projected},
      {"predicates_dropped",
       {{"no_candidate", c.predicates_dropped_no_candidate},
        {"no_verbal_candidate", c.predicates_dropped_no_verbal_candidate},
        {"collision", c.predicates_dropped_collision}}},
      {"arguments_projected", c.arguments_projected},
      {"arguments_dropped",
       {{"no_candidate", c.arguments_dropped_no_candidate},
        {"predicate_dropped", c.arguments_dropped_predicate_dropped},
        {"collision", c.arguments_dropped_collision}}},
      {"coverage", c.coverage()},
  };
}

nlohmann::json ToJson(const ProjectionReport &report,
                      const ProjectionConfig &config) {
  nlohmann::json sentences = nlohmann::json::array();
  for (const SentenceReport &s : report.sentences) {
    nlohmann::json collisions = nlohmann::json::array();
    for (const Collision &c : s.collisions) {
      collisions.push_back(
          {{"kind", c.kind == Collision::Kind::kPredicate ? "predicate"
                                                          : "argument"},
           {"frame", c.frame},
           {"losing_source", c.losing_source},
           {"winning_source", c.winning_source},
           {"target", c.target}});
    }
    sentences.push_back({{"sent_id", s.sent_id},
                         {"counts", ToJson(s.counts)},
                         {"collisions", std::move(collisions)}});
  }
  return {
      {"config",
       {{"k", config.alignment.k},
        {"mode", AlignmentModeName(config.alignment.mode)},
        {"filters", config.filters_enabled},
        {"verbal_pos", config.verbal_pos_tags},
        {"sense_policy", SensePolicyName(config.sense_policy)}}},
      {"totals", ToJson(report.totals)},
      {"sentences", std::move(sentences)},
  };
}

std::string FormatReport(const ProjectionReport &report) {
  const ProjectionCounts &t = report.totals;
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-12s %8s %10s %8s %10s %10s %10s\n",
                "", "source", "projected", "dropped", "no_cand", "no_verbal",
                "collision");
  out << line;
  std::snprintf(line, sizeof(line), "%-12s %8d %10d %8d %10d %10d %10d\n",
                "predicates", t.source_predicates, t.predicates_projected,
                t.predicates_dropped(), t.predicates_dropped_no_candidate,
                t.predicates_dropped_no_verbal_candidate,
                t.predicates_dropped_collision);
  out << line;
  std::snprintf(line, sizeof(line), "%-12s %8d %10d %8d %10d %10s %10d\n",
                "arguments", t.source_arguments, t.arguments_projected,
                t.arguments_dropped(), t.arguments_dropped_no_candidate, "-",
                t.arguments_dropped_collision);
  out << line;
  std::snprintf(line, sizeof(line), "sentences %zu, coverage %.1f%%\n",
                report.sentences.size(), 100.0 * t.coverage());
  out << line;
  return out.str();
}

}  // namespace srlproj

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

#include "srlproj/evaluation.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "srlproj/error.h"

namespace srlproj {
namespace {

double Ratio(int num, int den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / den;
}

const PredicateFrame *FindFrame(const Sentence &sentence, int predicate) {
  for (const PredicateFrame &frame : sentence.frames) {
    if (frame.predicate_index == predicate) return &frame;
  }
  return nullptr;
}

int CountArgs(const PredicateFrame &frame) {
  return static_cast<int>(frame.roles.size());
}

// Number of (index, label) pairs the two frames share.
int MatchingRoles(const PredicateFrame &a, const PredicateFrame &b) {
  int matches = 0;
  for (const Role &role : a.roles) {
    for (const Role &other : b.roles) {
      if (other.index == role.index && other.label == role.label) ++matches;
    }
  }
  return matches;
}

nlohmann::json PrfJson(const Prf &prf) {
  return {{"tp", prf.tp},
          {"fp", prf.fp},
          {"fn", prf.fn},
          {"precision", prf.precision()},
          {"recall", prf.recall()},
          {"f1", prf.f1()}};
}

}  // namespace

double Prf::precision() const { return Ratio(tp, tp + fp); }
double Prf::recall() const { return Ratio(tp, tp + fn); }

double Prf::f1() const {
  const double p = precision(), r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

Prf &Prf::operator+=(const Prf &other) {
  tp += other.tp;
  fp += other.fp;
  fn += other.fn;
  return *this;
}

EvalReport EvaluateProjection(const Corpus &projected, const Corpus &gold,
                              const EvalOptions &options) {
  std::unordered_map<std::string, const Sentence *> by_id;
  for (const Sentence &s : projected) by_id.emplace(s.sent_id, &s);
  std::vector<std::string> missing;
  for (const Sentence &g : gold) {
    if (!by_id.count(g.sent_id)) missing.push_back(g.sent_id);
  }
  if (!missing.empty()) {
    std::string message = "gold sentences missing from projected corpus:";
    for (const std::string &id : missing) message += " " + id;
    throw Error(message);
  }

  EvalReport report;
  for (const Sentence &g : gold) {
    const Sentence &p = *by_id.at(g.sent_id);
    for (const PredicateFrame &gold_frame : g.frames) {
      const PredicateFrame *match = FindFrame(p, gold_frame.predicate_index);
      if (match != nullptr && options.strict_sense &&
          match->sense != gold_frame.sense) {
        match = nullptr;
      }
      if (match == nullptr) {
        ++report.predicate.fn;
        report.argument.fn += CountArgs(gold_frame);
        continue;
      }
      ++report.predicate.tp;
      const int tp = MatchingRoles(*match, gold_frame);
      report.argument.tp += tp;
      report.argument.fp += CountArgs(*match) - tp;
      report.argument.fn += CountArgs(gold_frame) - tp;
    }
    for (const PredicateFrame &frame : p.frames) {
      const PredicateFrame *match = FindFrame(g, frame.predicate_index);
      if (match != nullptr && options.strict_sense &&
          match->sense != frame.sense) {
        match = nullptr;
      }
      if (match == nullptr) {
        ++report.predicate.fp;
        report.argument.fp += CountArgs(frame);
      }
    }
  }
  report.unscored_sentences =
      static_cast<int>(projected.size()) - static_cast<int>(gold.size());
  report.combined = report.predicate;
  report.combined += report.argument;
  return report;
}

nlohmann::json ToJson(const EvalReport &report) {
  return {{"predicate", PrfJson(report.predicate)},
          {"argument", PrfJson(report.argument)},
          {"combined", PrfJson(report.combined)},
          {"unscored_sentences", report.unscored_sentences}};
}

std::string FormatEvalReport(const EvalReport &report) {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-10s %7s %7s %7s %7s %7s %7s\n", "", "P",
                "R", "F1", "TP", "FP", "FN");
  out << line;
  auto row = [&](const char *name, const Prf &prf) {
    std::snprintf(line, sizeof(line),
                  "%-10s %7.1f %7.1f %7.1f %7d %7d %7d\n", name,
                  100.0 * prf.precision(), 100.0 * prf.recall(),
                  100.0 * prf.f1(), prf.tp, prf.fp, prf.fn);
    out << line;
  };
  row("predicate", report.predicate);
  row("argument", report.argument);
  row("combined", report.combined);
  return out.str();
}

DensityReport LabelDensity(
    const std::vector<std::pair<std::string, const Corpus *>> &corpora,
    int top_n) {
  if (corpora.empty()) throw Error("label density needs at least one corpus");
  DensityReport report;
  const size_t n = corpora.size();
  std::vector<int> totals(n, 0);
  for (size_t c = 0; c < n; ++c) {
    report.corpus_names.push_back(corpora[c].first);
    auto bump = [&](const std::string &label) {
      auto [it, inserted] = report.counts.try_emplace(label, n, 0);
      ++it->second[c];
      ++totals[c];
    };
    for (const Sentence &sentence : *corpora[c].second) {
      for (const PredicateFrame &frame : sentence.frames) {
        bump("PRED");
        for (const Role &role : frame.roles) bump(role.label);
      }
    }
  }
  for (const auto &[label, counts] : report.counts) {
    report.top_labels.push_back(label);
  }
  std::stable_sort(report.top_labels.begin(), report.top_labels.end(),
                   [&](const std::string &a, const std::string &b) {
                     return report.counts.at(a)[0] > report.counts.at(b)[0];
                   });
  if (top_n > 0 && static_cast<size_t>(top_n) < report.top_labels.size()) {
    report.top_labels.resize(top_n);
  }
  for (size_t c = 0; c < n; ++c) {
    report.coverage.push_back(totals[0] == 0
                                  ? (totals[c] == 0 ? 1.0 : 0.0)
                                  : static_cast<double>(totals[c]) / totals[0]);
  }
  return report;
}

nlohmann::json ToJson(const DensityReport &report) {
  nlohmann::json top = nlohmann::json::array();
  for (const std::string &label : report.top_labels) {
    nlohmann::json counts;
    for (size_t c = 0; c < report.corpus_names.size(); ++c) {
      counts[report.corpus_names[c]] = report.counts.at(label)[c];
    }
    top.push_back({{"label", label}, {"counts", std::move(counts)}});
  }
  nlohmann::json coverage;
  for (size_t c = 0; c < report.corpus_names.size(); ++c) {
    coverage[report.corpus_names[c]] = report.coverage[c];
  }
  return {{"corpora", report.corpus_names},
          {"top_labels", std::move(top)},
          {"coverage", std::move(coverage)}};
}

std::string DensityCsv(const DensityReport &report) {
  std::ostringstream out;
  out << "label";
  for (const std::string &name : report.corpus_names) out << ',' << name;
  out << '\n';
  for (const std::string &label : report.top_labels) {
    out << label;
    for (int count : report.counts.at(label)) out << ',' << count;
    out << '\n';
  }
  return out.str();
}

QualityStats ComputeQualityStats(const std::vector<RatedSentence> &sentences,
                                 int threshold) {
  QualityStats stats;
  for (size_t i = 0; i < sentences.size(); ++i) {
    const RatedSentence &s = sentences[i];
    if (s.rating < 1 || s.rating > 5) {
      throw Error("rating " + std::to_string(s.rating) + " of sentence " +
                  std::to_string(i) + " is outside 1..5");
    }
    if (s.rating <= threshold) continue;
    ++stats.sentences;
    stats.predicates += s.predicates;
    stats.arguments += s.arguments;
  }
  return stats;
}

}  // namespace srlproj

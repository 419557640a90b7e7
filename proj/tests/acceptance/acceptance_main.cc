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

// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracles.h"
#include "srlproj/agreement.h"
#include "srlproj/alignment.h"
#include "srlproj/bundle.h"
#include "srlproj/conll.h"
#include "srlproj/curation.h"
#include "srlproj/error.h"
#include "srlproj/evaluation.h"
#include "srlproj/projection.h"
#include "srlproj/service.h"
#include "srlproj/similarity.h"
#include "synthetic.h"

namespace srlproj {
namespace {

using testing::SyntheticCase;

// Thrown by Check() with a description of the first violated expectation.
struct Failure {
  std::string what;
};

void Check(bool condition, const std::string &what) {
  if (!condition) throw Failure{what};
}

std::string Fixed(double x, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

std::string Sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", x);
  return buf;
}

struct Criterion {
  std::string name;
  // Wall-clock limit in seconds; 0 means none.
  double limit;
  std::function<std::string()> run;
};

// Each run returns a short summary of what was measured.

std::string Table3Arithmetic() {
  struct Row {
    const char *language;
    int histogram[5];  // ratings 1..5
    int kept;
  };
  const Row rows[] = {{"DE", {22, 164, 593, 902, 718}, 2213},
                      {"ES", {15, 46, 181, 407, 1758}, 2346},
                      {"FR", {119, 184, 274, 463, 1358}, 2095}};
  std::string summary;
  for (const Row &row : rows) {
    std::vector<RatedSentence> sentences;
    for (int rating = 1; rating <= 5; ++rating) {
      for (int i = 0; i < row.histogram[rating - 1]; ++i) {
        sentences.push_back({rating, 0, 0});
      }
    }
    const int kept = ComputeQualityStats(sentences).sentences;
    Check(kept == row.kept, std::string(row.language) + " kept " +
                                std::to_string(kept) + ", expected " +
                                std::to_string(row.kept));
    summary += std::string(row.language) + "=" + std::to_string(kept) + " ";
  }
  return summary;
}

std::string TopKOracle() {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> size(1, 12), k(1, 4), level(0, 7);
  std::uniform_real_distribution<double> real(-1, 1);
  for (int round = 0; round < 1000; ++round) {
    const int p = size(rng), q = size(rng), kk = k(rng);
    std::vector<std::vector<double>> m(p, std::vector<double>(q));
    SimilarityMatrix sm(p, q);
    // Half the matrices use coarse values so ties are exercised.
    const bool coarse = round % 2 == 0;
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < q; ++j) {
        m[i][j] = coarse ? level(rng) / 7.0 : real(rng);
        sm.at(i, j) = m[i][j];
      }
    }
    for (bool s2t : {true, false}) {
      Check(TopKPairs(sm, kk,
                      s2t ? Direction::kSourceToTarget
                          : Direction::kTargetToSource) ==
                testing::SortAndTruncateTopK(m, kk, s2t),
            "mismatch on matrix " + std::to_string(round));
    }
  }
  return "1000 matrices x 2 directions exact";
}

PieceEncoding RandomEncoding(std::mt19937 &rng, int pieces, int dim) {
  std::normal_distribution<float> normal;
  PieceEncoding e;
  e.dim = dim;
  for (int p = 0; p < pieces; ++p) {
    e.pieces.push_back("p");
    e.word_index.push_back(p + 1);
    for (int d = 0; d < dim; ++d) e.vectors.push_back(normal(rng));
  }
  return e;
}

std::string CosineOracle() {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> size(1, 40), dim(1, 96);
  std::uniform_real_distribution<float> scale(0.01f, 100.0f);
  double worst = 0.0;
  for (int round = 0; round < 100; ++round) {
    const int d = dim(rng);
    PieceEncoding s = RandomEncoding(rng, size(rng), d);
    PieceEncoding t = RandomEncoding(rng, size(rng), d);
    const SimilarityMatrix st = ComputeSimilarityMatrix(s, t);
    const SimilarityMatrix ts = ComputeSimilarityMatrix(t, s);
    PieceEncoding scaled = s;
    const float c = scale(rng);
    for (float &x : scaled.vectors) x *= c;
    const SimilarityMatrix sc = ComputeSimilarityMatrix(scaled, t);
    const auto oracle = testing::BruteCosineMatrix(s, t);
    for (int i = 0; i < st.rows(); ++i) {
      for (int j = 0; j < st.cols(); ++j) {
        worst = std::max({worst, std::abs(st.at(i, j) - oracle[i][j]),
                          std::abs(st.at(i, j) - ts.at(j, i)),
                          std::abs(st.at(i, j) - sc.at(i, j))});
      }
    }
  }
  Check(worst <= 1e-6, "max deviation " + Sci(worst));
  return "100 cases, max deviation " + Sci(worst);
}

std::string PrfString(const Prf &prf) {
  return Fixed(prf.precision(), 3) + "/" + Fixed(prf.recall(), 3) + "/" +
         Fixed(prf.f1(), 3);
}

std::string CheckPerfect(const SyntheticCase &c, const ProjectionConfig &config,
                         const std::string &what) {
  const ProjectionResult r = ProjectCorpus(c.Pairs(), config);
  Check(r.corpus == c.gold, what + ": projected corpus differs from expected");
  const EvalReport eval = EvaluateProjection(r.corpus, c.gold);
  for (const Prf *prf : {&eval.predicate, &eval.argument}) {
    Check(prf->precision() == 1.0 && prf->recall() == 1.0 && prf->f1() == 1.0,
          what + ": P/R/F1 " + PrfString(*prf));
  }
  return "pred " + PrfString(eval.predicate) + ", arg " +
         PrfString(eval.argument) + " on " + std::to_string(c.gold.size()) +
         " sentences";
}

std::string IdentityProjection() {
  std::mt19937 rng(3);
  const SyntheticCase c = testing::IdentityCase(rng, 200);
  ProjectionConfig config;
  config.alignment.k = 1;
  config.filters_enabled = true;
  return CheckPerfect(c, config, "identity");
}

std::string PermutationProjection() {
  std::mt19937 rng(4);
  const SyntheticCase c = testing::PermutationCase(rng, 200);
  ProjectionConfig config;
  config.alignment.k = 1;
  return CheckPerfect(c, config, "permutation");
}

std::string ModeTradeoff() {
  std::mt19937 rng(5);
  const SyntheticCase c = testing::TradeoffCase(rng, 300);
  const std::vector<SentencePair> pairs = c.Pairs();
  std::ostringstream summary;
  for (int k : {1, 2}) {
    for (const SentencePair &pair : pairs) {
      const CandidateTable s2t = AlignSentencePair(
          *pair.source_encoding, *pair.target_encoding,
          {k, AlignmentMode::kS2T});
      const CandidateTable inter = AlignSentencePair(
          *pair.source_encoding, *pair.target_encoding,
          {k, AlignmentMode::kInter});
      for (const auto &[from, to] : inter.Links()) {
        Check(s2t.Contains(from, to),
              "INTER link not in S2T in " + pair.source->sent_id);
      }
    }
    ProjectionConfig s2t_config, inter_config;
    s2t_config.alignment = {k, AlignmentMode::kS2T};
    inter_config.alignment = {k, AlignmentMode::kInter};
    const Prf s2t =
        EvaluateProjection(ProjectCorpus(pairs, s2t_config).corpus, c.gold)
            .combined;
    const Prf inter =
        EvaluateProjection(ProjectCorpus(pairs, inter_config).corpus, c.gold)
            .combined;
    Check(inter.precision() >= s2t.precision(),
          "k=" + std::to_string(k) + ": INTER precision " +
              Fixed(inter.precision()) + " < S2T " + Fixed(s2t.precision()));
    Check(inter.recall() <= s2t.recall(),
          "k=" + std::to_string(k) + ": INTER recall " +
              Fixed(inter.recall()) + " > S2T " + Fixed(s2t.recall()));
    summary << "k=" << k << " P " << Fixed(s2t.precision(), 3) << "->"
            << Fixed(inter.precision(), 3) << " R " << Fixed(s2t.recall(), 3)
            << "->" << Fixed(inter.recall(), 3) << "; ";
  }
  summary << "INTER subset of S2T on " << pairs.size() << " instances";
  return summary.str();
}

std::string FilterBehavior() {
  const std::string dir = SRLPROJ_FIXTURE_DIR;
  const Corpus source = ReadConllFile(dir + "/shifts.en.conll");
  const Corpus target = ReadConllFile(dir + "/shifts.tgt.conll");
  const EmbeddingBundle sb = LoadBundle(dir + "/shifts.en.embjsonl");
  const EmbeddingBundle tb = LoadBundle(dir + "/shifts.tgt.embjsonl");
  const ProjectionResult r =
      ProjectCorpus(PairBundles(sb, tb, source, target), ProjectionConfig{});
  auto find = [&](const std::string &id) -> size_t {
    for (size_t i = 0; i < r.corpus.size(); ++i) {
      if (r.corpus[i].sent_id == id) return i;
    }
    throw Failure{"fixture sentence " + id + " missing"};
  };
  for (const char *id : {"nominalization", "light_verb"}) {
    const size_t i = find(id);
    Check(r.corpus[i].frames.empty(), std::string(id) + " frame projected");
    Check(r.report.sentences[i].counts.predicates_dropped_no_verbal_candidate ==
              1,
          std::string(id) + " not dropped for lack of a verbal candidate");
  }
  const Sentence &sp = r.corpus[find("separable_prefix")];
  Check(sp.frames.size() == 1, "separable_prefix frame missing");
  const std::string &stem = sp.token(sp.frames[0].predicate_index).form;
  Check(stem == "hängt", "separable_prefix projected to '" + stem + "'");
  return "nominalization and light verb dropped; prefix verb -> " + stem;
}

std::string KrippendorffOracle() {
  std::mt19937 rng(6);
  int checked = 0;
  double worst = 0.0;
  while (checked < 500) {
    const int units = 2 + rng() % 20, coders = 2 + rng() % 4;
    const int labels = 2 + rng() % 5;
    ReliabilityData data;
    std::vector<std::vector<std::string>> values(units);
    for (int u = 0; u < units; ++u) {
      for (int c = 0; c < coders; ++c) {
        if (rng() % 5 == 0) continue;
        const std::string v(1, static_cast<char>('a' + rng() % labels));
        data.Set("u" + std::to_string(u), "c" + std::to_string(c), v);
        values[u].push_back(v);
      }
    }
    // Skip datasets where alpha is undefined (no pairable variation).
    std::set<std::string> pooled;
    for (const auto &v : values) {
      if (v.size() >= 2) pooled.insert(v.begin(), v.end());
    }
    if (pooled.size() < 2) continue;
    const double alpha = KrippendorffAlpha(data);
    worst = std::max(
        {worst, std::abs(alpha - testing::CoincidenceAlphaOracle(values)),
         std::abs(alpha - testing::PairwiseAlphaOracle(values))});
    ++checked;
  }
  Check(worst <= 1e-9, "max deviation " + Sci(worst));

  ReliabilityData hand;
  const char *pairs[][2] = {{"a", "a"}, {"a", "b"}, {"b", "b"}};
  for (int u = 0; u < 3; ++u) {
    hand.Set(std::to_string(u), "x", pairs[u][0]);
    hand.Set(std::to_string(u), "y", pairs[u][1]);
  }
  const double h = KrippendorffAlpha(hand);
  Check(std::abs(h - 0.4444) <= 1e-4, "hand case " + Fixed(h));

  ReliabilityData perfect;
  for (int u = 0; u < 10; ++u) {
    for (const char *c : {"x", "y", "z"}) {
      perfect.Set(std::to_string(u), c, u % 3 ? "A0" : "NONE");
    }
  }
  const double p = KrippendorffAlpha(perfect);
  Check(p == 1.0, "perfect agreement " + Fixed(p));
  return "500 datasets, max deviation " + Sci(worst) +
         "; hand " + Fixed(h) + "; perfect " + Fixed(p, 1);
}

std::string PrfArithmetic() {
  const Prf prf{2, 1, 2};
  Check(std::abs(prf.precision() - 0.6667) <= 1e-4 &&
            std::abs(prf.recall() - 0.5) <= 1e-4 &&
            std::abs(prf.f1() - 0.5714) <= 1e-4,
        "got " + PrfString(prf));
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> count(0, 1000);
  for (int i = 0; i < 10000; ++i) {
    const Prf r{1 + count(rng), count(rng), count(rng)};
    const double p = r.precision(), q = r.recall();
    Check(std::abs(r.f1() - 2 * p * q / (p + q)) <= 1e-12,
          "harmonic mean identity fails");
  }
  return PrfString(prf) + "; harmonic identity on 10000 random counts";
}

#ifdef SRLPROJ_CLI_PATH
int RunCli(const std::string &args) {
  const std::string command =
      std::string(SRLPROJ_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
#endif

std::string RoundTrips() {
  const std::string dir = SRLPROJ_FIXTURE_DIR;
  for (const char *name : {"shifts.en.conll", "shifts.tgt.conll"}) {
    const std::string text = testing::ReadFile(dir + "/" + name);
    Check(WriteConll09(ParseConll09(text)) == text,
          std::string(name) + " parse/write not identity");
  }
  for (const char *name : {"shifts.en.embjsonl", "shifts.tgt.embjsonl"}) {
    const std::string path = dir + "/" + name;
    const std::string copy = testing::TempPath(name);
    SaveBundle(copy, LoadBundle(path));
    Check(testing::ReadFile(copy) == testing::ReadFile(path),
          std::string(name) + " load/save not identity");
  }

  std::mt19937 rng(8);
  const SyntheticCase c = testing::TradeoffCase(rng, 200);
  const ProjectionConfig config;
  const ProjectionResult one = ProjectCorpus(c.Pairs(), config, 1);
  const ProjectionResult four = ProjectCorpus(c.Pairs(), config, 4);
  Check(WriteConll09(one.corpus) == WriteConll09(four.corpus) &&
            ToJson(one.report, config).dump() ==
                ToJson(four.report, config).dump(),
        "library projection differs across job counts");
  std::string summary = "fixtures identical; library jobs 1 == 4";

#ifdef SRLPROJ_CLI_PATH
  const std::string src = testing::TempPath("src.conll");
  const std::string tgt = testing::TempPath("tgt.conll");
  const std::string se = testing::TempPath("src.embjsonl");
  const std::string te = testing::TempPath("tgt.embjsonl");
  WriteConllFile(src, c.source);
  WriteConllFile(tgt, c.target);
  SaveBundle(se, c.source_bundle);
  SaveBundle(te, c.target_bundle);
  const std::string flags =
      "project --src " + src + " --tgt " + tgt + " --src-emb " + se +
      " --tgt-emb " + te;
  std::vector<std::string> outputs;
  for (int jobs : {1, 2, 4, 8}) {
    const std::string out = testing::TempPath("proj.conll");
    Check(RunCli(flags + " --jobs " + std::to_string(jobs) + " --out " + out) ==
              0,
          "CLI project failed");
    outputs.push_back(testing::ReadFile(out) +
                      testing::ReadFile(out + ".report.json"));
  }
  for (const std::string &o : outputs) {
    Check(o == outputs[0], "CLI output differs across --jobs");
  }
  summary += "; CLI --jobs 1/2/4/8 byte-identical";
#endif
  return summary;
}

std::string HeadOfSpanOracle() {
  std::mt19937 rng(9);
  for (int round = 0; round < 1000; ++round) {
    const int n = 1 + rng() % 20;
    const Sentence s = testing::RandomTree(rng, n, "t");
    std::vector<int> span;
    for (int i = 1; i <= n; ++i) {
      if (rng() % 2) span.push_back(i);
    }
    if (span.empty()) span.push_back(1 + rng() % n);
    const int got = HeadOfSpan(span, s);
    const int want = testing::MinimalDominatorOracle(span, s);
    Check(got == want, "tree " + std::to_string(round) + ": got " +
                           std::to_string(got) + ", oracle " +
                           std::to_string(want));
  }
  const Corpus fr = ReadConllFile(SRLPROJ_FIXTURE_DIR "/shifts.tgt.conll");
  for (const Sentence &s : fr) {
    if (s.sent_id != "named_entity") continue;
    const std::string head = s.token(HeadOfSpan({2, 3, 4, 5}, s)).form;
    Check(head == "Bourse", "named entity head '" + head + "'");
    return "1000 trees match; 'Bourse de New York' -> " + head;
  }
  throw Failure{"named_entity fixture missing"};
}

std::vector<AnnotationTask> ServiceTasks(int n) {
  std::vector<AnnotationTask> tasks;
  for (int i = 1; i <= n; ++i) {
    AnnotationTask t;
    t.task_id = i;
    t.sent_id = "s" + std::to_string(i);
    t.source_tokens = {"a", "b"};
    t.target_tokens = {"x", "y"};
    t.target_text = "x y";
    t.predicates = {{1, "a.01", {{2, "A0"}}}};
    tasks.push_back(t);
  }
  return tasks;
}

AnnotationResponse ServiceResponse(int task_id, const std::string &coder,
                                   int quality) {
  AnnotationResponse r;
  r.task_id = task_id;
  r.coder_id = coder;
  r.quality = quality;
  r.markables = {{{1, 0}, std::vector<int>{1}, {}},
                 {{1, 2}, std::vector<int>{2}, {}}};
  return r;
}

std::string ServiceReplay() {
  const std::string log = testing::TempPath("service.jsonl");
  const std::vector<std::string> coders = {"c1", "c2", "c3", "c4"};
  std::map<std::string, CoderProgress> before;
  int accepted = 0, conflicts = 0;
  {
    AnnotationStore store(ServiceTasks(30), coders, log);
    std::mt19937 rng(10);
    for (int submits = 0; submits < 50;) {
      const std::string &coder = coders[rng() % coders.size()];
      auto next = store.NextTask(coder);
      if (!next) continue;
      const int version =
          rng() % 4 == 0 ? next->version + 1 : next->version;
      const SubmitResult r = store.Submit(
          next->task->task_id, coder,
          ServiceResponse(next->task->task_id, coder, 1 + rng() % 5), version);
      (r.status == SubmitStatus::kAccepted ? accepted : conflicts)++;
      ++submits;
    }
    before = store.Progress();
  }
  AnnotationStore restored(ServiceTasks(30), coders, log);
  Check(restored.Progress() == before, "progress differs after replay");

  int winners_total = 0;
  for (int round = 0; round < 25; ++round) {
    AnnotationStore store(ServiceTasks(1), {"c1"},
                          testing::TempPath("race.jsonl"));
    const int version = store.NextTask("c1")->version;
    std::atomic<int> winners{0};
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) {
      threads.emplace_back([&] {
        if (store.Submit(1, "c1", ServiceResponse(1, "c1", 4), version)
                .status == SubmitStatus::kAccepted) {
          ++winners;
        }
      });
    }
    for (std::thread &t : threads) t.join();
    Check(winners == 1, "race accepted " + std::to_string(winners.load()));
    winners_total += winners;
  }
  return "50 submits (" + std::to_string(accepted) + " accepted, " +
         std::to_string(conflicts) + " conflicts) replayed identically; " +
         std::to_string(winners_total) + "/25 races had exactly one winner";
}

int Main() {
  const std::vector<Criterion> criteria = {
      {"quality_stats kept-sentence counts (DE/ES/FR histograms)", 1.0,
       Table3Arithmetic},
      {"topk_pairs equals sort-and-truncate oracle", 5.0, TopKOracle},
      {"similarity_matrix equals brute-force cosine; transpose and scale",
       0.0, CosineOracle},
      {"identity projection reproduces verbal frames, P=R=F1=1", 0.0,
       IdentityProjection},
      {"permutation projection equals permuted gold, P=R=F1=1", 0.0,
       PermutationProjection},
      {"INTER precision >= S2T, recall <= S2T, INTER subset of S2T", 0.0,
       ModeTradeoff},
      {"verbal filter drops nominal mappings; separable prefix to stem", 0.0,
       FilterBehavior},
      {"Krippendorff alpha equals oracle; hand case; perfect agreement", 0.0,
       KrippendorffOracle},
      {"PRF arithmetic and harmonic-mean identity", 0.0, PrfArithmetic},
      {"CoNLL and bundle round trips; deterministic across --jobs", 0.0,
       RoundTrips},
      {"head_of_span equals minimal-dominator oracle; Bourse", 0.0,
       HeadOfSpanOracle},
      {"service log replay and single-winner concurrent submits", 0.0,
       ServiceReplay},
  };

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const Criterion &c = criteria[i];
    std::string detail;
    bool ok = true;
    const auto start = std::chrono::steady_clock::now();
    try {
      detail = c.run();
    } catch (const Failure &f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception &e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    if (ok && c.limit > 0 && seconds >= c.limit) {
      ok = false;
      detail += "; took " + Fixed(seconds, 3) + " s, limit " +
                Fixed(c.limit, 1) + " s";
    }
    if (!ok) ++failed;
    std::printf("[%s] %2zu. %s (%.3f s): %s\n", ok ? "PASS" : "FAIL", i + 1,
                c.name.c_str(), seconds, detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace srlproj

int main() { return srlproj::Main(); }

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

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "srlproj/alignment.h"
#include "srlproj/bundle.h"
#include "srlproj/conll.h"
#include "srlproj/projection.h"
#include "srlproj/similarity.h"

namespace srlproj {
namespace {

PieceEncoding RandomEncoding(int pieces, int dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<float> normal;
  PieceEncoding e;
  e.sent_id = "b";
  e.dim = dim;
  for (int p = 0; p < pieces; ++p) {
    e.pieces.push_back("p" + std::to_string(p));
    e.word_index.push_back(p / 2 + 1);
    for (int d = 0; d < dim; ++d) e.vectors.push_back(normal(rng));
  }
  return e;
}

// Sentence of pieces / 2 words, every third one a verb predicate with
// two arguments.
Sentence MakeSentence(int words) {
  Sentence s;
  s.sent_id = "b";
  for (int i = 1; i <= words; ++i) {
    s.tokens.push_back({i, "w", "w", i % 3 == 1 ? "VERB" : "NOUN",
                        i == 1 ? 0 : 1, i == 1 ? "ROOT" : "dep"});
  }
  for (int i = 1; i + 2 <= words; i += 3) {
    s.frames.push_back({i, "w.01", {{i + 1, "A0"}, {i + 2, "A1"}}});
  }
  return s;
}

void BM_SimilarityMatrix(benchmark::State &state) {
  const int n = state.range(0);
  const PieceEncoding s = RandomEncoding(n, 768, 1);
  const PieceEncoding t = RandomEncoding(n, 768, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeSimilarityMatrix(s, t));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_SimilarityMatrix)->Arg(16)->Arg(48)->Arg(128);

void BM_TopKPairs(benchmark::State &state) {
  const int n = state.range(0);
  const SimilarityMatrix sm = ComputeSimilarityMatrix(
      RandomEncoding(n, 64, 3), RandomEncoding(n, 64, 4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        TopKPairs(sm, 2, Direction::kSourceToTarget));
  }
}
BENCHMARK(BM_TopKPairs)->Arg(16)->Arg(48)->Arg(128);

void BM_AlignAndProject(benchmark::State &state) {
  const int n = state.range(0);
  const AlignmentMode mode = static_cast<AlignmentMode>(state.range(1));
  const PieceEncoding se = RandomEncoding(n, 768, 5);
  const PieceEncoding te = RandomEncoding(n, 768, 6);
  const Sentence source = MakeSentence(n / 2);
  const Sentence target = MakeSentence(n / 2);
  ProjectionConfig config;
  config.alignment = {2, mode};
  for (auto _ : state) {
    const CandidateTable table = AlignSentencePair(se, te, config.alignment);
    benchmark::DoNotOptimize(ProjectSentence(source, target, table, config));
  }
  state.SetLabel(AlignmentModeName(mode));
}
BENCHMARK(BM_AlignAndProject)
    ->Args({48, static_cast<int>(AlignmentMode::kS2T)})
    ->Args({48, static_cast<int>(AlignmentMode::kInter)});

}  // namespace
}  // namespace srlproj

BENCHMARK_MAIN();

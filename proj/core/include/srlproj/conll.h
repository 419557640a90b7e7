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

#ifndef SRLPROJ_CONLL_H_
#define SRLPROJ_CONLL_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace srlproj {

// One row of a CoNLL-2009 block. Indices are 1-based; head 0 is the root.
struct Token {
  int index = 0;
  std::string form;
  std::string lemma;
  std::string pos;
  int head = 0;
  std::string deprel;

  bool operator==(const Token &) const = default;
};

// A head-marked semantic role: the argument's head token and its label.
struct Role {
  int index = 0;
  std::string label;

  bool operator==(const Role &) const = default;
};

struct PredicateFrame {
  int predicate_index = 0;
  std::string sense;
  // Sorted by index, at most one label per index.
  std::vector<Role> roles;

  bool operator==(const PredicateFrame &) const = default;
};

struct Sentence {
  std::string sent_id;
  std::vector<Token> tokens;
  // Ordered by predicate_index, which is also the APRED column order.
  std::vector<PredicateFrame> frames;

  int size() const { return static_cast<int>(tokens.size()); }
  const Token &token(int index) const { return tokens[index - 1]; }

  bool operator==(const Sentence &) const = default;
};

using Corpus = std::vector<Sentence>;

// Checks the Token / PredicateFrame / Sentence invariants. Throws Error
// naming the sentence id on the first violation.
void ValidateSentence(const Sentence &sentence);

// Sorts frames by predicate index and roles by argument index. Does not
// deduplicate.
void CanonicalizeFrames(Sentence *sentence);

// Parses CoNLL-2009 text. Sentences without a "# sent_id = ..." comment get
// "s{k}" from their 0-based position in the file.
Corpus ParseConll09(std::istream &in);
Corpus ParseConll09(std::string_view text);

// Writes canonical CoNLL-2009: single tabs, "_" placeholders, predicted
// columns mirroring the gold ones, one "# sent_id = ..." line per sentence.
void WriteConll09(const Corpus &corpus, std::ostream &out);
std::string WriteConll09(const Corpus &corpus);

Corpus ReadConllFile(const std::string &path);
void WriteConllFile(const std::string &path, const Corpus &corpus);

}  // namespace srlproj

#endif  // SRLPROJ_CONLL_H_

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

#include "srlproj/conll.h"

#include <random>
#include <string>

#include <gtest/gtest.h>

#include "srlproj/error.h"
#include "synthetic.h"

namespace srlproj {
namespace {

std::string Row(const std::string &id, const std::string &form,
                const std::string &pos, const std::string &head,
                const std::string &fillpred, const std::string &pred,
                const std::string &apreds) {
  std::string row = id + "\t" + form + "\t" + form + "\t" + form + "\t" + pos +
                    "\t" + pos + "\t_\t_\t" + head + "\t" + head +
                    "\tdep\tdep\t" + fillpred + "\t" + pred;
  if (!apreds.empty()) row += "\t" + apreds;
  return row + "\n";
}

const char kTwoPredicates[] =
    "# sent_id = s1\n"
    "1\tJohn\tjohn\tjohn\tNOUN\tNOUN\t_\t_\t2\t2\tSBJ\tSBJ\t_\t_\tA0\tA0\n"
    "2\tsold\tsell\tsell\tVERB\tVERB\t_\t_\t0\t0\tROOT\tROOT\tY\tsell.01\t_\t_\n"
    "3\tand\tand\tand\tCCONJ\tCCONJ\t_\t_\t2\t2\tCOORD\tCOORD\t_\t_\t_\t_\n"
    "4\tleft\tleave\tleave\tVERB\tVERB\t_\t_\t3\t3\tCONJ\tCONJ\tY\tleave.01\t_\t_\n"
    "\n";

TEST(ConllTest, ParsesFramesFromAPredColumns) {
  Corpus corpus = ParseConll09(kTwoPredicates);
  ASSERT_EQ(corpus.size(), 1u);
  const Sentence &s = corpus[0];
  EXPECT_EQ(s.sent_id, "s1");
  ASSERT_EQ(s.size(), 4);
  EXPECT_EQ(s.token(2).lemma, "sell");
  EXPECT_EQ(s.token(4).head, 3);
  ASSERT_EQ(s.frames.size(), 2u);
  EXPECT_EQ(s.frames[0].predicate_index, 2);
  EXPECT_EQ(s.frames[0].sense, "sell.01");
  ASSERT_EQ(s.frames[0].roles.size(), 1u);
  EXPECT_EQ(s.frames[0].roles[0], (Role{1, "A0"}));
  EXPECT_EQ(s.frames[1].predicate_index, 4);
  EXPECT_EQ(s.frames[1].roles, (std::vector<Role>{{1, "A0"}}));
}

TEST(ConllTest, WriteThenParseIsIdentity) {
  const std::string text = kTwoPredicates;
  EXPECT_EQ(WriteConll09(ParseConll09(text)), text);
}

TEST(ConllTest, FallsBackToPredictedColumns) {
  const std::string text =
      "1\tx\t_\ty\t_\tNOUN\t_\t_\t_\t0\tdep\tROOT\t_\t_\n\n";
  Corpus corpus = ParseConll09(text);
  ASSERT_EQ(corpus.size(), 1u);
  EXPECT_EQ(corpus[0].token(1).lemma, "y");
  EXPECT_EQ(corpus[0].token(1).pos, "NOUN");
  EXPECT_EQ(corpus[0].token(1).head, 0);
}

TEST(ConllTest, AssignsPositionalIdsWithoutComments) {
  const std::string text = Row("1", "a", "NOUN", "0", "_", "_", "") + "\n" +
                           Row("1", "b", "NOUN", "0", "_", "_", "") + "\n";
  Corpus corpus = ParseConll09(text);
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus[0].sent_id, "s0");
  EXPECT_EQ(corpus[1].sent_id, "s1");
}

TEST(ConllTest, AcceptsMissingFinalBlankLineAndSpaces) {
  Corpus corpus = ParseConll09(
      "1 a a a NOUN NOUN _ _ 0 0 ROOT ROOT _ _\n"
      "2 b b b VERB VERB _ _ 1 1 dep dep _ _");
  ASSERT_EQ(corpus.size(), 1u);
  EXPECT_EQ(corpus[0].size(), 2);
}

TEST(ConllTest, RejectsRaggedRowWithLineNumber) {
  const std::string text = Row("1", "a", "NOUN", "0", "Y", "a.01", "_") +
                           Row("2", "b", "NOUN", "1", "_", "_", "");
  try {
    ParseConll09(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(std::string(e.what()).find("ragged"), std::string::npos);
  }
}

TEST(ConllTest, RejectsNonIntegerHead) {
  EXPECT_THROW(ParseConll09(Row("1", "a", "NOUN", "x", "_", "_", "")),
               ParseError);
}

TEST(ConllTest, RejectsHeadOutOfRange) {
  EXPECT_THROW(ParseConll09(Row("1", "a", "NOUN", "0", "_", "_", "") +
                            Row("2", "b", "NOUN", "7", "_", "_", "")),
               ParseError);
}

TEST(ConllTest, RejectsOutOfOrderIds) {
  EXPECT_THROW(ParseConll09(Row("2", "a", "NOUN", "0", "_", "_", "")),
               ParseError);
}

TEST(ConllTest, RejectsPredicateColumnMismatch) {
  // Two FILLPRED=Y rows but only one APRED column.
  const std::string text = Row("1", "a", "VERB", "0", "Y", "a.01", "_") +
                           Row("2", "b", "VERB", "1", "Y", "b.01", "A0");
  try {
    ParseConll09(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError &e) {
    EXPECT_NE(std::string(e.what()).find("2 predicate(s) but 1 APRED"),
              std::string::npos);
  }
}

TEST(ConllTest, RejectsDuplicateSentId) {
  const std::string one = "# sent_id = x\n" +
                          Row("1", "a", "NOUN", "0", "_", "_", "") + "\n";
  EXPECT_THROW(ParseConll09(one + one), ParseError);
}

TEST(ConllTest, RejectsTooFewColumns) {
  EXPECT_THROW(ParseConll09("1\ta\tb\n"), ParseError);
}

TEST(ConllTest, ValidateSentenceChecksFrames) {
  Sentence s = ParseConll09(kTwoPredicates)[0];
  EXPECT_NO_THROW(ValidateSentence(s));
  Sentence bad = s;
  bad.frames[0].roles.push_back({9, "A1"});
  EXPECT_THROW(ValidateSentence(bad), Error);
  bad = s;
  bad.frames[1].predicate_index = 2;
  EXPECT_THROW(ValidateSentence(bad), Error);
}

TEST(ConllTest, CanonicalizeSortsFramesAndRoles) {
  Sentence s = ParseConll09(kTwoPredicates)[0];
  Sentence shuffled = s;
  std::swap(shuffled.frames[0], shuffled.frames[1]);
  shuffled.frames[0].roles.insert(shuffled.frames[0].roles.begin(),
                                  {3, "AM-TMP"});
  CanonicalizeFrames(&shuffled);
  EXPECT_EQ(shuffled.frames[0].predicate_index, 2);
  EXPECT_EQ(shuffled.frames[1].roles,
            (std::vector<Role>{{1, "A0"}, {3, "AM-TMP"}}));
}

TEST(ConllTest, RandomCorporaRoundTrip) {
  std::mt19937 rng(7);
  for (int round = 0; round < 20; ++round) {
    Corpus corpus = testing::RandomCorpus(rng, 10, 15);
    const std::string text = WriteConll09(corpus);
    Corpus parsed = ParseConll09(text);
    EXPECT_EQ(parsed, corpus);
    EXPECT_EQ(WriteConll09(parsed), text);
  }
}

TEST(ConllTest, FixtureRoundTripsByteForByte) {
  const std::string path = SRLPROJ_FIXTURE_DIR "/shifts.en.conll";
  const std::string text = testing::ReadFile(path);
  EXPECT_EQ(WriteConll09(ReadConllFile(path)), text);

  const std::string copy = testing::TempPath("copy.conll");
  WriteConllFile(copy, ReadConllFile(path));
  EXPECT_EQ(testing::ReadFile(copy), text);
}

TEST(ConllTest, MissingFileIsAnError) {
  EXPECT_THROW(ReadConllFile("/nonexistent/x.conll"), Error);
}

}  // namespace
}  // namespace srlproj

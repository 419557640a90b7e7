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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "srlproj/error.h"

namespace srlproj {
namespace {

// Fixed CoNLL-2009 columns before the APRED block.
enum Column {
  kId = 0,
  kForm,
  kLemma,
  kPLemma,
  kPos,
  kPPos,
  kFeat,
  kPFeat,
  kHead,
  kPHead,
  kDeprel,
  kPDeprel,
  kFillPred,
  kPred,
  kNumFixedColumns,
};

constexpr std::string_view kSentIdPrefix = "# sent_id = ";

std::vector<std::string_view> SplitColumns(std::string_view line) {
  std::vector<std::string_view> columns;
  const char separator = line.find('\t') != std::string_view::npos ? '\t' : ' ';
  size_t start = 0;
  while (start <= line.size()) {
    size_t end = line.find(separator, start);
    if (end == std::string_view::npos) end = line.size();
    std::string_view field = line.substr(start, end - start);
    // Space-separated input may contain runs of spaces; tabs are exact.
    if (separator == '\t' || !field.empty()) columns.push_back(field);
    start = end + 1;
  }
  return columns;
}

std::string_view Placeholder(std::string_view value) {
  return value.empty() ? std::string_view("_") : value;
}

std::string FromPlaceholder(std::string_view value) {
  return value == "_" ? std::string() : std::string(value);
}

// Gold column when filled, else the predicted one.
std::string_view GoldOrPredicted(std::string_view gold,
                                 std::string_view predicted) {
  return gold != "_" ? gold : predicted;
}

bool ParseInt(std::string_view text, int *value) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

struct Row {
  int line;
  std::vector<std::string_view> columns;
};

class BlockParser {
 public:
  explicit BlockParser(Corpus *corpus) : corpus_(corpus) {}

  void AddComment(std::string_view line) {
    if (line.substr(0, kSentIdPrefix.size()) == kSentIdPrefix) {
      sent_id_ = std::string(line.substr(kSentIdPrefix.size()));
      has_sent_id_ = true;
    }
  }

  void AddRow(int line_number, std::string line) {
    if (rows_.empty()) first_line_ = line_number;
    lines_.push_back(std::move(line));
    rows_.push_back({line_number, {}});
  }

  bool empty() const { return rows_.empty() && !has_sent_id_; }

  void Finish() {
    if (rows_.empty()) {
      if (has_sent_id_) {
        throw ParseError("sentence '" + sent_id_ + "' has no token rows",
                         first_line_);
      }
      return;
    }
    for (size_t i = 0; i < rows_.size(); ++i) {
      rows_[i].columns = SplitColumns(lines_[i]);
    }
    Build();
    rows_.clear();
    lines_.clear();
    has_sent_id_ = false;
    sent_id_.clear();
  }

 private:
  void Build() {
    const size_t width = rows_.front().columns.size();
    Sentence sentence;
    sentence.sent_id =
        has_sent_id_ ? sent_id_ : "s" + std::to_string(corpus_->size());
    std::vector<int> predicate_rows;
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Row &row = rows_[i];
      const auto &c = row.columns;
      if (c.size() < kNumFixedColumns) {
        throw ParseError("expected at least 14 columns, found " +
                             std::to_string(c.size()),
                         row.line);
      }
      if (c.size() != width) {
        throw ParseError("ragged row: expected " + std::to_string(width) +
                             " columns, found " + std::to_string(c.size()),
                         row.line);
      }
      Token token;
      if (!ParseInt(c[kId], &token.index) ||
          token.index != static_cast<int>(i) + 1) {
        throw ParseError("token ID '" + std::string(c[kId]) +
                             "' is not the row position " +
                             std::to_string(i + 1),
                         row.line);
      }
      token.form = std::string(c[kForm]);
      token.lemma = FromPlaceholder(GoldOrPredicted(c[kLemma], c[kPLemma]));
      token.pos = FromPlaceholder(GoldOrPredicted(c[kPos], c[kPPos]));
      std::string_view head = GoldOrPredicted(c[kHead], c[kPHead]);
      if (!ParseInt(head, &token.head)) {
        throw ParseError("non-integer HEAD '" + std::string(head) + "'",
                         row.line);
      }
      if (token.head < 0 || token.head > static_cast<int>(rows_.size()) ||
          token.head == token.index) {
        throw ParseError("HEAD " + std::to_string(token.head) +
                             " out of range for token " +
                             std::to_string(token.index),
                         row.line);
      }
      token.deprel = FromPlaceholder(GoldOrPredicted(c[kDeprel], c[kPDeprel]));
      if (c[kFillPred] == "Y") {
        predicate_rows.push_back(static_cast<int>(i));
      }
      sentence.tokens.push_back(std::move(token));
    }

    const size_t num_apreds = width - kNumFixedColumns;
    if (num_apreds != predicate_rows.size()) {
      throw ParseError("sentence '" + sentence.sent_id + "' has " +
                           std::to_string(predicate_rows.size()) +
                           " predicate(s) but " + std::to_string(num_apreds) +
                           " APRED column(s)",
                       first_line_);
    }
    for (size_t j = 0; j < predicate_rows.size(); ++j) {
      PredicateFrame frame;
      frame.predicate_index = predicate_rows[j] + 1;
      frame.sense =
          FromPlaceholder(rows_[predicate_rows[j]].columns[kPred]);
      for (size_t i = 0; i < rows_.size(); ++i) {
        std::string_view label = rows_[i].columns[kNumFixedColumns + j];
        if (label != "_") {
          frame.roles.push_back({static_cast<int>(i) + 1, std::string(label)});
        }
      }
      sentence.frames.push_back(std::move(frame));
    }
    corpus_->push_back(std::move(sentence));
  }

  Corpus *corpus_;
  std::vector<std::string> lines_;
  std::vector<Row> rows_;
  std::string sent_id_;
  bool has_sent_id_ = false;
  int first_line_ = 0;
};

}  // namespace

void ValidateSentence(const Sentence &sentence) {
  auto fail = [&](const std::string &what) {
    throw Error("sentence '" + sentence.sent_id + "': " + what);
  };
  const int n = sentence.size();
  for (int i = 0; i < n; ++i) {
    const Token &token = sentence.tokens[i];
    if (token.index != i + 1) {
      fail("token indices are not contiguous at position " +
           std::to_string(i + 1));
    }
    if (token.head < 0 || token.head > n || token.head == token.index) {
      fail("invalid head " + std::to_string(token.head) + " for token " +
           std::to_string(token.index));
    }
  }
  int previous = 0;
  for (const PredicateFrame &frame : sentence.frames) {
    if (frame.predicate_index < 1 || frame.predicate_index > n) {
      fail("predicate index " + std::to_string(frame.predicate_index) +
           " out of range");
    }
    if (frame.predicate_index <= previous) {
      fail("frames must be unique and ordered by predicate index");
    }
    previous = frame.predicate_index;
    int previous_arg = 0;
    for (const Role &role : frame.roles) {
      if (role.index < 1 || role.index > n) {
        fail("argument index " + std::to_string(role.index) + " out of range");
      }
      if (role.index <= previous_arg) {
        fail("roles of predicate " + std::to_string(frame.predicate_index) +
             " must be unique and ordered by argument index");
      }
      if (role.label.empty() || role.label == "_") {
        fail("empty role label");
      }
      previous_arg = role.index;
    }
  }
}

void CanonicalizeFrames(Sentence *sentence) {
  std::stable_sort(sentence->frames.begin(), sentence->frames.end(),
                   [](const PredicateFrame &a, const PredicateFrame &b) {
                     return a.predicate_index < b.predicate_index;
                   });
  for (PredicateFrame &frame : sentence->frames) {
    std::stable_sort(frame.roles.begin(), frame.roles.end(),
                     [](const Role &a, const Role &b) {
                       return a.index < b.index;
                     });
  }
}

Corpus ParseConll09(std::istream &in) {
  Corpus corpus;
  BlockParser block(&corpus);
  std::set<std::string> seen;
  size_t checked = 0;
  auto finish = [&](int line_number) {
    block.Finish();
    for (; checked < corpus.size(); ++checked) {
      if (!seen.insert(corpus[checked].sent_id).second) {
        throw ParseError("duplicate sent_id '" + corpus[checked].sent_id + "'",
                         line_number);
      }
    }
  };

  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      finish(line_number);
    } else if (line[0] == '#') {
      block.AddComment(line);
    } else {
      block.AddRow(line_number, std::move(line));
    }
  }
  finish(line_number);
  return corpus;
}

Corpus ParseConll09(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseConll09(in);
}

void WriteConll09(const Corpus &corpus, std::ostream &out) {
  for (const Sentence &sentence : corpus) {
    ValidateSentence(sentence);
    out << kSentIdPrefix << sentence.sent_id << '\n';
    std::vector<const PredicateFrame *> by_token(sentence.tokens.size() + 1,
                                                 nullptr);
    for (const PredicateFrame &frame : sentence.frames) {
      by_token[frame.predicate_index] = &frame;
    }
    // Per frame, the label at each token ("_" if none).
    std::vector<std::vector<std::string_view>> apreds(
        sentence.frames.size(),
        std::vector<std::string_view>(sentence.tokens.size(), "_"));
    for (size_t j = 0; j < sentence.frames.size(); ++j) {
      for (const Role &role : sentence.frames[j].roles) {
        apreds[j][role.index - 1] = role.label;
      }
    }
    for (const Token &token : sentence.tokens) {
      const std::string_view lemma = Placeholder(token.lemma);
      const std::string_view pos = Placeholder(token.pos);
      const std::string_view deprel = Placeholder(token.deprel);
      const PredicateFrame *frame = by_token[token.index];
      out << token.index << '\t' << Placeholder(token.form) << '\t' << lemma
          << '\t' << lemma << '\t' << pos << '\t' << pos << "\t_\t_\t"
          << token.head << '\t' << token.head << '\t' << deprel << '\t'
          << deprel << '\t' << (frame ? "Y" : "_") << '\t'
          << (frame ? Placeholder(frame->sense) : std::string_view("_"));
      for (size_t j = 0; j < apreds.size(); ++j) {
        out << '\t' << apreds[j][token.index - 1];
      }
      out << '\n';
    }
    out << '\n';
  }
}

std::string WriteConll09(const Corpus &corpus) {
  std::ostringstream out;
  WriteConll09(corpus, out);
  return out.str();
}

Corpus ReadConllFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open CoNLL file '" + path + "'");
  try {
    return ParseConll09(in);
  } catch (const ParseError &e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
}

void WriteConllFile(const std::string &path, const Corpus &corpus) {
  const std::string text = WriteConll09(corpus);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write CoNLL file '" + path + "'");
  out << text;
  if (!out.flush()) throw Error("failed writing '" + path + "'");
}

}  // namespace srlproj

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

#include "srlproj/bundle.h"

#include <zlib.h>

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>
#include "srlproj/error.h"

namespace srlproj {
namespace {

using nlohmann::json;

bool EndsWith(const std::string &s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string ReadFile(const std::string &path) {
  if (EndsWith(path, ".gz")) {
    gzFile file = gzopen(path.c_str(), "rb");
    if (file == nullptr) throw Error("cannot open bundle '" + path + "'");
    std::string text;
    char buffer[1 << 16];
    int n;
    while ((n = gzread(file, buffer, sizeof(buffer))) > 0) text.append(buffer, n);
    const bool failed = n < 0;
    gzclose(file);
    if (failed) throw Error("corrupt gzip stream in '" + path + "'");
    return text;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open bundle '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void WriteFile(const std::string &path, const std::string &text) {
  if (EndsWith(path, ".gz")) {
    // "n" disables the embedded timestamp so output stays reproducible.
    gzFile file = gzopen(path.c_str(), "wb9n");
    if (file == nullptr) throw Error("cannot write bundle '" + path + "'");
    const int written =
        text.empty() ? 0 : gzwrite(file, text.data(), text.size());
    if (gzclose(file) != Z_OK || written != static_cast<int>(text.size())) {
      throw Error("failed writing '" + path + "'");
    }
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write bundle '" + path + "'");
  out << text;
  if (!out.flush()) throw Error("failed writing '" + path + "'");
}

void AppendFloat(std::string *out, float value) {
  char buffer[32];
  auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  out->append(buffer, result.ptr);
}

template <typename T>
T Field(const json &record, const char *name, const std::string &where) {
  auto it = record.find(name);
  if (it == record.end()) throw Error(where + ": missing field '" + name + "'");
  try {
    return it->get<T>();
  } catch (const json::exception &) {
    throw Error(where + ": field '" + name + "' has the wrong type");
  }
}

PieceEncoding ParseRecord(const json &record, int dim,
                          const std::string &where) {
  PieceEncoding encoding;
  encoding.sent_id = Field<std::string>(record, "sent_id", where);
  const std::string at = where + " (sent_id '" + encoding.sent_id + "')";
  encoding.pieces = Field<std::vector<std::string>>(record, "pieces", at);
  encoding.word_index = Field<std::vector<int>>(record, "word_index", at);
  encoding.dim = dim;
  auto vectors = record.find("vectors");
  if (vectors == record.end() || !vectors->is_array()) {
    throw Error(at + ": missing field 'vectors'");
  }
  if (encoding.word_index.size() != encoding.pieces.size()) {
    throw Error(at + ": word_index count mismatch (" +
                std::to_string(encoding.word_index.size()) + " entries for " +
                std::to_string(encoding.pieces.size()) + " pieces)");
  }
  if (vectors->size() != encoding.pieces.size()) {
    throw Error(at + ": vector count mismatch (" +
                std::to_string(vectors->size()) + " vectors for " +
                std::to_string(encoding.pieces.size()) + " pieces)");
  }
  encoding.vectors.reserve(encoding.pieces.size() * dim);
  for (size_t i = 0; i < vectors->size(); ++i) {
    const json &row = (*vectors)[i];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw Error(at + ": dimension mismatch at piece " + std::to_string(i) +
                  " (expected " + std::to_string(dim) + ")");
    }
    for (const json &value : row) {
      if (!value.is_number()) {
        throw Error(at + ": non-numeric vector entry at piece " +
                    std::to_string(i));
      }
      encoding.vectors.push_back(static_cast<float>(value.get<double>()));
    }
  }
  for (size_t i = 0; i < encoding.word_index.size(); ++i) {
    if (encoding.word_index[i] < 1) {
      throw Error(at + ": out-of-range word_index " +
                  std::to_string(encoding.word_index[i]) + " at piece " +
                  std::to_string(i));
    }
  }
  return encoding;
}

}  // namespace

EmbeddingBundle ParseBundle(const std::string &text) {
  EmbeddingBundle bundle;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  bool have_header = false;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "bundle record at line " +
                              std::to_string(line_number);
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error &e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_number);
    }
    if (!record.is_object()) throw Error(where + ": expected a JSON object");
    if (!have_header) {
      bundle.language = Field<std::string>(record, "language", where);
      bundle.model_id = Field<std::string>(record, "model_id", where);
      bundle.layer = Field<int>(record, "layer", where);
      bundle.dim = Field<int>(record, "dim", where);
      if (bundle.dim < 1) throw Error(where + ": dim must be >= 1");
      have_header = true;
      continue;
    }
    PieceEncoding encoding = ParseRecord(record, bundle.dim, where);
    if (!seen.insert(encoding.sent_id).second) {
      throw Error(where + ": duplicate sent_id '" + encoding.sent_id + "'");
    }
    bundle.encodings.push_back(std::move(encoding));
  }
  if (!have_header) throw Error("bundle has no header record");
  return bundle;
}

std::string SerializeBundle(const EmbeddingBundle &bundle) {
  std::string out;
  json header = {{"language", bundle.language},
                 {"model_id", bundle.model_id},
                 {"layer", bundle.layer},
                 {"dim", bundle.dim}};
  out += header.dump();
  out += '\n';
  for (const PieceEncoding &encoding : bundle.encodings) {
    if (encoding.dim != bundle.dim ||
        encoding.vectors.size() != encoding.pieces.size() * bundle.dim ||
        encoding.word_index.size() != encoding.pieces.size()) {
      throw Error("encoding '" + encoding.sent_id +
                  "' is inconsistent with the bundle dimension");
    }
    out += "{\"sent_id\":";
    out += json(encoding.sent_id).dump();
    out += ",\"pieces\":";
    out += json(encoding.pieces).dump();
    out += ",\"word_index\":";
    out += json(encoding.word_index).dump();
    out += ",\"vectors\":[";
    for (int i = 0; i < encoding.num_pieces(); ++i) {
      if (i > 0) out += ',';
      out += '[';
      const float *v = encoding.vector(i);
      for (int d = 0; d < bundle.dim; ++d) {
        if (d > 0) out += ',';
        AppendFloat(&out, v[d]);
      }
      out += ']';
    }
    out += "]}\n";
  }
  return out;
}

EmbeddingBundle LoadBundle(const std::string &path) {
  const std::string text = ReadFile(path);
  try {
    return ParseBundle(text);
  } catch (const Error &e) {
    throw Error(path + ": " + e.what());
  }
}

void SaveBundle(const std::string &path, const EmbeddingBundle &bundle) {
  WriteFile(path, SerializeBundle(bundle));
}

void ValidateCoverage(const PieceEncoding &encoding,
                      const Sentence &sentence) {
  std::vector<bool> covered(sentence.tokens.size() + 1, false);
  for (size_t i = 0; i < encoding.word_index.size(); ++i) {
    const int w = encoding.word_index[i];
    if (w < 1 || w > sentence.size()) {
      throw Error("encoding '" + encoding.sent_id + "': word_index " +
                  std::to_string(w) + " at piece " + std::to_string(i) +
                  " is outside 1.." + std::to_string(sentence.size()));
    }
    covered[w] = true;
  }
  for (int w = 1; w <= sentence.size(); ++w) {
    if (!covered[w]) {
      throw Error("encoding '" + encoding.sent_id + "': token " +
                  std::to_string(w) + " ('" + sentence.token(w).form +
                  "') is not covered by any piece");
    }
  }
}

std::vector<SentencePair> PairBundles(const EmbeddingBundle &source_bundle,
                                      const EmbeddingBundle &target_bundle,
                                      const Corpus &source_corpus,
                                      const Corpus &target_corpus) {
  if (!source_bundle.encodings.empty() && !target_bundle.encodings.empty() &&
      source_bundle.dim != target_bundle.dim) {
    throw Error("source bundle dim " + std::to_string(source_bundle.dim) +
                " differs from target bundle dim " +
                std::to_string(target_bundle.dim));
  }
  std::unordered_map<std::string, const Sentence *> target_sentences;
  std::unordered_map<std::string, const PieceEncoding *> source_encodings;
  std::unordered_map<std::string, const PieceEncoding *> target_encodings;
  std::set<std::string> all_ids;
  for (const Sentence &s : source_corpus) all_ids.insert(s.sent_id);
  for (const Sentence &s : target_corpus) {
    target_sentences.emplace(s.sent_id, &s);
    all_ids.insert(s.sent_id);
  }
  for (const PieceEncoding &e : source_bundle.encodings) {
    source_encodings.emplace(e.sent_id, &e);
    all_ids.insert(e.sent_id);
  }
  for (const PieceEncoding &e : target_bundle.encodings) {
    target_encodings.emplace(e.sent_id, &e);
    all_ids.insert(e.sent_id);
  }
  std::set<std::string> source_ids;
  for (const Sentence &s : source_corpus) source_ids.insert(s.sent_id);

  std::map<std::string, std::vector<std::string>> missing;
  for (const std::string &id : all_ids) {
    if (!source_ids.count(id)) missing["source corpus"].push_back(id);
    if (!target_sentences.count(id)) missing["target corpus"].push_back(id);
    if (!source_encodings.count(id)) missing["source bundle"].push_back(id);
    if (!target_encodings.count(id)) missing["target bundle"].push_back(id);
  }
  if (!missing.empty()) {
    std::string message = "cannot pair sentences:";
    for (const auto &[collection, ids] : missing) {
      message += " missing from " + collection + ":";
      for (const std::string &id : ids) message += " " + id;
      message += ";";
    }
    throw Error(message);
  }

  std::vector<SentencePair> pairs;
  pairs.reserve(source_corpus.size());
  for (const Sentence &source : source_corpus) {
    SentencePair pair{&source, target_sentences.at(source.sent_id),
                      source_encodings.at(source.sent_id),
                      target_encodings.at(source.sent_id)};
    ValidateCoverage(*pair.source_encoding, *pair.source);
    ValidateCoverage(*pair.target_encoding, *pair.target);
    pairs.push_back(pair);
  }
  return pairs;
}

}  // namespace srlproj

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

#include "srlproj/config.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "srlproj/error.h"

namespace srlproj {
namespace {

std::string Trim(const std::string &s) {
  const size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Drops a trailing "# comment" that is not inside a quoted string.
std::string StripComment(const std::string &line) {
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::string Unquote(const std::string &value) {
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
    return value.substr(1, value.size() - 2);
  }
  return value;
}

}  // namespace

Config Config::Parse(const std::string &text) {
  Config config;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    line = Trim(StripComment(line));
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = Trim(line.substr(1, line.size() - 2));
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_number) +
                        ": expected 'key = value'");
    }
    std::string key = Trim(line.substr(0, eq));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_number) +
                        ": empty key");
    }
    if (!section.empty()) key = section + "." + key;
    config.values_[key] = Trim(line.substr(eq + 1));
  }
  return config;
}

Config Config::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return Parse(text.str());
}

std::optional<std::string> Config::GetString(const std::string &key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return Unquote(it->second);
}

std::optional<int> Config::GetInt(const std::string &key) const {
  std::optional<std::string> text = GetString(key);
  if (!text) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(text->data(), text->data() + text->size(), value);
  if (ec != std::errc() || ptr != text->data() + text->size()) {
    throw ConfigError("config key '" + key + "' is not an integer");
  }
  return value;
}

std::optional<bool> Config::GetBool(const std::string &key) const {
  std::optional<std::string> text = GetString(key);
  if (!text) return std::nullopt;
  if (*text == "true") return true;
  if (*text == "false") return false;
  throw ConfigError("config key '" + key + "' is not true/false");
}

std::optional<std::vector<std::string>> Config::GetList(
    const std::string &key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  std::string body = it->second;
  if (body.size() >= 2 && body.front() == '[' && body.back() == ']') {
    body = body.substr(1, body.size() - 2);
  } else {
    body = Unquote(body);
  }
  std::vector<std::string> items;
  std::istringstream in(body);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = Unquote(Trim(item));
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

}  // namespace srlproj

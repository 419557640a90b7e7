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

#ifndef SRLPROJ_CONFIG_H_
#define SRLPROJ_CONFIG_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace srlproj {

// Flat key/value settings in a TOML-like syntax:
//
//   # comment
//   k = 2
//   mode = "s2t"
//   verbal_pos = ["VERB", "AUX"]
//   [serve]
//   port = 8080          # stored as "serve.port"
//
// Values are kept as text and converted on access; conversions throw
// ConfigError naming the key.
class Config {
 public:
  static Config Parse(const std::string &text);
  static Config Load(const std::string &path);

  bool Has(const std::string &key) const { return values_.count(key) > 0; }
  std::optional<std::string> GetString(const std::string &key) const;
  std::optional<int> GetInt(const std::string &key) const;
  std::optional<bool> GetBool(const std::string &key) const;
  // A bracketed array or a single comma-separated string.
  std::optional<std::vector<std::string>> GetList(const std::string &key) const;

  const std::map<std::string, std::string> &values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace srlproj

#endif  // SRLPROJ_CONFIG_H_

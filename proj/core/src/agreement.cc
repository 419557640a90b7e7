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

#include "srlproj/agreement.h"

#include "srlproj/error.h"

namespace srlproj {

void ReliabilityData::Set(const std::string &unit, const std::string &coder,
                          const std::string &value) {
  if (known_units_.insert(unit).second) units_.push_back(unit);
  if (known_coders_.insert(coder).second) coders_.push_back(coder);
  values_[{unit, coder}] = value;
}

std::vector<std::string> ReliabilityData::ValuesOf(
    const std::string &unit) const {
  std::vector<std::string> values;
  for (const std::string &coder : coders_) {
    auto it = values_.find({unit, coder});
    if (it != values_.end()) values.push_back(it->second);
  }
  return values;
}

double KrippendorffAlpha(const ReliabilityData &data) {
  if (data.coders().size() < 2) {
    throw Error("Krippendorff's alpha needs at least two coders");
  }
  // Coincidence matrix over value categories.
  std::map<std::string, int> category;
  std::vector<std::vector<std::string>> units;
  for (const std::string &unit : data.units()) {
    std::vector<std::string> values = data.ValuesOf(unit);
    if (values.size() < 2) continue;
    for (const std::string &v : values) category.emplace(v, 0);
    units.push_back(std::move(values));
  }
  if (units.empty()) {
    throw Error("Krippendorff's alpha needs a unit coded by two coders");
  }
  int next = 0;
  for (auto &[value, id] : category) id = next++;
  const size_t c = category.size();
  std::vector<double> o(c * c, 0.0);
  for (const std::vector<std::string> &values : units) {
    const double weight = 1.0 / (values.size() - 1);
    for (size_t i = 0; i < values.size(); ++i) {
      for (size_t j = 0; j < values.size(); ++j) {
        if (i == j) continue;
        o[category[values[i]] * c + category[values[j]]] += weight;
      }
    }
  }
  std::vector<double> marginal(c, 0.0);
  double n = 0.0;
  for (size_t a = 0; a < c; ++a) {
    for (size_t b = 0; b < c; ++b) marginal[a] += o[a * c + b];
    n += marginal[a];
  }
  double observed = 0.0, expected = 0.0;
  for (size_t a = 0; a < c; ++a) {
    for (size_t b = 0; b < c; ++b) {
      if (a == b) continue;
      observed += o[a * c + b];
      expected += marginal[a] * marginal[b];
    }
  }
  if (expected == 0.0) {
    throw Error("Krippendorff's alpha is undefined: all values are identical");
  }
  return 1.0 - (n - 1.0) * observed / expected;
}

}  // namespace srlproj

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

#ifndef SRLPROJ_AGREEMENT_H_
#define SRLPROJ_AGREEMENT_H_

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace srlproj {

// Categorical codings of units by coders. Values are opaque strings; a coder
// may leave any unit uncoded.
class ReliabilityData {
 public:
  void Set(const std::string &unit, const std::string &coder,
           const std::string &value);

  const std::vector<std::string> &units() const { return units_; }
  const std::vector<std::string> &coders() const { return coders_; }
  // Coded values of one unit, in coder order.
  std::vector<std::string> ValuesOf(const std::string &unit) const;

 private:
  std::vector<std::string> units_;
  std::vector<std::string> coders_;
  std::set<std::string> known_units_;
  std::set<std::string> known_coders_;
  std::map<std::pair<std::string, std::string>, std::string> values_;
};

// Krippendorff's alpha with the nominal (binary) distance, computed from the
// coincidence matrix. Units with fewer than two values are not pairable and
// are ignored. Throws Error with fewer than two coders, no pairable unit, or
// when every pairable value is identical (expected disagreement is zero).
double KrippendorffAlpha(const ReliabilityData &data);

}  // namespace srlproj

#endif  // SRLPROJ_AGREEMENT_H_

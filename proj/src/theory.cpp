// Copyright 2026 The knowsat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "knowsat/theory.hpp"

#include <algorithm>

namespace knowsat {

Theory Theory::build(Signature sig, RewriteSystem rules) {
  for (size_t i = 0; i < rules.size(); ++i) {
    auto diags = check_rule_wellformed(rules[i], i, sig);
    if (!diags.empty()) {
      throw InputError("rule #" + std::to_string(i + 1) + ": " + diags.front().message);
    }
  }
  Theory th{std::move(sig), std::move(rules), {}};
  for (size_t i = 0; i < th.rules.size(); ++i) {
    th.decompositions.push_back(enumerate_decompositions(th.rules[i], i, th.signature));
  }
  return th;
}

void InitialFrame::add(uint32_t parameter, Term t) {
  if (find(parameter)) {
    throw InputError("parameter w" + std::to_string(parameter) + " defined twice");
  }
  if (!t.is_ground() || t.has_parameters()) {
    throw InputError("frame term not ground");
  }
  entries_.emplace_back(parameter, std::move(t));
}

std::vector<uint32_t> InitialFrame::domain() const {
  std::vector<uint32_t> d;
  for (const auto& [w, t] : entries_) d.push_back(w);
  std::sort(d.begin(), d.end());
  return d;
}

std::optional<Term> InitialFrame::find(uint32_t parameter) const {
  for (const auto& [w, t] : entries_) {
    if (w == parameter) return t;
  }
  return std::nullopt;
}

std::vector<std::optional<Term>> InitialFrame::table() const {
  uint32_t top = 0;
  for (const auto& [w, t] : entries_) top = std::max(top, w + 1);
  std::vector<std::optional<Term>> v(top);
  for (const auto& [w, t] : entries_) v[w] = t;
  return v;
}

}  // namespace knowsat

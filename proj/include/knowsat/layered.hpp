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

#ifndef KNOWSAT_LAYERED_HPP_
#define KNOWSAT_LAYERED_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "knowsat/theory.hpp"

namespace knowsat {

// Every rhs is a subterm of its lhs or a ground reduced term.
bool is_weakly_subterm(const RewriteSystem& R);

enum class LayeredVerdict { kLayered, kNotLayered, kInconclusive };
std::string to_string(LayeredVerdict v);

enum class EvidenceKind {
  // var(rhs) is covered by the cores.
  kVariableCondition,
  // An associated context over the slots reaches rhs in lower strata.
  kContext,
  kNone,
  kInconclusive,
};

// A piece of rhs reached by one head step of a lower rule.
struct HeadStep {
  Term piece;
  size_t rule = 0;
};

struct DecompositionEvidence {
  size_t rule = 0;
  int stratum = 0;
  Decomposition decomposition;
  EvidenceKind kind = EvidenceKind::kNone;
  // Public context over parameters 1..slot_count when kind is kContext.
  std::optional<Term> context;
  std::vector<HeadStep> steps;
  std::string note;
};

struct LayeredReport {
  LayeredVerdict verdict = LayeredVerdict::kLayered;
  bool weakly_subterm = false;
  std::vector<DecompositionEvidence> evidence;
};

// Budget bounds the candidate contexts tried per decomposition.
LayeredReport check_layered(const Theory& th, size_t budget = 10000);

std::string render(const LayeredReport& report, const Theory& th);

}  // namespace knowsat

#endif  // KNOWSAT_LAYERED_HPP_

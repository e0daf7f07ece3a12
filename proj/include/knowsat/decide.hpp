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

#ifndef KNOWSAT_DECIDE_HPP_
#define KNOWSAT_DECIDE_HPP_

#include <optional>
#include <string>

#include "knowsat/saturate.hpp"

namespace knowsat {

enum class DeductionAnswer { kYes, kNo, kFailed, kIndeterminate };
std::string to_string(DeductionAnswer a);

struct DeductionVerdict {
  DeductionAnswer answer = DeductionAnswer::kNo;
  std::optional<Term> recipe;
  Term normal_form;
  SaturationStats stats;
  std::string diagnostic;
};

// Decides deducibility from an already saturated state.
DeductionVerdict deducible_in(const SaturationResult& saturated, const Theory& th,
                              const InitialFrame& phi, const Term& t);

DeductionVerdict deducible(const Theory& th, const InitialFrame& phi, const Term& t,
                           const SaturationOptions& opts = {});

enum class EquivalenceAnswer { kEquivalent, kInequivalent, kFailed, kIndeterminate };
std::string to_string(EquivalenceAnswer a);

struct EquivalenceWitness {
  QuantifiedEquation equation;
  // 0 if the equation comes from the first frame's saturation, 1 otherwise.
  int origin = 0;
  // Bound variables replaced by the reserved constant.
  Term ground_lhs;
  Term ground_rhs;
  // Normal forms of the ground sides on the originating and the other frame.
  Term origin_value;
  Term other_lhs_value;
  Term other_rhs_value;
};

struct EquivalenceVerdict {
  EquivalenceAnswer answer = EquivalenceAnswer::kEquivalent;
  std::optional<EquivalenceWitness> witness;
  SaturationStats stats[2];
  std::string diagnostic;
};

// Bound variables are inert during normalization.
bool check_equation_on_frame(const QuantifiedEquation& eq, const InitialFrame& phi,
                             const Theory& th, size_t normalize_cap = kDefaultNormalizeCap);

EquivalenceVerdict equivalent_from(const SaturationResult& s1, const SaturationResult& s2,
                                   const Theory& th, const InitialFrame& phi1,
                                   const InitialFrame& phi2,
                                   size_t normalize_cap = kDefaultNormalizeCap);

// Throws InputError when the domains differ.
EquivalenceVerdict statically_equivalent(const Theory& th, const InitialFrame& phi1,
                                         const InitialFrame& phi2,
                                         const SaturationOptions& opts = {});

}  // namespace knowsat

#endif  // KNOWSAT_DECIDE_HPP_

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

#ifndef KNOWSAT_ORACLE_HPP_
#define KNOWSAT_ORACLE_HPP_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "knowsat/theory.hpp"

namespace knowsat {

// Brute-force recipe enumeration over the frame domain, the declared public
// constants and a small pool of fresh constants. Depth counts applications;
// leaves have depth 0.
struct RecipeBudget {
  unsigned max_depth = 3;
  unsigned fresh_constants = 2;
  size_t enumeration_cap = 200000;
};

struct OracleValue {
  Term recipe;
  Term value;
};

struct OracleEnumeration {
  // First recipe per distinct value, in enumeration order.
  std::vector<OracleValue> values;
  bool inconclusive = false;
  size_t candidates = 0;
};

OracleEnumeration oracle_enumerate(const Theory& th, const InitialFrame& phi,
                                   const RecipeBudget& b);

struct OracleDeduction {
  std::optional<Term> recipe;
  bool inconclusive = false;
};

OracleDeduction oracle_deducible(const Theory& th, const InitialFrame& phi, const Term& t,
                                 const RecipeBudget& b);

struct OracleDistinction {
  std::optional<std::pair<Term, Term>> test;
  bool inconclusive = false;
};

// Throws InputError when the domains differ.
OracleDistinction oracle_distinguish(const Theory& th, const InitialFrame& phi1,
                                     const InitialFrame& phi2, const RecipeBudget& b);

}  // namespace knowsat

#endif  // KNOWSAT_ORACLE_HPP_

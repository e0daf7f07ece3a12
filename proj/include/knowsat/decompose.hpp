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

#ifndef KNOWSAT_DECOMPOSE_HPP_
#define KNOWSAT_DECOMPOSE_HPP_

#include <string>
#include <vector>

#include "knowsat/rewriting.hpp"
#include "knowsat/term.hpp"

namespace knowsat {

// lhs = context[cores..., bound_vars..., free_vars...] where the context is
// a public recipe over parameters 1..n+p+q.
struct Decomposition {
  size_t rule = 0;
  Term context;
  std::vector<Term> cores;
  std::vector<VariableId> bound_vars;
  std::vector<VariableId> free_vars;

  size_t n() const { return cores.size(); }
  size_t p() const { return bound_vars.size(); }
  size_t q() const { return free_vars.size(); }
  size_t slot_count() const { return n() + p() + q(); }
  bool is_proper() const { return !context.is_parameter(); }
  // Slot i (1-based) as a plain term.
  Term slot(size_t i) const;
  // context[slots] as a plain term; equals the rule's lhs.
  Term reconstruct() const;
};

// Frontier position sets of lhs: per non-variable position either cut or
// (public head only) expand. Variables are always frontier positions.
std::vector<std::vector<Position>> cut_points(const Term& lhs, const Signature& sig,
                                              bool include_root = false);

Decomposition build_decomposition(const Term& lhs, const std::vector<Position>& frontier,
                                  size_t rule);

// Every proper decomposition, once, with canonical parameter order.
std::vector<Decomposition> enumerate_decompositions(const RewriteRule& rule, size_t index,
                                                    const Signature& sig,
                                                    bool include_improper = false);

std::string describe(const Decomposition& d, const Signature& sig);

}  // namespace knowsat

#endif  // KNOWSAT_DECOMPOSE_HPP_

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

#ifndef KNOWSAT_THEORY_HPP_
#define KNOWSAT_THEORY_HPP_

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "knowsat/decompose.hpp"
#include "knowsat/rewriting.hpp"
#include "knowsat/term.hpp"

namespace knowsat {

// Malformed user input (as opposed to a budget or a failed run).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Signature, rules and their precomputed proper decompositions.
struct Theory {
  Signature signature;
  RewriteSystem rules;
  std::vector<std::vector<Decomposition>> decompositions;

  // Throws InputError on an ill-formed rule.
  static Theory build(Signature sig, RewriteSystem rules);
};

// An initial frame: distinct parameters mapped to ground plain terms.
class InitialFrame {
 public:
  InitialFrame() = default;
  // Throws InputError on a duplicate parameter or a non-ground term.
  void add(uint32_t parameter, Term t);
  const std::vector<std::pair<uint32_t, Term>>& entries() const { return entries_; }
  std::vector<uint32_t> domain() const;
  std::optional<Term> find(uint32_t parameter) const;
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  // Table indexed by parameter id for ParameterInstantiator.
  std::vector<std::optional<Term>> table() const;

 private:
  std::vector<std::pair<uint32_t, Term>> entries_;
};

}  // namespace knowsat

#endif  // KNOWSAT_THEORY_HPP_

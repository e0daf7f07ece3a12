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

#ifndef KNOWSAT_REWRITING_HPP_
#define KNOWSAT_REWRITING_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "knowsat/term.hpp"

namespace knowsat {

// Raised when a computation exceeds its step budget.
class IndeterminateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RewriteRule {
  Term lhs;
  Term rhs;
  int stratum = 0;
};

class RewriteSystem {
 public:
  RewriteSystem() = default;
  // Throws std::invalid_argument when strata are not ascending.
  explicit RewriteSystem(std::vector<RewriteRule> rules);

  const std::vector<RewriteRule>& rules() const { return rules_; }
  const RewriteRule& operator[](size_t i) const { return rules_[i]; }
  size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }
  int stratum_count() const;

  // Indices of rules whose lhs head is f, in listing order.
  const std::vector<size_t>& rules_for(SymbolId f) const;
  // Rules of strata strictly below s.
  RewriteSystem below(int stratum) const;

 private:
  std::vector<RewriteRule> rules_;
  std::unordered_map<SymbolId, std::vector<size_t>> by_head_;
};

struct Reduction {
  Term result;
  Position position;
  size_t rule = 0;
};

// Innermost-leftmost, first listed rule wins.
std::optional<Reduction> reduce_once(const Term& t, const RewriteSystem& R);

inline constexpr size_t kDefaultNormalizeCap = 100000;

// Memoizing normalizer. Variables of the subject are inert. The step cap
// applies per top-level call.
class Normalizer {
 public:
  explicit Normalizer(const RewriteSystem& R, size_t step_cap = kDefaultNormalizeCap)
      : R_(&R), cap_(step_cap) {}

  Term operator()(const Term& t);
  size_t total_steps() const { return total_steps_; }
  void clear_cache() { cache_.clear(); }

 private:
  Term norm(const Term& t);
  const RewriteSystem* R_;
  size_t cap_;
  size_t steps_ = 0;
  size_t total_steps_ = 0;
  TermMap<Term> cache_;
};

Term normalize(const Term& t, const RewriteSystem& R,
               size_t step_cap = kDefaultNormalizeCap);
bool is_normal(const Term& t, const RewriteSystem& R);

struct RuleDiagnostic {
  size_t rule = 0;
  std::string message;
};

std::vector<RuleDiagnostic> check_rule_wellformed(const RewriteRule& rule, size_t index,
                                                  const Signature& sig);

enum class LintVerdict { kPass, kWarn, kInconclusive };

struct CriticalPair {
  size_t outer_rule = 0;
  size_t inner_rule = 0;
  Position position;
  Term peak;
  Term left;
  Term right;
  bool joinable = false;
  bool inconclusive = false;
};

struct ConvergenceReport {
  LintVerdict verdict = LintVerdict::kPass;
  std::vector<CriticalPair> pairs;
};

ConvergenceReport lint_convergence(const RewriteSystem& R, const Signature& sig,
                                   size_t budget = 10000);

std::string to_string(LintVerdict v);

}  // namespace knowsat

#endif  // KNOWSAT_REWRITING_HPP_

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

#include "knowsat/rewriting.hpp"

#include <algorithm>

namespace knowsat {

RewriteSystem::RewriteSystem(std::vector<RewriteRule> rules) : rules_(std::move(rules)) {
  for (size_t i = 0; i < rules_.size(); ++i) {
    if (i > 0 && rules_[i].stratum < rules_[i - 1].stratum) {
      throw std::invalid_argument("strata must be ascending");
    }
    const Term& l = rules_[i].lhs;
    if (l.valid() && l.is_application()) by_head_[l.symbol()].push_back(i);
  }
}

int RewriteSystem::stratum_count() const {
  return rules_.empty() ? 0 : rules_.back().stratum + 1;
}

const std::vector<size_t>& RewriteSystem::rules_for(SymbolId f) const {
  static const std::vector<size_t> kNone;
  auto it = by_head_.find(f);
  return it == by_head_.end() ? kNone : it->second;
}

RewriteSystem RewriteSystem::below(int stratum) const {
  std::vector<RewriteRule> out;
  for (const RewriteRule& r : rules_) {
    if (r.stratum < stratum) out.push_back(r);
  }
  return RewriteSystem(std::move(out));
}

namespace {

std::optional<Term> reduce_at_root(const Term& t, const RewriteSystem& R, size_t* rule) {
  if (!t.is_application()) return std::nullopt;
  for (size_t idx : R.rules_for(t.symbol())) {
    Substitution s;
    if (match_into(R[idx].lhs, t, s)) {
      if (rule) *rule = idx;
      return apply_substitution(R[idx].rhs, s);
    }
  }
  return std::nullopt;
}

bool find_redex(const Term& t, const RewriteSystem& R, Position& pos, Reduction& out) {
  for (size_t i = 0; i < t.arity(); ++i) {
    pos.push_back(static_cast<uint32_t>(i + 1));
    if (find_redex(t.arg(i), R, pos, out)) return true;
    pos.pop_back();
  }
  size_t rule = 0;
  if (auto r = reduce_at_root(t, R, &rule)) {
    out.result = *r;
    out.position = pos;
    out.rule = rule;
    return true;
  }
  return false;
}

}  // namespace

std::optional<Reduction> reduce_once(const Term& t, const RewriteSystem& R) {
  Position pos;
  Reduction red;
  if (!find_redex(t, R, pos, red)) return std::nullopt;
  red.result = replace_at(t, red.position, red.result);
  return red;
}

Term Normalizer::operator()(const Term& t) {
  steps_ = 0;
  return norm(t);
}

Term Normalizer::norm(const Term& t) {
  if (!t.is_application()) return t;
  if (auto it = cache_.find(t); it != cache_.end()) return it->second;
  std::vector<Term> chain{t};
  Term cur = t;
  Term result;
  while (true) {
    std::vector<Term> args;
    args.reserve(cur.arity());
    bool changed = false;
    for (const Term& a : cur.args()) {
      args.push_back(norm(a));
      changed |= !(args.back() == a);
    }
    Term u = changed ? Term::apply(cur.symbol(), args) : cur;
    if (changed) {
      if (auto it = cache_.find(u); it != cache_.end()) {
        result = it->second;
        break;
      }
      chain.push_back(u);
    }
    Term next;
    for (size_t idx : R_->rules_for(u.symbol())) {
      Substitution s;
      if (match_into((*R_)[idx].lhs, u, s)) {
        next = apply_substitution((*R_)[idx].rhs, s);
        break;
      }
    }
    if (!next.valid()) {
      result = u;
      break;
    }
    ++total_steps_;
    if (++steps_ > cap_) {
      throw IndeterminateError("normalization exceeded " + std::to_string(cap_) +
                               " rewrite steps");
    }
    if (auto it = cache_.find(next); it != cache_.end()) {
      result = it->second;
      break;
    }
    if (!next.is_application()) {
      result = next;
      break;
    }
    cur = next;
    chain.push_back(cur);
  }
  for (const Term& c : chain) cache_.emplace(c, result);
  cache_.emplace(result, result);
  return result;
}

Term normalize(const Term& t, const RewriteSystem& R, size_t step_cap) {
  Normalizer n(R, step_cap);
  return n(t);
}

bool is_normal(const Term& t, const RewriteSystem& R) {
  return !reduce_once(t, R).has_value();
}

std::vector<RuleDiagnostic> check_rule_wellformed(const RewriteRule& rule, size_t index,
                                                  const Signature& sig) {
  std::vector<RuleDiagnostic> out;
  if (!rule.lhs.valid() || !rule.rhs.valid()) {
    out.push_back({index, "rule is incomplete"});
    return out;
  }
  if (rule.lhs.is_variable()) out.push_back({index, "lhs is a variable"});
  if (rule.lhs.has_parameters() || rule.rhs.has_parameters()) {
    out.push_back({index, "rules may not mention parameters"});
  }
  std::vector<VariableId> lv = variables_of(rule.lhs);
  for (VariableId v : variables_of(rule.rhs)) {
    if (std::find(lv.begin(), lv.end(), v) == lv.end()) {
      out.push_back({index, "variable " + sig.variable_name(v) + " not in lhs"});
    }
  }
  return out;
}

namespace {

constexpr VariableId kRenameOffset = 0x20000000u;

Term rename_apart(const Term& t) {
  Substitution s;
  for (VariableId v : variables_of(t)) s.bind(v, Term::variable(v + kRenameOffset));
  return apply_substitution(t, s);
}

Term resolve(const Term& t, const Substitution& s) {
  if (!t.has_variables()) return t;
  if (t.is_variable()) {
    const Term* b = s.find(t.id());
    return b ? resolve(*b, s) : t;
  }
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(resolve(a, s));
  return Term::apply(t.symbol(), args);
}

bool unify(const Term& a0, const Term& b0, Substitution& s) {
  Term a = a0.is_variable() && s.find(a0.id()) ? resolve(a0, s) : a0;
  Term b = b0.is_variable() && s.find(b0.id()) ? resolve(b0, s) : b0;
  if (a == b) return true;
  if (a.is_variable() || b.is_variable()) {
    if (!a.is_variable()) std::swap(a, b);
    Term rb = resolve(b, s);
    if (rb == a) return true;
    if (occurs(a.id(), rb)) return false;
    s.bind(a.id(), rb);
    return true;
  }
  if (a.kind() != b.kind() || a.id() != b.id() || a.arity() != b.arity()) return false;
  for (size_t i = 0; i < a.arity(); ++i) {
    if (!unify(a.arg(i), b.arg(i), s)) return false;
  }
  return true;
}

}  // namespace

ConvergenceReport lint_convergence(const RewriteSystem& R, const Signature&,
                                   size_t budget) {
  ConvergenceReport report;
  for (size_t i = 0; i < R.size(); ++i) {
    for (const Subterm& sub : subterms(R[i].lhs)) {
      if (sub.term.is_variable()) continue;
      for (size_t j = 0; j < R.size(); ++j) {
        if (i == j && sub.position.empty()) continue;
        Term inner = rename_apart(R[j].lhs);
        Term inner_rhs;
        {
          Substitution ren;
          for (VariableId v : variables_of(R[j].lhs)) {
            ren.bind(v, Term::variable(v + kRenameOffset));
          }
          inner_rhs = apply_substitution(R[j].rhs, ren);
        }
        Substitution mgu;
        if (!unify(sub.term, inner, mgu)) continue;
        CriticalPair cp;
        cp.outer_rule = i;
        cp.inner_rule = j;
        cp.position = sub.position;
        cp.peak = resolve(R[i].lhs, mgu);
        cp.left = resolve(R[i].rhs, mgu);
        cp.right = replace_at(cp.peak, sub.position, resolve(inner_rhs, mgu));
        try {
          Normalizer n(R, budget);
          cp.joinable = n(cp.left) == n(cp.right);
        } catch (const IndeterminateError&) {
          cp.inconclusive = true;
        }
        if (cp.inconclusive) {
          if (report.verdict == LintVerdict::kPass) {
            report.verdict = LintVerdict::kInconclusive;
          }
        } else if (!cp.joinable) {
          report.verdict = LintVerdict::kWarn;
        }
        report.pairs.push_back(std::move(cp));
      }
    }
  }
  return report;
}

std::string to_string(LintVerdict v) {
  switch (v) {
    case LintVerdict::kPass:
      return "pass";
    case LintVerdict::kWarn:
      return "warn";
    case LintVerdict::kInconclusive:
      return "inconclusive";
  }
  return "";
}

}  // namespace knowsat

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

#include "knowsat/layered.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace knowsat {

bool is_weakly_subterm(const RewriteSystem& R) {
  for (const RewriteRule& rule : R.rules()) {
    bool ok = false;
    if (rule.rhs.is_ground()) ok = is_normal(rule.rhs, R);
    if (!ok) {
      for (const Term& s : distinct_subterms(rule.lhs)) {
        if (s == rule.rhs) {
          ok = true;
          break;
        }
      }
    }
    if (!ok) return false;
  }
  return true;
}

std::string to_string(LayeredVerdict v) {
  switch (v) {
    case LayeredVerdict::kLayered:
      return "layered";
    case LayeredVerdict::kNotLayered:
      return "not-layered";
    case LayeredVerdict::kInconclusive:
      return "inconclusive";
  }
  return "";
}

namespace {

constexpr VariableId kRenameOffset = 0x20000000u;

Term rename_apart(const Term& t) {
  Substitution s;
  for (VariableId v : variables_of(t)) s.bind(v, Term::variable(v + kRenameOffset));
  return apply_substitution(t, s);
}

// Searches a public context C over the slots of one decomposition such that
// each maximal piece of rhs not built by C is a slot or one head step of a
// lower rule applied to a slot-expressible term.
class ContextSearch {
 public:
  ContextSearch(const Decomposition& d, const RewriteSystem& lower, const Signature& sig,
                size_t budget)
      : lower_(lower), sig_(sig), budget_(budget) {
    for (size_t i = 1; i <= d.slot_count(); ++i) slots_.push_back(d.slot(i));
    for (const RewriteRule& r : lower.rules()) {
      renamed_.push_back({rename_apart(r.lhs), rename_apart(r.rhs)});
    }
  }

  std::optional<Term> realize(const Term& t) {
    if (!spend()) return std::nullopt;
    if (auto c = slot_of(t)) return c;
    if (t.is_application() && sig_.is_public(t.symbol())) {
      size_t mark = steps_.size();
      std::vector<Term> ctxs;
      for (const Term& a : t.args()) {
        auto c = realize(a);
        if (!c) break;
        ctxs.push_back(*c);
      }
      if (ctxs.size() == t.arity()) return Term::apply(t.symbol(), ctxs);
      steps_.resize(mark);
    }
    for (size_t j = 0; j < renamed_.size(); ++j) {
      Substitution theta;
      if (!match_into(renamed_[j].second, t, theta)) continue;
      std::optional<Term> found;
      express(renamed_[j].first, theta, [&](const Term& c, const Substitution&) {
        found = c;
        return true;
      });
      if (found) {
        steps_.push_back({t, j});
        return found;
      }
      if (exhausted_) return std::nullopt;
    }
    return std::nullopt;
  }

  bool exhausted() const { return exhausted_; }
  const std::vector<HeadStep>& steps() const { return steps_; }

 private:
  using Cont = std::function<bool(const Term&, const Substitution&)>;

  bool spend() {
    if (spent_ >= budget_) {
      exhausted_ = true;
      return false;
    }
    ++spent_;
    return true;
  }

  std::optional<Term> slot_of(const Term& t) const {
    for (size_t i = 0; i < slots_.size(); ++i) {
      if (slots_[i] == t) return Term::parameter(static_cast<uint32_t>(i + 1));
    }
    return std::nullopt;
  }

  // Zero-step expressibility of a term free of rule variables.
  std::optional<Term> literal(const Term& t) {
    if (!spend()) return std::nullopt;
    if (auto c = slot_of(t)) return c;
    if (!t.is_application() || !sig_.is_public(t.symbol())) return std::nullopt;
    std::vector<Term> ctxs;
    for (const Term& a : t.args()) {
      auto c = literal(a);
      if (!c) return std::nullopt;
      ctxs.push_back(*c);
    }
    return Term::apply(t.symbol(), ctxs);
  }

  // Enumerates contexts C and extensions of theta with C[slots] = u theta.
  // Unbound rule variables range over the slots and the reserved constant.
  bool express(const Term& u, const Substitution& theta, const Cont& k) {
    if (!spend()) return false;
    if (u.is_variable()) {
      if (const Term* b = theta.find(u.id())) {
        auto c = literal(*b);
        return c && k(*c, theta);
      }
      for (size_t i = 0; i < slots_.size(); ++i) {
        Substitution next = theta;
        next.bind(u.id(), slots_[i]);
        if (k(Term::parameter(static_cast<uint32_t>(i + 1)), next)) return true;
        if (exhausted_) return false;
      }
      Term a = Term::constant(sig_.reserved_constant());
      Substitution next = theta;
      next.bind(u.id(), a);
      return k(a, next);
    }
    for (size_t i = 0; i < slots_.size(); ++i) {
      Substitution next = theta;
      if (match_into(u, slots_[i], next) &&
          k(Term::parameter(static_cast<uint32_t>(i + 1)), next)) {
        return true;
      }
      if (exhausted_) return false;
    }
    if (!u.is_application() || !sig_.is_public(u.symbol())) return false;
    return express_args(u, 0, theta, {}, k);
  }

  bool express_args(const Term& u, size_t i, const Substitution& theta,
                    const std::vector<Term>& done, const Cont& k) {
    if (i == u.arity()) return k(Term::apply(u.symbol(), done), theta);
    return express(u.arg(i), theta, [&](const Term& c, const Substitution& next) {
      std::vector<Term> more = done;
      more.push_back(c);
      return express_args(u, i + 1, next, more, k);
    });
  }

  const RewriteSystem& lower_;
  const Signature& sig_;
  size_t budget_;
  size_t spent_ = 0;
  bool exhausted_ = false;
  std::vector<Term> slots_;
  std::vector<std::pair<Term, Term>> renamed_;
  std::vector<HeadStep> steps_;
};

bool covered_by_cores(const Term& rhs, const Decomposition& d) {
  std::vector<VariableId> core_vars;
  for (const Term& c : d.cores) collect_variables(c, core_vars);
  for (VariableId v : variables_of(rhs)) {
    if (std::find(core_vars.begin(), core_vars.end(), v) == core_vars.end()) return false;
  }
  return true;
}

DecompositionEvidence examine(const Theory& th, const RewriteRule& rule, size_t index,
                              const Decomposition& d, const RewriteSystem& lower,
                              size_t budget) {
  DecompositionEvidence ev;
  ev.rule = index;
  ev.stratum = rule.stratum;
  ev.decomposition = d;
  if (covered_by_cores(rule.rhs, d)) {
    ev.kind = EvidenceKind::kVariableCondition;
    return ev;
  }
  ContextSearch search(d, lower, th.signature, budget);
  std::optional<Term> c = search.realize(rule.rhs);
  if (!c) {
    ev.kind = search.exhausted() ? EvidenceKind::kInconclusive : EvidenceKind::kNone;
    ev.note = search.exhausted() ? "search budget exhausted"
                                 : "no context realizes " + to_string(rule.rhs, th.signature);
    if (!search.exhausted()) {
      // Name the first variable of rhs that is neither a slot nor inside a core.
      for (VariableId v : variables_of(rule.rhs)) {
        ContextSearch probe(d, lower, th.signature, budget);
        if (!probe.realize(Term::variable(v))) {
          ev.note = "no context realizes " + th.signature.variable_name(v);
          break;
        }
      }
    }
    return ev;
  }
  std::vector<std::optional<Term>> table(d.slot_count() + 1);
  for (size_t i = 1; i <= d.slot_count(); ++i) table[i] = d.slot(i);
  Term filled = ParameterInstantiator(std::move(table))(*c);
  if (!(normalize(filled, lower) == normalize(rule.rhs, lower))) {
    throw std::logic_error("associated context " + to_string(*c, th.signature) +
                           " does not reach the rhs");
  }
  ev.kind = EvidenceKind::kContext;
  ev.context = c;
  ev.steps = search.steps();
  return ev;
}

}  // namespace

LayeredReport check_layered(const Theory& th, size_t budget) {
  LayeredReport report;
  report.weakly_subterm = is_weakly_subterm(th.rules);
  const RewriteSystem empty;
  bool inconclusive = false;
  bool failed = false;
  for (size_t i = 0; i < th.rules.size(); ++i) {
    const RewriteRule& rule = th.rules[i];
    RewriteSystem lower = report.weakly_subterm ? empty : th.rules.below(rule.stratum);
    for (const Decomposition& d :
         enumerate_decompositions(rule, i, th.signature, /*include_improper=*/true)) {
      DecompositionEvidence ev = examine(th, rule, i, d, lower, budget);
      if (report.weakly_subterm) ev.stratum = 0;
      failed |= ev.kind == EvidenceKind::kNone;
      inconclusive |= ev.kind == EvidenceKind::kInconclusive;
      report.evidence.push_back(std::move(ev));
    }
  }
  if (report.weakly_subterm) {
    report.verdict = LayeredVerdict::kLayered;
  } else if (failed) {
    report.verdict = LayeredVerdict::kNotLayered;
  } else if (inconclusive) {
    report.verdict = LayeredVerdict::kInconclusive;
  } else {
    report.verdict = LayeredVerdict::kLayered;
  }
  return report;
}

std::string render(const LayeredReport& report, const Theory& th) {
  const Signature& sig = th.signature;
  std::string out = "verdict: " + to_string(report.verdict);
  if (report.weakly_subterm) out += " (weakly subterm)";
  out += "\n";
  size_t last = static_cast<size_t>(-1);
  for (const DecompositionEvidence& ev : report.evidence) {
    if (ev.rule != last) {
      last = ev.rule;
      const RewriteRule& r = th.rules[ev.rule];
      out += "rule #" + std::to_string(ev.rule + 1) + " stratum " +
             std::to_string(ev.stratum) + ": " + to_string(r.lhs, sig) + " -> " +
             to_string(r.rhs, sig) + "\n";
    }
    out += "  " + describe(ev.decomposition, sig) + ": ";
    switch (ev.kind) {
      case EvidenceKind::kVariableCondition:
        out += "(i) rhs variables occur in the cores";
        break;
      case EvidenceKind::kContext:
        out += "(ii) context " + to_string(*ev.context, sig);
        for (const HeadStep& s : ev.steps) {
          out += "; " + to_string(s.piece, sig) + " by rule #" + std::to_string(s.rule + 1);
        }
        break;
      case EvidenceKind::kNone:
        out += "fails, " + ev.note;
        break;
      case EvidenceKind::kInconclusive:
        out += "inconclusive, " + ev.note;
        break;
    }
    out += "\n";
  }
  return out;
}

}  // namespace knowsat

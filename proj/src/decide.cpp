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

#include "knowsat/decide.hpp"

namespace knowsat {

std::string to_string(DeductionAnswer a) {
  switch (a) {
    case DeductionAnswer::kYes:
      return "yes";
    case DeductionAnswer::kNo:
      return "no";
    case DeductionAnswer::kFailed:
      return "failed";
    case DeductionAnswer::kIndeterminate:
      return "indeterminate";
  }
  return "";
}

std::string to_string(EquivalenceAnswer a) {
  switch (a) {
    case EquivalenceAnswer::kEquivalent:
      return "equivalent";
    case EquivalenceAnswer::kInequivalent:
      return "inequivalent";
    case EquivalenceAnswer::kFailed:
      return "failed";
    case EquivalenceAnswer::kIndeterminate:
      return "indeterminate";
  }
  return "";
}

namespace {

// Evaluates recipes on a fixed frame.
class FrameEvaluator {
 public:
  FrameEvaluator(const Theory& th, const InitialFrame& phi, size_t cap)
      : norm_(th.rules, cap), inst_(phi.table()) {}
  Term operator()(const Term& recipe) { return norm_(inst_(recipe)); }

 private:
  Normalizer norm_;
  ParameterInstantiator inst_;
};

}  // namespace

DeductionVerdict deducible_in(const SaturationResult& saturated, const Theory& th,
                              const InitialFrame& phi, const Term& t) {
  DeductionVerdict v;
  v.stats = saturated.stats;
  v.diagnostic = saturated.diagnostic;
  if (saturated.status == SaturationStatus::kFailed) {
    v.answer = DeductionAnswer::kFailed;
    return v;
  }
  if (saturated.status != SaturationStatus::kSaturated) {
    v.answer = DeductionAnswer::kIndeterminate;
    return v;
  }
  try {
    v.normal_form = normalize(t, th.rules);
  } catch (const IndeterminateError& e) {
    v.answer = DeductionAnswer::kIndeterminate;
    v.diagnostic = e.what();
    return v;
  }
  v.recipe = syntactic_deduce(saturated.frame, v.normal_form, th.signature);
  if (!v.recipe) {
    v.answer = DeductionAnswer::kNo;
    return v;
  }
  FrameEvaluator eval(th, phi, kDefaultNormalizeCap);
  if (!(eval(*v.recipe) == v.normal_form)) {
    throw SoundnessError("deduction witness " + to_string(*v.recipe, th.signature) +
                         " does not evaluate to " + to_string(v.normal_form, th.signature));
  }
  v.answer = DeductionAnswer::kYes;
  return v;
}

DeductionVerdict deducible(const Theory& th, const InitialFrame& phi, const Term& t,
                           const SaturationOptions& opts) {
  return deducible_in(saturate(th, phi, opts), th, phi, t);
}

bool check_equation_on_frame(const QuantifiedEquation& eq, const InitialFrame& phi,
                             const Theory& th, size_t normalize_cap) {
  FrameEvaluator eval(th, phi, normalize_cap);
  return eval(eq.lhs) == eval(eq.rhs);
}

namespace {

std::optional<EquivalenceWitness> make_witness(const QuantifiedEquation& eq, int origin,
                                               const Theory& th,
                                               FrameEvaluator& on_origin,
                                               FrameEvaluator& on_other) {
  const Signature& sig = th.signature;
  std::vector<std::vector<Term>> attempts;
  attempts.push_back(std::vector<Term>(eq.bound_count, Term::constant(sig.reserved_constant())));
  if (eq.bound_count > 1 && eq.bound_count <= 1 + sig.fresh_pool().size()) {
    std::vector<Term> distinct{Term::constant(sig.reserved_constant())};
    for (SymbolId c : sig.fresh_pool()) distinct.push_back(Term::constant(c));
    distinct.resize(eq.bound_count);
    attempts.push_back(distinct);
  }
  for (const auto& values : attempts) {
    Substitution theta;
    for (uint32_t k = 0; k < eq.bound_count; ++k) theta.bind(bound_variable(k), values[k]);
    EquivalenceWitness w;
    w.equation = eq;
    w.origin = origin;
    w.ground_lhs = apply_substitution(eq.lhs, theta);
    w.ground_rhs = apply_substitution(eq.rhs, theta);
    Term a = on_origin(w.ground_lhs);
    Term b = on_origin(w.ground_rhs);
    w.origin_value = a;
    w.other_lhs_value = on_other(w.ground_lhs);
    w.other_rhs_value = on_other(w.ground_rhs);
    if (a == b && !(w.other_lhs_value == w.other_rhs_value)) return w;
  }
  return std::nullopt;
}

}  // namespace

EquivalenceVerdict equivalent_from(const SaturationResult& s1, const SaturationResult& s2,
                                   const Theory& th, const InitialFrame& phi1,
                                   const InitialFrame& phi2, size_t normalize_cap) {
  EquivalenceVerdict v;
  v.stats[0] = s1.stats;
  v.stats[1] = s2.stats;
  const SaturationResult* runs[2] = {&s1, &s2};
  for (const SaturationResult* r : runs) {
    if (r->status == SaturationStatus::kFailed) {
      v.answer = EquivalenceAnswer::kFailed;
      v.diagnostic = r->diagnostic;
      return v;
    }
  }
  for (const SaturationResult* r : runs) {
    if (r->status != SaturationStatus::kSaturated) {
      v.answer = EquivalenceAnswer::kIndeterminate;
      v.diagnostic = r->diagnostic;
      return v;
    }
  }
  try {
    FrameEvaluator eval[2] = {FrameEvaluator(th, phi1, normalize_cap),
                              FrameEvaluator(th, phi2, normalize_cap)};
    for (int i = 0; i < 2; ++i) {
      int j = 1 - i;
      std::vector<QuantifiedEquation> eqs = runs[i]->frame_equations();
      auto theory = runs[i]->theory_equations();
      eqs.insert(eqs.end(), theory.begin(), theory.end());
      for (const QuantifiedEquation& eq : eqs) {
        if (eval[j](eq.lhs) == eval[j](eq.rhs)) continue;
        v.answer = EquivalenceAnswer::kInequivalent;
        v.witness = make_witness(eq, i, th, eval[i], eval[j]);
        if (!v.witness) {
          throw SoundnessError("witness " + to_string(eq, th.signature) +
                               " does not ground to a distinguishing test");
        }
        return v;
      }
    }
  } catch (const IndeterminateError& e) {
    v.answer = EquivalenceAnswer::kIndeterminate;
    v.diagnostic = e.what();
    return v;
  }
  v.answer = EquivalenceAnswer::kEquivalent;
  return v;
}

EquivalenceVerdict statically_equivalent(const Theory& th, const InitialFrame& phi1,
                                         const InitialFrame& phi2,
                                         const SaturationOptions& opts) {
  if (phi1.domain() != phi2.domain()) {
    throw InputError("frames have different domains");
  }
  SaturationResult s1 = saturate(th, phi1, opts);
  SaturationResult s2 = saturate(th, phi2, opts);
  return equivalent_from(s1, s2, th, phi1, phi2, opts.normalize_cap);
}

}  // namespace knowsat

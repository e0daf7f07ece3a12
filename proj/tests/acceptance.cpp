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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Every limit is pinned below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "knowsat/bench.hpp"
#include "knowsat/decide.hpp"
#include "knowsat/layered.hpp"
#include "knowsat/oracle.hpp"
#include "support.hpp"

namespace knowsat::acceptance {
namespace {

using Clock = std::chrono::steady_clock;
using Strings = std::vector<std::string>;
using testing::parse;

// Wall-clock limits in milliseconds.
constexpr double kGoldenMs = 1000;
constexpr double kQuantifiedMs = 5000;
constexpr double kNonTerminationMs = 5000;
constexpr double kLayeredTotalMs = 10000;
constexpr double kBenchSmallMs = 10000;     // n = 10
constexpr double kBenchLargeMs = 600000;    // n = 20
constexpr double kOracleSuiteMs = 300000;

// Benchmark depths, timing rounds and decisions per timed batch.
constexpr unsigned kBenchDepths[] = {10, 14, 16, 18, 20};
constexpr int kBenchRepeats = 9;
constexpr int kBenchBatch = 50;

// Differential oracle suite.
constexpr int kOracleFrames = 200;
constexpr size_t kOracleMaxFacts = 4;
constexpr unsigned kOracleTermDepth = 3;
constexpr unsigned kOracleRecipeDepth = 4;
constexpr unsigned kOracleFreshConstants = 2;
constexpr size_t kOracleCap = 20000;
constexpr uint32_t kOracleSeed = 1000;

const char* const kCorpus[] = {"e_enc.th",      "e_enc_ex34.th",  "e_hom.th",     "e_hom_ex35.th",
                               "e_blind.th",    "e_blind_vote.th", "e_pref.th",   "e_pref_cbc.th",
                               "e_mal.th",      "e_add.th",       "nonterm.th"};

const char* const kOracleTheories[] = {"e_enc.th", "e_blind.th", "e_pref.th"};

struct Outcome {
  bool pass = false;
  std::string detail;
};

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string ms(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0f ms", v);
  return buf;
}

std::string precise_ms(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f ms", v);
  return buf;
}

Strings facts_of(const Frame& f, const Signature& sig) {
  Strings out;
  for (const DeductionFact& d : f.sorted()) out.push_back(to_string(d, sig));
  return out;
}

Strings equations_of(const std::vector<QuantifiedEquation>& eqs, const Signature& sig) {
  Strings out;
  for (const auto& e : eqs) out.push_back(to_string(e, sig));
  return out;
}

std::string join(const Strings& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "; " : "") + v[i];
  return s;
}

bool recipe_ok(const Theory& th, const InitialFrame& phi, const Term& recipe, const Term& t) {
  ParameterInstantiator inst(phi.table());
  return is_recipe(recipe, th.signature) &&
         normalize(inst(recipe), th.rules) == normalize(t, th.rules);
}

// The ground witness holds on its originating frame and fails on the other.
bool witness_ok(const Theory& th, const InitialFrame& phi1, const InitialFrame& phi2,
                const EquivalenceWitness& w) {
  const InitialFrame& holds = w.origin == 0 ? phi1 : phi2;
  const InitialFrame& fails = w.origin == 0 ? phi2 : phi1;
  ParameterInstantiator ih(holds.table());
  ParameterInstantiator ifl(fails.table());
  return normalize(ih(w.ground_lhs), th.rules) == normalize(ih(w.ground_rhs), th.rules) &&
         normalize(ifl(w.ground_lhs), th.rules) != normalize(ifl(w.ground_rhs), th.rules);
}

// ---- Criterion 1 ----

Outcome golden_saturation() {
  auto prog = testing::load_program("e_enc_ex34.th");
  const Signature& sig = prog.theory.signature;
  auto t0 = Clock::now();
  std::string detail;
  bool pass = true;
  for (std::string c : {"0", "1"}) {
    auto r = saturate(prog.theory, *prog.frame("phi" + c));
    Strings facts = facts_of(r.frame, sig);
    Strings eqs = equations_of(r.frame_equations(), sig);
    Strings want_facts{"w1 |> enc(c" + c + ",k)", "w2 |> k"};
    Strings want_eqs{"dec(w1,w2) ~ c" + c, "enc(c" + c + ",w2) ~ w1"};
    bool ok = r.saturated() && facts == want_facts && eqs == want_eqs;
    pass &= ok;
    detail += "phi" + c + (ok ? " exact" : " got {" + join(facts) + " | " + join(eqs) + "}") + ", ";
  }
  double t = elapsed_ms(t0);
  pass &= t < kGoldenMs;
  return {pass, detail + ms(t)};
}

// ---- Criterion 2 ----

Outcome golden_init() {
  auto prog = testing::load_program("e_hom_ex35.th");
  const Signature& sig = prog.theory.signature;
  auto t0 = Clock::now();
  Saturation s(prog.theory, *prog.frame("phi"));
  double t = elapsed_ms(t0);
  Strings facts = facts_of(s.frame(), sig);
  Strings eqs = equations_of(s.equations(), sig);
  bool pass = facts == Strings{"w1 |> <enc(c0,k),enc(c1,k)>", "w3 |> k"} &&
              eqs == Strings{"w2 ~ w1"} && t < kGoldenMs;
  return {pass, "Init = {" + join(facts) + "}, {" + join(eqs) + "}, " + ms(t)};
}

// ---- Criterion 3 ----

Outcome equivalence_verdicts() {
  auto prog = testing::load_program("e_enc_ex34.th");
  const Theory& th = prog.theory;
  const Signature& sig = th.signature;
  bool pass = true;
  std::string detail;

  auto t0 = Clock::now();
  auto v = statically_equivalent(th, *prog.frame("phi0"), *prog.frame("phi1"));
  double t1 = elapsed_ms(t0);
  bool ok1 = v.answer == EquivalenceAnswer::kInequivalent && v.witness &&
             witness_ok(th, *prog.frame("phi0"), *prog.frame("phi1"), *v.witness) &&
             check_equation_on_frame(v.witness->equation, *prog.frame("phi0"), th) &&
             !check_equation_on_frame(v.witness->equation, *prog.frame("phi1"), th);
  pass &= ok1 && t1 < kGoldenMs;
  detail += "phi0/phi1 " + to_string(v.answer);
  if (v.witness) detail += " via " + to_string(v.witness->equation, sig);
  detail += ok1 ? " (witness verified)" : " (witness invalid)";
  detail += " " + ms(t1);

  t0 = Clock::now();
  auto w = statically_equivalent(th, *prog.frame("psi0"), *prog.frame("psi1"));
  double t2 = elapsed_ms(t0);
  pass &= w.answer == EquivalenceAnswer::kEquivalent && t2 < kGoldenMs;
  detail += "; psi0/psi1 " + to_string(w.answer) + " " + ms(t2);
  return {pass, detail};
}

// ---- Criterion 4 ----

Outcome deduction_verdicts() {
  auto prog = testing::load_program("e_enc_ex34.th");
  const Theory& th = prog.theory;
  Signature& sig = prog.theory.signature;
  const InitialFrame& phi0 = *prog.frame("phi0");
  bool pass = true;
  std::string detail;
  auto t0 = Clock::now();
  for (const char* text : {"<k,k>", "c0"}) {
    Term t = parse(sig, text);
    auto v = deducible(th, phi0, t);
    bool ok = v.answer == DeductionAnswer::kYes && v.recipe && recipe_ok(th, phi0, *v.recipe, t);
    pass &= ok;
    detail += std::string(text) + " " + to_string(v.answer);
    if (v.recipe) detail += " by " + to_string(*v.recipe, sig);
    detail += ok ? " (verified), " : " (not verified), ";
  }
  double t = elapsed_ms(t0);
  pass &= t < kGoldenMs;
  return {pass, detail + ms(t)};
}

// ---- Criterion 5 ----

// forall z. dec(w1,z) ~ <dec(proj1(w1),z),dec(proj2(w1),z)> must follow from
// the saturated equations. Each equation is instantiated with a single
// fresh term for its bound variables and closed under congruence.
Outcome quantified_equation() {
  auto prog = testing::load_program("e_hom_ex35.th");
  Theory& th = prog.theory;
  Signature& sig = th.signature;
  auto t0 = Clock::now();
  auto r = saturate(th, *prog.frame("phi"));
  Term z = Term::constant(sig.add({"$z", 0, Visibility::kPublic, SymbolOrigin::kDeclared}));
  Term lhs = sig.make("dec", {parse(sig, "w1"), z});
  Term rhs = sig.make("pair", {sig.make("dec", {parse(sig, "proj1(w1)"), z}),
                               sig.make("dec", {parse(sig, "proj2(w1)"), z})});
  testing::CongruenceClosure cc;
  cc.add_term(lhs);
  cc.add_term(rhs);
  for (const auto& e : r.equations) {
    auto ground = [&](const Term& t) {
      Substitution s;
      for (uint32_t i = 0; i < e.bound_count; ++i) s.bind(bound_variable(i), z);
      return apply_substitution(t, s);
    };
    cc.merge(ground(e.lhs), ground(e.rhs));
  }
  bool derived = cc.equal(lhs, rhs);
  double t = elapsed_ms(t0);
  // Independent semantic check of the target on the frame itself.
  Term zv = Term::variable(bound_variable(0));
  Term qlhs = sig.make("dec", {parse(sig, "w1"), zv});
  Term qrhs = sig.make("pair", {sig.make("dec", {parse(sig, "proj1(w1)"), zv}),
                                sig.make("dec", {parse(sig, "proj2(w1)"), zv})});
  bool holds = check_equation_on_frame(QuantifiedEquation::make(qlhs, qrhs), *prog.frame("phi"), th);
  bool pass = r.saturated() && derived && holds && t < kQuantifiedMs;
  return {pass, std::string(r.saturated() ? "saturated" : "not saturated") + ", " +
                    std::to_string(r.equations.size()) + " equations, target " +
                    (derived ? "derived by congruence closure" : "NOT derived") +
                    (holds ? ", holds on frame" : ", fails on frame") + ", " + ms(t)};
}

// ---- Criterion 6 ----

Outcome malleable_failure() {
  auto prog = testing::load_program("e_mal.th");
  auto t0 = Clock::now();
  Saturation s(prog.theory, *prog.frame("phi"));
  SaturationResult r = s.run();
  double t = elapsed_ms(t0);
  bool quiescent = s.pending().empty() && !s.deferred().empty();
  bool pass = r.status == SaturationStatus::kFailed && quiescent &&
              r.diagnostic.find("mal(w1,w2)") != std::string::npos && t < kGoldenMs;
  return {pass, to_string(r.status) + ", pending " + std::to_string(s.pending().size()) +
                    ", deferred " + std::to_string(s.deferred().size()) + ", " + ms(t)};
}

// ---- Criterion 7 ----

Outcome non_termination() {
  auto prog = testing::load_program("nonterm.th");
  const Signature& sig = prog.theory.signature;
  Strings added;
  SaturationOptions opts;
  opts.trace = [&](const TraceEvent& e) {
    if (e.fact && e.rule != RuleName::kInit && added.size() < 3)
      added.push_back(to_string(*e.fact, sig));
  };
  auto t0 = Clock::now();
  auto r = saturate(prog.theory, *prog.frame("phi"), opts);
  double t = elapsed_ms(t0);
  Strings want{"f(w0) |> g(h(a))", "f(f(w0)) |> g(h(h(a)))", "f(f(f(w0))) |> g(h(h(h(a))))"};
  bool pass = r.status == SaturationStatus::kIndeterminate && added == want &&
              t < kNonTerminationMs;
  return {pass, to_string(r.status) + " after " + std::to_string(r.stats.strict_steps) +
                    " strict steps, first facts {" + join(added) + "}, " + ms(t)};
}

// ---- Criterion 8 ----

Outcome layered_classification() {
  struct Case {
    const char* file;
    LayeredVerdict want;
  };
  const Case cases[] = {{"e_enc.th", LayeredVerdict::kLayered},
                        {"e_hom.th", LayeredVerdict::kLayered},
                        {"e_blind.th", LayeredVerdict::kLayered},
                        {"e_pref.th", LayeredVerdict::kLayered},
                        {"e_mal.th", LayeredVerdict::kNotLayered}};
  bool pass = true;
  std::string detail;
  auto t0 = Clock::now();
  for (const Case& c : cases) {
    auto prog = testing::load_program(c.file);
    auto v = check_layered(prog.theory).verdict;
    pass &= v == c.want;
    detail += std::string(c.file) + " " + to_string(v) + ", ";
  }
  double t = elapsed_ms(t0);
  pass &= t < kLayeredTotalMs;
  return {pass, detail + ms(t)};
}

// ---- Criterion 9 ----

Outcome decomposition_counts() {
  auto t0 = Clock::now();
  auto enc = testing::load_program("e_enc.th");
  auto hom = testing::load_program("e_hom.th");
  auto pref = testing::load_program("e_pref.th");
  size_t a = enc.theory.decompositions[0].size();
  size_t b = hom.theory.decompositions[4].size();
  size_t c = pref.theory.decompositions[3].size();
  double t = elapsed_ms(t0);
  bool pass = a == 2 && b == 2 && c == 3 && t < kGoldenMs;
  return {pass, "dec/enc " + std::to_string(a) + ", dec/pair " + std::to_string(b) +
                    ", pref " + std::to_string(c) + ", " + ms(t)};
}

// ---- Criterion 10 ----

// Rounds visit every depth in turn, so a slow period on the machine cannot
// inflate all samples of one depth; each depth keeps its fastest batch.
Outcome benchmark_scaling() {
  constexpr size_t kDepths = std::size(kBenchDepths);
  std::vector<double> best(kDepths, 0);
  std::vector<bool> correct(kDepths, true);
  for (int round = 0; round < kBenchRepeats; ++round) {
    for (size_t d = 0; d < kDepths; ++d) {
      unsigned n = kBenchDepths[d];
      Theory th = encryption_theory();
      InitialFrame phi = gen_benchmark(th.signature, n, 0);
      InitialFrame psi = gen_benchmark(th.signature, n, 1);
      EquivalenceVerdict v;
      auto t0 = Clock::now();
      for (int i = 0; i < kBenchBatch; ++i) v = statically_equivalent(th, phi, psi);
      double t = elapsed_ms(t0) / kBenchBatch;
      correct[d] = correct[d] && v.answer == EquivalenceAnswer::kInequivalent && v.witness &&
                   witness_ok(th, phi, psi, *v.witness);
      best[d] = round == 0 ? t : std::min(best[d], t);
    }
  }
  bool pass = true;
  std::string detail;
  for (size_t d = 0; d < kDepths; ++d) {
    unsigned n = kBenchDepths[d];
    bool in_time = true;
    if (n == 10) in_time = best[d] <= kBenchSmallMs;
    if (n == 20) in_time = best[d] <= kBenchLargeMs;
    bool monotone = d == 0 || best[d] >= best[d - 1];
    pass &= correct[d] && in_time && monotone;
    detail += "n=" + std::to_string(n) + (correct[d] ? " inequivalent " : " WRONG ") +
              precise_ms(best[d]) + (monotone ? "" : " (not monotone)") + "; ";
  }
  return {pass, detail};
}

// ---- Criterion 11 ----

struct OracleTally {
  size_t frames = 0;
  size_t deductions = 0;
  size_t distinguished = 0;
  size_t inequivalent = 0;
  size_t capped = 0;
  size_t violations = 0;
  std::string first;

  void violation(const std::string& what) {
    if (violations++ == 0) first = what;
  }
};

RecipeBudget oracle_budget() {
  RecipeBudget b;
  b.max_depth = kOracleRecipeDepth;
  b.fresh_constants = kOracleFreshConstants;
  b.enumeration_cap = kOracleCap;
  return b;
}

std::string frame_text(const InitialFrame& phi, const Signature& sig) {
  std::string s = "{";
  for (const auto& [w, t] : phi.entries())
    s += (s.size() > 1 ? ", w" : "w") + std::to_string(w) + " -> " + to_string(t, sig);
  return s + "}";
}

void oracle_round(const Theory& th, const InitialFrame& phi, const InitialFrame& phi2,
                  OracleTally& tally) {
  const Signature& sig = th.signature;
  RecipeBudget b = oracle_budget();
  SaturationResult s1 = saturate(th, phi);
  SaturationResult s2 = saturate(th, phi2);
  if (!s1.saturated() || !s2.saturated()) {
    tally.violation("saturation " + to_string(s1.status) + "/" + to_string(s2.status) + " on " +
                    frame_text(phi, sig));
    return;
  }
  // (a) every oracle-deducible value is deducible with a verified recipe.
  auto en = oracle_enumerate(th, phi, b);
  tally.capped += en.inconclusive;
  ParameterInstantiator inst(phi.table());
  Normalizer norm(th.rules);
  for (const OracleValue& ov : en.values) {
    ++tally.deductions;
    auto v = deducible_in(s1, th, phi, ov.value);
    bool verified = v.answer == DeductionAnswer::kYes && v.recipe &&
                    is_recipe(*v.recipe, sig) && norm(inst(*v.recipe)) == norm(ov.value);
    if (!verified) {
      tally.violation("(a) " + to_string(ov.value, sig) + " via " + to_string(ov.recipe, sig) +
                      " on " + frame_text(phi, sig));
    }
  }
  // (b) an oracle test implies inequivalence; (c) witnesses are confirmed.
  auto eqv = equivalent_from(s1, s2, th, phi, phi2);
  auto dist = oracle_distinguish(th, phi, phi2, b);
  tally.capped += dist.inconclusive;
  if (dist.test) {
    ++tally.distinguished;
    if (eqv.answer != EquivalenceAnswer::kInequivalent) {
      tally.violation("(b) test " + to_string(dist.test->first, sig) + " ~ " +
                      to_string(dist.test->second, sig) + " on " + frame_text(phi, sig) +
                      " vs " + frame_text(phi2, sig));
    }
  }
  if (eqv.answer == EquivalenceAnswer::kInequivalent) {
    ++tally.inequivalent;
    if (!eqv.witness || !witness_ok(th, phi, phi2, *eqv.witness)) {
      tally.violation("(c) witness on " + frame_text(phi, sig) + " vs " + frame_text(phi2, sig));
    }
  }
}

Outcome oracle_suite() {
  auto t0 = Clock::now();
  std::string detail;
  bool pass = true;
  for (size_t k = 0; k < std::size(kOracleTheories); ++k) {
    auto prog = testing::load_program(kOracleTheories[k]);
    testing::TermGenerator gen(prog.theory.signature, kOracleSeed + static_cast<uint32_t>(k));
    OracleTally tally;
    for (int i = 0; i < kOracleFrames; ++i) {
      InitialFrame phi = gen.frame(kOracleMaxFacts, kOracleTermDepth);
      InitialFrame phi2 = i % 2 == 0 ? gen.variant(phi, kOracleTermDepth)
                                     : gen.frame_of_size(phi.size(), kOracleTermDepth);
      ++tally.frames;
      try {
        oracle_round(prog.theory, phi, phi2, tally);
      } catch (const std::exception& e) {
        tally.violation(std::string("exception: ") + e.what());
      }
    }
    pass &= tally.violations == 0;
    detail += std::string(kOracleTheories[k]) + ": " + std::to_string(tally.frames) +
              " frames, " + std::to_string(tally.deductions) + " deductions, " +
              std::to_string(tally.distinguished) + " oracle tests, " +
              std::to_string(tally.inequivalent) + " inequivalent, " +
              std::to_string(tally.capped) + " capped, " + std::to_string(tally.violations) +
              " violations" + (tally.violations ? " (first: " + tally.first + ")" : "") + "; ";
  }
  double t = elapsed_ms(t0);
  pass &= t < kOracleSuiteMs;
  return {pass, detail + ms(t)};
}

// ---- Criterion 12 ----

// Memoized public-symbol check; recipes of a long run share their spines.
class RecipeCheck {
 public:
  explicit RecipeCheck(const Signature& sig) : sig_(sig) {}

  bool operator()(const Term& t) {
    if (t.kind() != TermKind::kApplication) return true;
    auto it = memo_.find(t);
    if (it != memo_.end()) return it->second;
    bool ok = sig_.is_public(t.symbol());
    for (const Term& a : t.args()) ok = ok && (*this)(a);
    memo_.emplace(t, ok);
    return ok;
  }

 private:
  const Signature& sig_;
  std::unordered_map<Term, bool, TermHash> memo_;
};

Outcome soundness_assertions() {
  size_t frames = 0, checks = 0, independent = 0, violations = 0;
  std::string first;
  for (const char* file : kCorpus) {
    auto prog = testing::load_program(file);
    const Theory& th = prog.theory;
    for (const auto& [name, phi] : prog.frames) {
      ++frames;
      SaturationOptions opts;
      opts.assert_soundness = true;
      try {
        auto r = saturate(th, phi, opts);
        checks += r.stats.soundness_checks;
        ParameterInstantiator inst(phi.table());
        Normalizer norm(th.rules);
        RecipeCheck recipe(th.signature);
        for (const DeductionFact& f : r.frame.facts()) {
          ++independent;
          if (!recipe(f.recipe) || norm(inst(f.recipe)) != f.term) {
            if (violations++ == 0) first = std::string(file) + " fact " + to_string(f, th.signature);
          }
        }
        for (const auto& e : r.equations) {
          ++independent;
          if (norm(inst(e.lhs)) != norm(inst(e.rhs))) {
            if (violations++ == 0) first = std::string(file) + " " + to_string(e, th.signature);
          }
        }
      } catch (const SoundnessError& e) {
        if (violations++ == 0) first = std::string(file) + ": " + e.what();
      }
    }
  }
  return {violations == 0,
          std::to_string(frames) + " corpus frames, " + std::to_string(checks) +
              " engine assertions, " + std::to_string(independent) + " independent checks, " +
              std::to_string(violations) + " violations" +
              (violations ? " (first: " + first + ")" : "")};
}

// ---- Criterion 13 ----

enum class Bound { kNone, kSubterm, kExtended };

struct BoundLog {
  size_t runs = 0;
  size_t checked = 0;
  size_t violations = 0;
  std::string first;

  void check(bool ok, const std::function<std::string()>& what) {
    ++checked;
    if (ok) return;
    if (violations++ == 0) first = what();
  }
  std::string summary(const char* name) const {
    return std::string(name) + ": " + std::to_string(runs) + " runs, " + std::to_string(checked) +
           " checks, " + std::to_string(violations) + " violations" +
           (violations ? " (first: " + first + ")" : "");
  }
};

// Containment is checked twice: each A.2 fact against the frame built so
// far, and the final frame against the initial frame alone.
struct PropertyLogs {
  BoundLog b_steps;
  BoundLog subterm;
  BoundLog subterm_init;
  BoundLog extended;
  BoundLog extended_init;
};

// Drives saturation one B fixpoint and one A instance at a time and checks
// the termination bounds as it goes.
void instrumented_run(const Theory& th, const InitialFrame& phi, Bound bound,
                      const std::string& label, PropertyLogs& logs) {
  const Signature& sig = th.signature;
  std::unordered_set<Term, TermHash> sub;
  std::unordered_set<Term, TermHash> ext;
  std::unordered_set<Term, TermHash> expanded;
  std::unordered_set<Term, TermHash> ground_rhs;
  for (const RewriteRule& r : th.rules.rules())
    if (r.rhs.is_ground() && is_normal(r.rhs, th.rules)) ground_rhs.insert(r.rhs);

  // Subterms already recorded are not revisited, so long chains stay linear.
  std::function<void(const Term&)> add_subterms = [&](const Term& t) {
    if (!sub.insert(t).second) return;
    for (const Term& a : t.args()) add_subterms(a);
  };
  auto add_image = [&](const Term& t) {
    add_subterms(t);
    if (bound == Bound::kExtended) testing::collect_st_ext(t, sig, ext, expanded);
  };

  SaturationOptions opts;
  opts.trace = [&](const TraceEvent& e) {
    if (!e.fact) return;
    const Term& t = e.fact->term;
    auto where = [&] { return label + ": " + to_string(*e.fact, sig); };
    if (e.rule == RuleName::kB2) {
      logs.b_steps.check(sub.count(t) > 0, where);
    } else if (e.rule == RuleName::kA2) {
      if (bound == Bound::kSubterm) logs.subterm.check(sub.count(t) || ground_rhs.count(t), where);
      if (bound == Bound::kExtended) logs.extended.check(ext.count(t) > 0, where);
    }
    add_image(t);
  };

  Saturation s(th, phi, opts);
  const std::unordered_set<Term, TermHash> init_sub = sub;
  const std::unordered_set<Term, TermHash> init_ext = ext;
  ++logs.b_steps.runs;
  if (bound == Bound::kSubterm) ++logs.subterm.runs, ++logs.subterm_init.runs;
  if (bound == Bound::kExtended) ++logs.extended.runs, ++logs.extended_init.runs;
  while (s.status() == SaturationStatus::kLive) {
    size_t before = s.stats().b2;
    s.apply_b_fixpoint();
    size_t added = s.stats().b2 - before;
    size_t image = sub.size();
    logs.b_steps.check(added <= image, [&] {
      return label + ": " + std::to_string(added) + " B.2 facts over " + std::to_string(image) +
             " subterms";
    });
    if (!s.step()) break;
  }
  for (const DeductionFact& f : s.frame().facts()) {
    auto where = [&] { return label + ": " + to_string(f, sig); };
    if (bound == Bound::kSubterm)
      logs.subterm_init.check(init_sub.count(f.term) || ground_rhs.count(f.term), where);
    if (bound == Bound::kExtended) logs.extended_init.check(init_ext.count(f.term) > 0, where);
  }
}

Outcome termination_bounds() {
  // Logs are kept per theory family so each property is reported where it applies.
  std::map<std::string, PropertyLogs> logs;
  auto family_of = [](const std::string& file) -> std::string {
    if (file.rfind("e_enc", 0) == 0) return "E_enc";
    if (file.rfind("e_blind", 0) == 0) return "E_blind";
    if (file.rfind("e_pref", 0) == 0) return "E_pref";
    return "other";
  };
  auto bound_for = [](const std::string& family) {
    if (family == "E_enc" || family == "E_blind") return Bound::kSubterm;
    if (family == "E_pref") return Bound::kExtended;
    return Bound::kNone;
  };
  for (const char* file : kCorpus) {
    auto prog = testing::load_program(file);
    std::string family = family_of(file);
    for (const auto& [name, phi] : prog.frames) {
      instrumented_run(prog.theory, phi, bound_for(family), std::string(file) + " " + name,
                       logs[family]);
    }
  }
  for (size_t k = 0; k < std::size(kOracleTheories); ++k) {
    auto prog = testing::load_program(kOracleTheories[k]);
    const Signature& sig = prog.theory.signature;
    std::string family = family_of(kOracleTheories[k]);
    testing::TermGenerator gen(prog.theory.signature, kOracleSeed + static_cast<uint32_t>(k));
    for (int i = 0; i < kOracleFrames; ++i) {
      InitialFrame phi = gen.frame(kOracleMaxFacts, kOracleTermDepth);
      InitialFrame phi2 = i % 2 == 0 ? gen.variant(phi, kOracleTermDepth)
                                     : gen.frame_of_size(phi.size(), kOracleTermDepth);
      for (const InitialFrame* f : {&phi, &phi2}) {
        instrumented_run(prog.theory, *f, bound_for(family),
                         std::string(kOracleTheories[k]) + " " + frame_text(*f, sig),
                         logs[family]);
      }
    }
  }
  bool pass = true;
  std::string detail;
  for (const auto& [family, l] : logs) {
    Bound b = bound_for(family);
    detail += family + " {" + l.b_steps.summary("B-step bound");
    pass &= l.b_steps.violations == 0;
    if (b == Bound::kSubterm) {
      detail += "; " + l.subterm.summary("subterm bound per step") + "; " +
                l.subterm_init.summary("subterm bound vs initial frame");
      pass &= l.subterm.violations == 0 && l.subterm_init.violations == 0;
    }
    if (b == Bound::kExtended) {
      detail += "; " + l.extended.summary("extended subterm bound per step") + "; " +
                l.extended_init.summary("extended subterm bound vs initial frame");
      pass &= l.extended.violations == 0 && l.extended_init.violations == 0;
    }
    detail += "} ";
  }
  return {pass, detail};
}

// With arguments, runs only the listed criteria.
int main_impl(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  using Criterion = std::function<Outcome()>;
  const std::pair<int, Criterion> criteria[] = {
      {1, golden_saturation},     {2, golden_init},          {3, equivalence_verdicts},
      {4, deduction_verdicts},    {5, quantified_equation},  {6, malleable_failure},
      {7, non_termination},       {8, layered_classification}, {9, decomposition_counts},
      {10, benchmark_scaling},    {11, oracle_suite},        {12, soundness_assertions},
      {13, termination_bounds},
  };
  int failed = 0;
  for (const auto& [n, run] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), n) == only.end()) continue;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", n, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace knowsat::acceptance

int main(int argc, char** argv) { return knowsat::acceptance::main_impl(argc, argv); }

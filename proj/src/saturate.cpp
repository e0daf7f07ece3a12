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

#include "knowsat/saturate.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace knowsat {

namespace {

std::pair<Term, Term> rename_bound(const Term& a, const Term& b, uint32_t* count) {
  std::vector<VariableId> vars;
  collect_variables(a, vars);
  collect_variables(b, vars);
  Substitution s;
  for (size_t k = 0; k < vars.size(); ++k) {
    s.bind(vars[k], Term::variable(bound_variable(static_cast<uint32_t>(k))));
  }
  *count = static_cast<uint32_t>(vars.size());
  return {apply_substitution(a, s), apply_substitution(b, s)};
}

}  // namespace

QuantifiedEquation QuantifiedEquation::make(const Term& a, const Term& b) {
  uint32_t n1 = 0, n2 = 0;
  auto [a1, b1] = rename_bound(a, b, &n1);
  auto [b2, a2] = rename_bound(b, a, &n2);
  auto c = compare(a1, b2);
  if (c == 0) c = compare(b1, a2);
  if (c >= 0) return {n1, a1, b1};
  return {n2, b2, a2};
}

std::strong_ordering compare(const QuantifiedEquation& a, const QuantifiedEquation& b) {
  if (auto c = compare(a.lhs, b.lhs); c != 0) return c;
  if (auto c = compare(a.rhs, b.rhs); c != 0) return c;
  return a.bound_count <=> b.bound_count;
}

std::string to_string(const QuantifiedEquation& e, const Signature& sig) {
  std::string s;
  if (e.bound_count > 0) {
    s += "forall ";
    for (uint32_t k = 0; k < e.bound_count; ++k) {
      if (k) s += ',';
      s += sig.variable_name(bound_variable(k));
    }
    s += ". ";
  }
  print_term(s, e.lhs, sig);
  s += " ~ ";
  print_term(s, e.rhs, sig);
  return s;
}

std::string to_string(const DeductionFact& f, const Signature& sig) {
  std::string s;
  print_term(s, f.recipe, sig);
  s += " |> ";
  print_term(s, f.term, sig);
  return s;
}

const Term* Frame::recipe_for(const Term& t) const {
  auto it = index_.find(t);
  return it == index_.end() ? nullptr : &facts_[it->second].recipe;
}

bool Frame::add(DeductionFact f) {
  if (index_.count(f.term)) return false;
  index_.emplace(f.term, facts_.size());
  facts_.push_back(std::move(f));
  return true;
}

std::vector<DeductionFact> Frame::sorted() const {
  std::vector<DeductionFact> out = facts_;
  std::sort(out.begin(), out.end(), [](const DeductionFact& a, const DeductionFact& b) {
    return compare(a.recipe, b.recipe) < 0;
  });
  return out;
}

namespace {

std::optional<Term> deduce(const Frame& facts, const Term& t, const Signature& sig,
                           bool bound_vars, TermMap<std::optional<Term>>& memo) {
  if (t.is_variable()) {
    if (bound_vars && is_bound_variable(t.id())) return t;
    return std::nullopt;
  }
  if (const Term* r = facts.recipe_for(t)) return *r;
  if (!t.is_application() || !sig.is_public(t.symbol())) return std::nullopt;
  if (auto it = memo.find(t); it != memo.end()) return it->second;
  std::vector<Term> args;
  args.reserve(t.arity());
  std::optional<Term> out;
  bool ok = true;
  for (const Term& a : t.args()) {
    auto r = deduce(facts, a, sig, bound_vars, memo);
    if (!r) {
      ok = false;
      break;
    }
    args.push_back(*r);
  }
  if (ok) out = Term::apply(t.symbol(), args);
  memo.emplace(t, out);
  return out;
}

}  // namespace

std::optional<Term> syntactic_deduce(const Frame& facts, const Term& t,
                                     const Signature& sig) {
  TermMap<std::optional<Term>> memo;
  return deduce(facts, t, sig, false, memo);
}

std::optional<Term> ctx(const Frame& facts, const Term& t, const Theory& th,
                        Normalizer& norm) {
  TermMap<std::optional<Term>> memo;
  return deduce(facts, norm(t), th.signature, true, memo);
}

std::string to_string(SaturationStatus s) {
  switch (s) {
    case SaturationStatus::kLive:
      return "live";
    case SaturationStatus::kSaturated:
      return "saturated";
    case SaturationStatus::kFailed:
      return "failed";
    case SaturationStatus::kIndeterminate:
      return "indeterminate";
  }
  return "";
}

std::string to_string(RuleName r) {
  switch (r) {
    case RuleName::kInit:
      return "init";
    case RuleName::kA1:
      return "A.1";
    case RuleName::kA2:
      return "A.2";
    case RuleName::kA3:
      return "A.3";
    case RuleName::kB1:
      return "B.1";
    case RuleName::kB2:
      return "B.2";
  }
  return "";
}

std::string render_trace(const TraceEvent& e, const Theory& th) {
  const Signature& sig = th.signature;
  std::string s = "[trace] " + to_string(e.rule);
  bool a_rule =
      e.rule == RuleName::kA1 || e.rule == RuleName::kA2 || e.rule == RuleName::kA3;
  if (a_rule) {
    s += " rule=" + std::to_string(e.rewrite_rule + 1);
    s += " decomposition=" +
         describe(th.decompositions[e.rewrite_rule][e.decomposition], sig);
  }
  if (a_rule || e.rule == RuleName::kB1 || e.rule == RuleName::kB2) {
    s += " premises=";
    for (size_t i = 0; i < e.premises.size(); ++i) {
      if (i) s += ',';
      print_term(s, e.premises[i], sig);
    }
  }
  if (e.fact) s += " fact=" + to_string(*e.fact, sig);
  if (e.equation) s += " equation=" + to_string(*e.equation, sig);
  if (e.rule == RuleName::kA3) {
    s += " reduct=";
    print_term(s, e.reduct, sig);
    s += " deferred";
  }
  return s;
}

std::vector<QuantifiedEquation> SaturationResult::frame_equations() const {
  std::vector<QuantifiedEquation> out;
  for (const auto& e : equations) {
    if (!e.is_theory_equation()) out.push_back(e);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return compare(a, b) < 0; });
  return out;
}

std::vector<QuantifiedEquation> SaturationResult::theory_equations() const {
  std::vector<QuantifiedEquation> out;
  for (const auto& e : equations) {
    if (e.is_theory_equation()) out.push_back(e);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return compare(a, b) < 0; });
  return out;
}

namespace {

struct InstanceKey {
  size_t rule;
  size_t decomposition;
  std::vector<Term> terms;
  friend bool operator==(const InstanceKey&, const InstanceKey&) = default;
};

struct InstanceKeyHash {
  size_t operator()(const InstanceKey& k) const {
    size_t h = k.rule * 0x9e3779b97f4a7c15ull ^ (k.decomposition + 0x7f4a7c15);
    for (const Term& t : k.terms) h = (h ^ t.hash()) * 0x100000001b3ull;
    return h;
  }
};

struct EquationHash {
  size_t operator()(const QuantifiedEquation& e) const {
    return (e.lhs.hash() * 31 + e.rhs.hash()) ^ e.bound_count;
  }
};

}  // namespace

struct Saturation::Impl {
  Impl(const Theory& t, SaturationOptions o)
      : th(t), opts(std::move(o)), norm(t.rules, opts.normalize_cap) {}

  const Theory& th;
  SaturationOptions opts;
  Normalizer norm;
  Frame frame;
  std::unordered_map<SymbolId, std::vector<size_t>> by_head;
  std::vector<QuantifiedEquation> equations;
  std::unordered_set<QuantifiedEquation, EquationHash> equation_set;
  SaturationStatus status = SaturationStatus::kLive;
  std::string diagnostic;
  SaturationStats stats;

  std::unordered_set<Term, TermHash> image_seen;
  TermMap<std::vector<Term>> b_waiting;
  std::deque<Term> b_ready;

  std::unordered_set<InstanceKey, InstanceKeyHash> known;
  std::deque<AInstance> queue;
  std::vector<AInstance> deferred;
  TermMap<std::vector<AInstance>> parked;

  std::optional<ParameterInstantiator> phi;

  bool live() const { return status == SaturationStatus::kLive; }

  std::optional<Term> carrier(const Term& t) const {
    if (const Term* r = frame.recipe_for(t)) return *r;
    if (t.is_application() && t.arity() == 0 && th.signature.is_public(t.symbol())) {
      return t;
    }
    return std::nullopt;
  }
  bool carried(const Term& t) const { return carrier(t).has_value(); }

  void charge() {
    if (++stats.strict_steps > opts.max_steps) {
      status = SaturationStatus::kIndeterminate;
      diagnostic = "step budget " + std::to_string(opts.max_steps) + " exhausted";
    }
  }

  void emit(const TraceEvent& e) {
    if (opts.trace) opts.trace(e);
  }

  Term frame_value(const Term& recipe) { return norm((*phi)(recipe)); }

  void check_fact(const DeductionFact& f) {
    if (!opts.assert_soundness) return;
    ++stats.soundness_checks;
    if (!(frame_value(f.recipe) == f.term)) {
      throw SoundnessError("unsound fact " + to_string(f, th.signature));
    }
  }

  void check_equation(const QuantifiedEquation& e) {
    if (!opts.assert_soundness) return;
    ++stats.soundness_checks;
    if (!(frame_value(e.lhs) == frame_value(e.rhs))) {
      throw SoundnessError("unsound equation " + to_string(e, th.signature));
    }
  }

  std::optional<QuantifiedEquation> add_equation(const Term& a, const Term& b) {
    QuantifiedEquation e = QuantifiedEquation::make(a, b);
    if (e.is_tautology() || !equation_set.insert(e).second) return std::nullopt;
    equations.push_back(e);
    check_equation(e);
    return e;
  }

  void add_fact(const Term& recipe, const Term& term) {
    DeductionFact f{recipe, term};
    frame.add(f);
    check_fact(f);
    size_t index = frame.size() - 1;
    if (term.is_application()) by_head[term.symbol()].push_back(index);
    register_image(term);
    wake_syntactic(term);
    discover(&term);
    wake_parked(term);
    for (AInstance& inst : deferred) queue.push_back(std::move(inst));
    deferred.clear();
  }

  // Syntactic rules.

  void schedule_syntactic(const Term& s) {
    for (const Term& c : s.args()) {
      if (!carried(c)) {
        b_waiting[c].push_back(s);
        return;
      }
    }
    b_ready.push_back(s);
  }

  void register_image(const Term& t) {
    if (image_seen.count(t)) return;
    std::vector<Term> fresh;
    std::vector<Term> stack{t};
    image_seen.insert(t);
    while (!stack.empty()) {
      Term cur = stack.back();
      stack.pop_back();
      fresh.push_back(cur);
      for (const Term& c : cur.args()) {
        if (image_seen.insert(c).second) stack.push_back(c);
      }
    }
    stats.image_subterms = image_seen.size();
    std::sort(fresh.begin(), fresh.end(), TermLess());
    for (const Term& s : fresh) {
      if (s.is_application() && th.signature.is_public(s.symbol())) {
        schedule_syntactic(s);
      }
    }
  }

  void wake_syntactic(const Term& t) {
    auto it = b_waiting.find(t);
    if (it == b_waiting.end()) return;
    std::vector<Term> waiting = std::move(it->second);
    b_waiting.erase(it);
    for (const Term& s : waiting) schedule_syntactic(s);
  }

  void apply_syntactic(const Term& s) {
    std::vector<Term> recipes;
    for (const Term& c : s.args()) recipes.push_back(*carrier(c));
    Term composed = Term::apply(s.symbol(), recipes);
    TraceEvent ev;
    ev.premises = recipes;
    if (auto existing = carrier(s)) {
      auto e = add_equation(composed, *existing);
      if (!e) return;
      ++stats.b1;
      charge();
      ev.rule = RuleName::kB1;
      ev.equation = e;
      emit(ev);
      return;
    }
    ++stats.b2;
    charge();
    ev.rule = RuleName::kB2;
    ev.fact = DeductionFact{composed, s};
    emit(ev);
    add_fact(composed, s);
  }

  size_t b_fixpoint() {
    size_t before = stats.strict_steps;
    while (live() && !b_ready.empty()) {
      Term s = b_ready.front();
      b_ready.pop_front();
      apply_syntactic(s);
    }
    return stats.strict_steps - before;
  }

  // Context reduction instance discovery.

  void finish_instance(size_t r, size_t di, const Decomposition& d,
                       std::vector<Term>& terms, const Substitution& s) {
    std::vector<Term> all = terms;
    for (VariableId y : d.bound_vars) all.push_back(*s.find(y));
    InstanceKey key{r, di, all};
    if (!known.insert(key).second) return;
    ++stats.instances_discovered;
    AInstance inst{r, di, std::move(all), s};
    enqueue_or_park(std::move(inst));
  }

  void enqueue_or_park(AInstance inst) {
    const Decomposition& d = th.decompositions[inst.rule][inst.decomposition];
    for (size_t j = d.n(); j < inst.terms.size(); ++j) {
      if (!carried(inst.terms[j])) {
        Term key = inst.terms[j];
        parked[key].push_back(std::move(inst));
        return;
      }
    }
    queue.push_back(std::move(inst));
  }

  void wake_parked(const Term& t) {
    auto it = parked.find(t);
    if (it == parked.end()) return;
    std::vector<AInstance> waiting = std::move(it->second);
    parked.erase(it);
    for (AInstance& inst : waiting) enqueue_or_park(std::move(inst));
  }

  void enumerate(size_t r, size_t di, const Decomposition& d, size_t fixed,
                 const Term* fixed_term, size_t j, std::vector<Term>& terms,
                 const Substitution& s) {
    if (j == d.n()) {
      finish_instance(r, di, d, terms, s);
      return;
    }
    const Term& core = d.cores[j];
    auto try_candidate = [&](const Term& cand) {
      Substitution next = s;
      if (!match_into(core, cand, next)) return;
      terms[j] = cand;
      enumerate(r, di, d, fixed, fixed_term, j + 1, terms, next);
    };
    if (j == fixed) {
      try_candidate(*fixed_term);
      return;
    }
    if (core.is_ground()) {
      if (carried(core)) try_candidate(core);
      return;
    }
    auto it = by_head.find(core.symbol());
    if (it == by_head.end()) return;
    std::vector<size_t> indices = it->second;
    for (size_t fi : indices) try_candidate(frame.facts()[fi].term);
  }

  // With fact == nullptr every tuple over the current frame is considered.
  void discover(const Term* fact) {
    for (size_t r = 0; r < th.decompositions.size(); ++r) {
      const auto& decs = th.decompositions[r];
      for (size_t di = 0; di < decs.size(); ++di) {
        const Decomposition& d = decs[di];
        std::vector<Term> terms(d.n());
        if (fact == nullptr) {
          enumerate(r, di, d, d.n(), nullptr, 0, terms, {});
          continue;
        }
        for (size_t i = 0; i < d.n(); ++i) {
          Substitution probe;
          if (!match_into(d.cores[i], *fact, probe)) continue;
          enumerate(r, di, d, i, fact, 0, terms, {});
        }
      }
    }
  }

  // Context reduction application.

  AOutcome apply_instance(const AInstance& inst) {
    ++stats.instances_applied;
    const Decomposition& d = th.decompositions[inst.rule][inst.decomposition];
    const RewriteRule& rule = th.rules[inst.rule];
    Substitution s = inst.sigma;
    std::vector<std::optional<Term>> slots(d.slot_count() + 1);
    std::vector<Term> premises;
    for (size_t k = 0; k < d.n() + d.p(); ++k) {
      slots[k + 1] = *carrier(inst.terms[k]);
      premises.push_back(*slots[k + 1]);
    }
    for (size_t k = 0; k < d.q(); ++k) {
      Term z = Term::variable(bound_variable(static_cast<uint32_t>(k)));
      s.bind(d.free_vars[k], z);
      slots[d.n() + d.p() + k + 1] = z;
    }
    Term reduct = norm(apply_substitution(rule.rhs, s));
    Term lhs_recipe = ParameterInstantiator(slots)(d.context);
    TraceEvent ev;
    ev.rewrite_rule = inst.rule;
    ev.decomposition = inst.decomposition;
    ev.premises = premises;
    ev.reduct = reduct;
    TermMap<std::optional<Term>> memo;
    if (auto m = deduce(frame, reduct, th.signature, true, memo)) {
      auto e = add_equation(lhs_recipe, *m);
      if (!e) return AOutcome::kDuplicate;
      ++stats.a1;
      charge();
      ev.rule = RuleName::kA1;
      ev.equation = e;
      emit(ev);
      return AOutcome::kEquation;
    }
    if (reduct.is_ground()) {
      for (size_t k = 0; k < d.q(); ++k) {
        slots[d.n() + d.p() + k + 1] = Term::constant(th.signature.reserved_constant());
      }
      Term m0 = ParameterInstantiator(slots)(d.context);
      ++stats.a2;
      charge();
      ev.rule = RuleName::kA2;
      ev.fact = DeductionFact{m0, reduct};
      ev.equation = add_equation(lhs_recipe, m0);
      emit(ev);
      add_fact(m0, reduct);
      return AOutcome::kFact;
    }
    ++stats.a3_deferrals;
    ev.rule = RuleName::kA3;
    emit(ev);
    deferred.push_back(inst);
    return AOutcome::kDeferred;
  }

  std::string describe_instance(const AInstance& inst) {
    const Signature& sig = th.signature;
    const Decomposition& d = th.decompositions[inst.rule][inst.decomposition];
    const RewriteRule& rule = th.rules[inst.rule];
    std::string s = "rule #" + std::to_string(inst.rule + 1) + " " +
                    to_string(rule.lhs, sig) + " -> " + to_string(rule.rhs, sig) +
                    ", decomposition " + describe(d, sig) + ", facts [";
    for (size_t k = 0; k < inst.terms.size(); ++k) {
      if (k) s += ", ";
      s += to_string(*carrier(inst.terms[k]), sig);
    }
    Substitution z = inst.sigma;
    for (size_t k = 0; k < d.q(); ++k) {
      z.bind(d.free_vars[k], Term::variable(bound_variable(static_cast<uint32_t>(k))));
    }
    Term reduct = norm(apply_substitution(rule.rhs, z));
    s += "]: reduct " + to_string(reduct, sig) +
         " is neither ground nor syntactically deducible";
    return s;
  }

  void guarded(const std::function<void()>& body) {
    try {
      body();
    } catch (const IndeterminateError& e) {
      status = SaturationStatus::kIndeterminate;
      diagnostic = e.what();
    }
  }

  void init(const InitialFrame& input) {
    phi.emplace(input.table());
    auto entries = input.entries();
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [w, t] : entries) {
      if (!t.is_ground() || t.has_parameters()) throw InputError("frame term not ground");
      Term nf = norm(t);
      Term param = Term::parameter(w);
      TraceEvent ev;
      ev.rule = RuleName::kInit;
      if (const Term* r = frame.recipe_for(nf)) {
        ev.equation = add_equation(param, *r);
        ++stats.init_equations;
      } else {
        DeductionFact f{param, nf};
        frame.add(f);
        if (nf.is_application()) by_head[nf.symbol()].push_back(frame.size() - 1);
        ev.fact = f;
      }
      emit(ev);
    }
    std::vector<DeductionFact> initial = frame.facts();
    for (const DeductionFact& f : initial) register_image(f.term);
    discover(nullptr);
  }
};

Saturation::Saturation(const Theory& th, const InitialFrame& phi, SaturationOptions opts)
    : impl_(std::make_unique<Impl>(th, std::move(opts))) {
  impl_->guarded([&] { impl_->init(phi); });
}

Saturation::~Saturation() = default;

SaturationStatus Saturation::status() const { return impl_->status; }
const Frame& Saturation::frame() const { return impl_->frame; }
const std::vector<QuantifiedEquation>& Saturation::equations() const {
  return impl_->equations;
}
const SaturationStats& Saturation::stats() const { return impl_->stats; }
const std::string& Saturation::diagnostic() const { return impl_->diagnostic; }

size_t Saturation::apply_b_fixpoint() {
  size_t n = 0;
  impl_->guarded([&] { n = impl_->b_fixpoint(); });
  return n;
}

std::vector<AInstance> Saturation::pending() const {
  return {impl_->queue.begin(), impl_->queue.end()};
}

std::vector<AInstance> Saturation::deferred() const { return impl_->deferred; }

AOutcome Saturation::apply_a_instance(const AInstance& inst) {
  auto& q = impl_->queue;
  for (auto it = q.begin(); it != q.end(); ++it) {
    if (it->rule == inst.rule && it->decomposition == inst.decomposition &&
        it->terms == inst.terms) {
      q.erase(it);
      break;
    }
  }
  AOutcome out = AOutcome::kDuplicate;
  impl_->guarded([&] { out = impl_->apply_instance(inst); });
  return out;
}

bool Saturation::step() {
  Impl& m = *impl_;
  if (!m.live()) return false;
  m.guarded([&] {
    m.b_fixpoint();
    if (!m.live()) return;
    if (m.queue.empty()) {
      if (!m.deferred.empty()) {
        m.status = SaturationStatus::kFailed;
        m.diagnostic = "context reduction failed: " + m.describe_instance(m.deferred.front());
      } else {
        m.status = SaturationStatus::kSaturated;
      }
      return;
    }
    AInstance inst = std::move(m.queue.front());
    m.queue.pop_front();
    m.apply_instance(inst);
  });
  return m.live();
}

SaturationResult Saturation::run() {
  while (step()) {
  }
  return result();
}

SaturationResult Saturation::result() const {
  SaturationResult r;
  r.status = impl_->status;
  r.frame = impl_->frame;
  r.equations = impl_->equations;
  r.diagnostic = impl_->diagnostic;
  r.stats = impl_->stats;
  return r;
}

SaturationResult saturate(const Theory& th, const InitialFrame& phi,
                          const SaturationOptions& opts) {
  Saturation s(th, phi, opts);
  return s.run();
}

}  // namespace knowsat

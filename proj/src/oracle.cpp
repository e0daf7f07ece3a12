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

#include "knowsat/oracle.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "knowsat/saturate.hpp"

namespace knowsat {

namespace {

struct Entry {
  Term recipe;
  std::vector<Term> values;
};

struct TupleHash {
  size_t operator()(const std::vector<Term>& v) const {
    size_t h = 0;
    for (const Term& t : v) h = h * 0x100000001b3ull ^ t.hash();
    return h;
  }
};

// Level-wise closure of recipe values over one or more frames at once,
// keeping the first recipe per tuple of values.
class Enumerator {
 public:
  using Visit = std::function<bool(const Entry&)>;

  Enumerator(const Theory& th, std::vector<const InitialFrame*> frames,
             const RecipeBudget& b)
      : th_(th), frames_(std::move(frames)), budget_(b) {
    for (const InitialFrame* f : frames_) {
      norms_.emplace_back(th.rules);
      phis_.emplace_back(f->table());
    }
  }

  // Stops early when visit returns true. Returns true if stopped early.
  bool run(const Visit& visit) {
    const Signature& sig = th_.signature;
    std::vector<Term> leaves;
    for (uint32_t w : frames_.front()->domain()) leaves.push_back(Term::parameter(w));
    for (SymbolId s = 0; s < sig.size(); ++s) {
      const Symbol& sym = sig[s];
      if (sym.arity == 0 && sym.is_public() && sym.origin != SymbolOrigin::kReserved) {
        leaves.push_back(Term::constant(s));
      }
    }
    auto pool = sig.fresh_pool();
    for (size_t i = 0; i < pool.size() && i < budget_.fresh_constants; ++i) {
      leaves.push_back(Term::constant(pool[i]));
    }
    std::sort(leaves.begin(), leaves.end(), TermLess());
    for (const Term& leaf : leaves) {
      std::vector<Term> values;
      for (size_t k = 0; k < frames_.size(); ++k) values.push_back(norms_[k](phis_[k](leaf)));
      if (offer(leaf, std::move(values), visit)) return true;
    }
    level_start_.push_back(0);
    std::vector<SymbolId> symbols;
    for (SymbolId s = 0; s < sig.size(); ++s) {
      if (sig[s].arity > 0 && sig[s].is_public()) symbols.push_back(s);
    }
    for (unsigned depth = 1; depth <= budget_.max_depth; ++depth) {
      size_t limit = entries_.size();
      size_t last = level_start_.back();
      level_start_.push_back(limit);
      for (SymbolId f : symbols) {
        size_t n = sig[f].arity;
        std::vector<size_t> idx(n, 0);
        if (limit == 0) break;
        while (true) {
          size_t top = *std::max_element(idx.begin(), idx.end());
          if (top >= last) {
            if (++candidates_ > budget_.enumeration_cap) {
              inconclusive_ = true;
              return false;
            }
            if (apply(f, idx, visit)) return true;
          }
          size_t k = n;
          while (k > 0) {
            if (++idx[k - 1] < limit) break;
            idx[k - 1] = 0;
            --k;
          }
          if (k == 0) break;
        }
      }
    }
    return false;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  bool inconclusive() const { return inconclusive_; }
  size_t candidates() const { return candidates_; }

 private:
  bool apply(SymbolId f, const std::vector<size_t>& idx, const Visit& visit) {
    std::vector<Term> values;
    values.reserve(frames_.size());
    std::vector<Term> args(idx.size());
    for (size_t k = 0; k < frames_.size(); ++k) {
      for (size_t i = 0; i < idx.size(); ++i) args[i] = entries_[idx[i]].values[k];
      values.push_back(norms_[k](Term::apply(f, args)));
    }
    if (seen_.count(values)) return false;
    for (size_t i = 0; i < idx.size(); ++i) args[i] = entries_[idx[i]].recipe;
    return offer(Term::apply(f, args), std::move(values), visit);
  }

  bool offer(const Term& recipe, std::vector<Term> values, const Visit& visit) {
    if (!seen_.insert(values).second) return false;
    entries_.push_back({recipe, std::move(values)});
    return visit(entries_.back());
  }

  const Theory& th_;
  std::vector<const InitialFrame*> frames_;
  RecipeBudget budget_;
  std::vector<Normalizer> norms_;
  std::vector<ParameterInstantiator> phis_;
  std::vector<Entry> entries_;
  std::vector<size_t> level_start_;
  std::unordered_set<std::vector<Term>, TupleHash> seen_;
  size_t candidates_ = 0;
  bool inconclusive_ = false;
};

Term evaluate(const Theory& th, const InitialFrame& phi, const Term& recipe) {
  ParameterInstantiator inst(phi.table());
  return normalize(inst(recipe), th.rules);
}

}  // namespace

OracleEnumeration oracle_enumerate(const Theory& th, const InitialFrame& phi,
                                   const RecipeBudget& b) {
  Enumerator e(th, {&phi}, b);
  e.run([](const Entry&) { return false; });
  OracleEnumeration out;
  for (const Entry& x : e.entries()) out.values.push_back({x.recipe, x.values[0]});
  out.inconclusive = e.inconclusive();
  out.candidates = e.candidates();
  return out;
}

OracleDeduction oracle_deducible(const Theory& th, const InitialFrame& phi, const Term& t,
                                 const RecipeBudget& b) {
  Term target = normalize(t, th.rules);
  Enumerator e(th, {&phi}, b);
  OracleDeduction out;
  e.run([&](const Entry& x) {
    if (x.values[0] == target) out.recipe = x.recipe;
    return out.recipe.has_value();
  });
  out.inconclusive = !out.recipe && e.inconclusive();
  if (out.recipe && !(evaluate(th, phi, *out.recipe) == target)) {
    throw SoundnessError("oracle recipe " + to_string(*out.recipe, th.signature) +
                         " does not evaluate to the target");
  }
  return out;
}

OracleDistinction oracle_distinguish(const Theory& th, const InitialFrame& phi1,
                                     const InitialFrame& phi2, const RecipeBudget& b) {
  if (phi1.domain() != phi2.domain()) throw InputError("frames have different domains");
  Enumerator e(th, {&phi1, &phi2}, b);
  TermMap<Entry> by_first;
  TermMap<Entry> by_second;
  OracleDistinction out;
  e.run([&](const Entry& x) {
    for (int side = 0; side < 2; ++side) {
      TermMap<Entry>& index = side == 0 ? by_first : by_second;
      auto it = index.find(x.values[side]);
      if (it == index.end()) {
        index.emplace(x.values[side], x);
      } else if (!(it->second.values[1 - side] == x.values[1 - side])) {
        out.test = std::make_pair(it->second.recipe, x.recipe);
        return true;
      }
    }
    return false;
  });
  out.inconclusive = !out.test && e.inconclusive();
  if (out.test) {
    const auto& [m, n] = *out.test;
    bool eq1 = evaluate(th, phi1, m) == evaluate(th, phi1, n);
    bool eq2 = evaluate(th, phi2, m) == evaluate(th, phi2, n);
    if (eq1 == eq2) throw SoundnessError("oracle test does not distinguish the frames");
  }
  return out;
}

}  // namespace knowsat

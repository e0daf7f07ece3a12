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

// Test-side helpers. Everything here is deliberately independent of the
// engine's own algorithms so it can serve as an oracle.

#ifndef KNOWSAT_TESTS_SUPPORT_HPP_
#define KNOWSAT_TESTS_SUPPORT_HPP_

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "knowsat/dsl.hpp"
#include "knowsat/saturate.hpp"

namespace knowsat::testing {

inline std::string theory_path(const std::string& name) {
  return std::string(KNOWSAT_THEORY_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

inline dsl::Program load_program(const std::string& name) {
  dsl::ElaborateResult r = dsl::load(read_file(theory_path(name)));
  if (!r.program) {
    std::string msg = "cannot load " + name;
    for (const auto& d : r.diagnostics) msg += "\n" + dsl::format(d, name);
    throw std::runtime_error(msg);
  }
  return std::move(*r.program);
}

// Parses a recipe or plain term; undeclared nullary names become constants.
inline Term parse(Signature& sig, const std::string& text, bool variables = false) {
  std::vector<dsl::Diagnostic> diags;
  dsl::TermOptions opts;
  opts.allow_parameters = true;
  opts.allow_variables = variables;
  auto t = dsl::parse_term(text, sig, opts, diags);
  if (!t) throw std::runtime_error("bad term " + text);
  return *t;
}

inline std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream s(text);
  std::string line;
  while (std::getline(s, line)) out.push_back(line);
  return out;
}

// Bound variables stay free, which for a convergent system is the same as
// instantiating them with fresh constants.
inline bool equation_holds(const QuantifiedEquation& e, const InitialFrame& phi,
                           const Theory& th) {
  ParameterInstantiator inst(phi.table());
  return normalize(inst(e.lhs), th.rules) == normalize(inst(e.rhs), th.rules);
}

inline bool fact_holds(const DeductionFact& f, const InitialFrame& phi, const Theory& th) {
  ParameterInstantiator inst(phi.table());
  return is_recipe(f.recipe, th.signature) && normalize(inst(f.recipe), th.rules) == f.term;
}

// Extended subterms for the prefix theory: like subterms, except that
// enc(<t1,t2>,u) also contributes enc(t1,u).
inline void collect_st_ext(const Term& t, const Signature& sig,
                           std::unordered_set<Term, TermHash>& out,
                           std::unordered_set<Term, TermHash>& expanded) {
  out.insert(t);
  if (!expanded.insert(t).second) return;
  if (!t.is_application()) return;
  if (sig[t.symbol()].name == "enc" && t.arity() == 2) {
    const Term& m = t.arg(0);
    if (m.is_application() && sig.pair_symbol() && m.symbol() == *sig.pair_symbol()) {
      // The stripped term is a member but is not itself expanded.
      out.insert(Term::apply(t.symbol(), {m.arg(0), t.arg(1)}));
    }
  }
  for (const Term& a : t.args()) collect_st_ext(a, sig, out, expanded);
}

// Ground congruence closure over terms, by naive fixpoint. Small inputs only.
class CongruenceClosure {
 public:
  void add_term(const Term& t) {
    for (const Term& s : distinct_subterms(t)) {
      if (index_.count(s)) continue;
      index_.emplace(s, terms_.size());
      terms_.push_back(s);
      parent_.push_back(parent_.size());
    }
  }

  void merge(const Term& a, const Term& b) {
    add_term(a);
    add_term(b);
    unite(index_.at(a), index_.at(b));
    close();
  }

  bool equal(const Term& a, const Term& b) {
    add_term(a);
    add_term(b);
    close();
    return find(index_.at(a)) == find(index_.at(b));
  }

 private:
  size_t find(size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  bool unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }
  void close() {
    bool changed = true;
    while (changed) {
      changed = false;
      std::map<std::vector<size_t>, size_t> signatures;
      for (size_t i = 0; i < terms_.size(); ++i) {
        const Term& t = terms_[i];
        if (!t.is_application() || t.arity() == 0) continue;
        std::vector<size_t> key{t.symbol()};
        for (const Term& a : t.args()) key.push_back(find(index_.at(a)));
        auto [it, fresh] = signatures.emplace(key, i);
        if (!fresh && unite(it->second, i)) changed = true;
      }
    }
  }

  std::vector<Term> terms_;
  std::vector<size_t> parent_;
  TermMap<size_t> index_;
};

// Random ground plain terms over a theory's public symbols and a few
// constants. Deterministic for a given seed.
class TermGenerator {
 public:
  TermGenerator(Signature& sig, uint32_t seed) : sig_(sig), rng_(seed) {
    for (SymbolId s = 0; s < sig.size(); ++s) {
      const Symbol& sym = sig[s];
      if (sym.origin == SymbolOrigin::kReserved) continue;
      if (sym.arity > 0 && sym.is_public()) functions_.push_back(s);
      if (sym.arity == 0) leaves_.push_back(Term::constant(s));
    }
    for (const char* c : {"a", "b"}) leaves_.push_back(constant(c, Visibility::kPublic));
    for (const char* c : {"k", "s"}) leaves_.push_back(constant(c, Visibility::kPrivate));
  }

  // Height at most depth + 1 (depth counts applications).
  Term term(unsigned depth) {
    std::uniform_int_distribution<int> coin(0, 2);
    if (depth == 0 || coin(rng_) == 0) return leaf();
    std::uniform_int_distribution<size_t> pick(0, functions_.size() - 1);
    SymbolId f = functions_[pick(rng_)];
    std::vector<Term> args;
    for (uint32_t i = 0; i < sig_[f].arity; ++i) args.push_back(term(depth - 1));
    return Term::apply(f, args);
  }

  InitialFrame frame(size_t max_facts, unsigned depth) {
    std::uniform_int_distribution<size_t> count(1, max_facts);
    return frame_of_size(count(rng_), depth);
  }

  InitialFrame frame_of_size(size_t n, unsigned depth) {
    InitialFrame phi;
    for (size_t i = 1; i <= n; ++i) phi.add(static_cast<uint32_t>(i), term(depth));
    return phi;
  }

  // Same domain, one entry replaced by a fresh random term.
  InitialFrame variant(const InitialFrame& phi, unsigned depth) {
    std::uniform_int_distribution<size_t> pick(0, phi.size() - 1);
    size_t k = pick(rng_);
    InitialFrame out;
    for (size_t i = 0; i < phi.size(); ++i) {
      const auto& [w, t] = phi.entries()[i];
      out.add(w, i == k ? term(depth) : t);
    }
    return out;
  }

  std::mt19937& rng() { return rng_; }

 private:
  Term leaf() {
    std::uniform_int_distribution<size_t> pick(0, leaves_.size() - 1);
    return leaves_[pick(rng_)];
  }

  Term constant(const std::string& name, Visibility v) {
    if (auto id = sig_.find(name)) return Term::constant(*id);
    return Term::constant(sig_.add({name, 0, v, SymbolOrigin::kDeclared}));
  }

  Signature& sig_;
  std::mt19937 rng_;
  std::vector<SymbolId> functions_;
  std::vector<Term> leaves_;
};

}  // namespace knowsat::testing

#endif  // KNOWSAT_TESTS_SUPPORT_HPP_

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

#include "knowsat/bench.hpp"

#include <stdexcept>

namespace knowsat {

Theory encryption_theory() {
  Signature sig;
  for (const char* f : {"enc", "dec", "pair"}) sig.add({f, 2});
  for (const char* f : {"proj1", "proj2"}) sig.add({f, 1});
  Term x = Term::variable(sig.add_variable("x"));
  Term y = Term::variable(sig.add_variable("y"));
  std::vector<RewriteRule> rules = {
      {sig.make("dec", {sig.make("enc", {x, y}), y}), x},
      {sig.make("proj1", {sig.make("pair", {x, y})}), x},
      {sig.make("proj2", {sig.make("pair", {x, y})}), y},
  };
  return Theory::build(std::move(sig), RewriteSystem(std::move(rules)));
}

namespace {

Term constant(Signature& sig, const std::string& name, Visibility v) {
  if (auto id = sig.find(name)) {
    if (sig[*id].arity != 0 || sig[*id].visibility != v) {
      throw std::invalid_argument("benchmark symbol " + name + " clashes with the signature");
    }
    return Term::constant(*id);
  }
  SymbolOrigin origin =
      v == Visibility::kPublic ? SymbolOrigin::kImplicitConstant : SymbolOrigin::kDeclared;
  return Term::constant(sig.add({name, 0, v, origin}));
}

}  // namespace

InitialFrame gen_benchmark(Signature& sig, unsigned n, int variant) {
  if (variant != 0 && variant != 1) throw std::invalid_argument("variant must be 0 or 1");
  auto enc = sig.find("enc");
  auto pair = sig.find("pair");
  if (!enc || !pair || sig[*enc].arity != 2 || sig[*pair].arity != 2) {
    throw std::invalid_argument("benchmark needs enc/2 and pair/2");
  }
  Term c0 = constant(sig, "c0", Visibility::kPublic);
  Term c1 = constant(sig, "c1", Visibility::kPublic);
  Term t = variant == 0 ? c0 : c1;
  for (unsigned j = 0; j < n; ++j) {
    Term k = constant(sig, "k" + std::to_string(variant) + "_" + std::to_string(j),
                      Visibility::kPrivate);
    t = Term::apply(*pair, {Term::apply(*enc, {t, k}), k});
  }
  InitialFrame phi;
  phi.add(1, t);
  phi.add(2, c0);
  phi.add(3, c1);
  return phi;
}

std::string benchmark_source(unsigned n) {
  auto term = [n](int v) {
    std::string t = "c" + std::to_string(v);
    for (unsigned j = 0; j < n; ++j) {
      std::string k = "k" + std::to_string(v) + "_" + std::to_string(j);
      t = "<enc(" + t + "," + k + ")," + k + ">";
    }
    return t;
  };
  std::string s;
  s += "# Nested encryptions of c0 (phi) and c1 (phiprime), depth " + std::to_string(n) + ".\n";
  s += "public enc/2, dec/2, pair/2, proj1/1, proj2/1;\n";
  if (n > 0) {
    s += "private ";
    for (int v = 0; v < 2; ++v) {
      for (unsigned j = 0; j < n; ++j) {
        if (v || j) s += ", ";
        s += "k" + std::to_string(v) + "_" + std::to_string(j) + "/0";
      }
    }
    s += ";\n";
  }
  s += "variables x, y;\n\n";
  s += "rule dec(enc(x,y),y) -> x;\nrule proj1(<x,y>) -> x;\nrule proj2(<x,y>) -> y;\n\n";
  for (int v = 0; v < 2; ++v) {
    s += "frame " + std::string(v ? "phiprime" : "phi") + " = { w1 -> " + term(v) +
         ", w2 -> c0, w3 -> c1 };\n";
  }
  s += "\nquery equivalent phi phiprime;\n";
  return s;
}

}  // namespace knowsat

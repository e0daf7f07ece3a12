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

#include "knowsat/decompose.hpp"

#include <algorithm>

namespace knowsat {

Term Decomposition::slot(size_t i) const {
  if (i >= 1 && i <= n()) return cores[i - 1];
  if (i <= n() + p()) return Term::variable(bound_vars[i - n() - 1]);
  return Term::variable(free_vars[i - n() - p() - 1]);
}

Term Decomposition::reconstruct() const {
  std::vector<std::optional<Term>> values(slot_count() + 1);
  for (size_t i = 1; i <= slot_count(); ++i) values[i] = slot(i);
  ParameterInstantiator inst(std::move(values));
  return inst(context);
}

namespace {

using Frontier = std::vector<Position>;

std::vector<Frontier> frontiers(const Term& t, const Position& pos, const Signature& sig) {
  if (t.is_variable()) return {{pos}};
  if (!t.is_application() || !sig.is_public(t.symbol())) return {{pos}};
  std::vector<Frontier> acc{{}};
  for (size_t i = 0; i < t.arity(); ++i) {
    Position child = pos;
    child.push_back(static_cast<uint32_t>(i + 1));
    std::vector<Frontier> options = frontiers(t.arg(i), child, sig);
    std::vector<Frontier> next;
    next.reserve(acc.size() * options.size());
    for (const Frontier& a : acc) {
      for (const Frontier& o : options) {
        Frontier f = a;
        f.insert(f.end(), o.begin(), o.end());
        next.push_back(std::move(f));
      }
    }
    acc = std::move(next);
  }
  acc.push_back({pos});
  return acc;
}

}  // namespace

std::vector<std::vector<Position>> cut_points(const Term& lhs, const Signature& sig,
                                              bool include_root) {
  std::vector<Frontier> all = frontiers(lhs, {}, sig);
  if (!include_root) {
    all.erase(std::remove_if(all.begin(), all.end(),
                             [](const Frontier& f) {
                               return f.size() == 1 && f[0].empty();
                             }),
              all.end());
  }
  return all;
}

Decomposition build_decomposition(const Term& lhs, const std::vector<Position>& frontier,
                                  size_t rule) {
  Frontier sorted = frontier;
  std::sort(sorted.begin(), sorted.end());
  Decomposition d;
  d.rule = rule;
  std::vector<VariableId> frontier_vars;
  for (const Position& p : sorted) {
    const Term& s = subterm_at(lhs, p);
    if (s.is_variable()) {
      if (std::find(frontier_vars.begin(), frontier_vars.end(), s.id()) ==
          frontier_vars.end()) {
        frontier_vars.push_back(s.id());
      }
    } else if (std::find(d.cores.begin(), d.cores.end(), s) == d.cores.end()) {
      d.cores.push_back(s);
    }
  }
  std::vector<VariableId> core_vars;
  for (const Term& c : d.cores) collect_variables(c, core_vars);
  for (VariableId v : frontier_vars) {
    bool bound = std::find(core_vars.begin(), core_vars.end(), v) != core_vars.end();
    (bound ? d.bound_vars : d.free_vars).push_back(v);
  }
  auto slot_of = [&](const Term& s) -> uint32_t {
    if (!s.is_variable()) {
      auto it = std::find(d.cores.begin(), d.cores.end(), s);
      return static_cast<uint32_t>(it - d.cores.begin()) + 1;
    }
    auto yb = std::find(d.bound_vars.begin(), d.bound_vars.end(), s.id());
    if (yb != d.bound_vars.end()) {
      return static_cast<uint32_t>(d.n() + (yb - d.bound_vars.begin())) + 1;
    }
    auto zb = std::find(d.free_vars.begin(), d.free_vars.end(), s.id());
    return static_cast<uint32_t>(d.n() + d.p() + (zb - d.free_vars.begin())) + 1;
  };
  Term ctx = lhs;
  for (const Position& p : sorted) {
    ctx = replace_at(ctx, p, Term::parameter(slot_of(subterm_at(lhs, p))));
  }
  d.context = ctx;
  return d;
}

std::vector<Decomposition> enumerate_decompositions(const RewriteRule& rule, size_t index,
                                                    const Signature& sig,
                                                    bool include_improper) {
  std::vector<Decomposition> out;
  for (const Frontier& f : cut_points(rule.lhs, sig, include_improper)) {
    Decomposition d = build_decomposition(rule.lhs, f, index);
    bool fresh = true;
    for (const Decomposition& e : out) {
      if (e.context == d.context && e.cores == d.cores) fresh = false;
    }
    if (fresh) out.push_back(std::move(d));
  }
  return out;
}

std::string describe(const Decomposition& d, const Signature& sig) {
  std::string s = to_string(d.context, sig);
  if (d.slot_count() == 0) return s;
  s += " [";
  for (size_t i = 1; i <= d.slot_count(); ++i) {
    if (i > 1) s += ", ";
    s += "w" + std::to_string(i) + "=" + to_string(d.slot(i), sig);
  }
  s += "]";
  return s;
}

}  // namespace knowsat

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

#include "knowsat/term.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace knowsat {
namespace detail {

enum : uint8_t { kHasVariables = 1, kHasParameters = 2 };

struct TermNode {
  mutable std::atomic<uint64_t> refs{1};
  TermKind kind;
  uint8_t flags = 0;
  uint32_t id;
  uint32_t height;
  uint64_t size;
  size_t hash;
  std::vector<Term> args;

  static Term adopt(const TermNode* n) { return Term(n); }
  static const TermNode* node_of(const Term& t) { return t.node_; }
};

namespace {

inline uint64_t mix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr size_t kShards = 64;

struct Shard {
  std::mutex mu;
  std::unordered_multimap<size_t, TermNode*> nodes;
};

class Table {
 public:
  Shard& shard(size_t h) { return shards_[(h >> 7) % kShards]; }
  std::atomic<size_t> live{0};

 private:
  Shard shards_[kShards];
};

Table& table() {
  static Table* t = new Table;
  return *t;
}

thread_local std::vector<const TermNode*> pending_deletes;
thread_local bool draining = false;

bool same_args(const std::vector<Term>& a, std::span<const Term> b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return false;
  }
  return true;
}

Term intern(TermKind kind, uint32_t id, std::span<const Term> args) {
  uint64_t h = mix((static_cast<uint64_t>(kind) << 32) ^ id);
  uint32_t height = 1;
  uint64_t size = 1;
  uint8_t flags = 0;
  if (kind == TermKind::kVariable) flags |= kHasVariables;
  if (kind == TermKind::kParameter) flags |= kHasParameters;
  for (const Term& a : args) {
    const TermNode* n = TermNode::node_of(a);
    h = mix(h ^ n->hash);
    height = std::max(height, n->height + 1);
    flags |= n->flags;
    if (size > std::numeric_limits<uint64_t>::max() - n->size) {
      size = std::numeric_limits<uint64_t>::max();
    } else {
      size += n->size;
    }
  }
  Shard& s = table().shard(h);
  std::lock_guard<std::mutex> lock(s.mu);
  auto [lo, hi] = s.nodes.equal_range(h);
  for (auto it = lo; it != hi; ++it) {
    TermNode* n = it->second;
    if (n->kind == kind && n->id == id && same_args(n->args, args)) {
      n->refs.fetch_add(1, std::memory_order_relaxed);
      return TermNode::adopt(n);
    }
  }
  auto* n = new TermNode;
  n->kind = kind;
  n->flags = flags;
  n->id = id;
  n->height = height;
  n->size = size;
  n->hash = h;
  n->args.assign(args.begin(), args.end());
  s.nodes.emplace(h, n);
  table().live.fetch_add(1, std::memory_order_relaxed);
  return TermNode::adopt(n);
}

}  // namespace

void retain(const TermNode* n) { n->refs.fetch_add(1, std::memory_order_relaxed); }

void release(const TermNode* n) {
  uint64_t old = n->refs.load(std::memory_order_relaxed);
  while (old > 1) {
    if (n->refs.compare_exchange_weak(old, old - 1, std::memory_order_acq_rel)) {
      return;
    }
  }
  {
    Shard& s = table().shard(n->hash);
    std::lock_guard<std::mutex> lock(s.mu);
    if (n->refs.fetch_sub(1, std::memory_order_acq_rel) != 1) return;
    auto [lo, hi] = s.nodes.equal_range(n->hash);
    for (auto it = lo; it != hi; ++it) {
      if (it->second == n) {
        s.nodes.erase(it);
        break;
      }
    }
  }
  table().live.fetch_sub(1, std::memory_order_relaxed);
  pending_deletes.push_back(n);
  if (draining) return;
  draining = true;
  while (!pending_deletes.empty()) {
    const TermNode* d = pending_deletes.back();
    pending_deletes.pop_back();
    delete d;
  }
  draining = false;
}

}  // namespace detail

using detail::TermNode;

Term Term::variable(VariableId id) {
  return detail::intern(TermKind::kVariable, id, {});
}
Term Term::parameter(uint32_t index) {
  return detail::intern(TermKind::kParameter, index, {});
}
Term Term::apply(SymbolId f, std::span<const Term> args) {
  return detail::intern(TermKind::kApplication, f, args);
}

TermKind Term::kind() const { return node_->kind; }
uint32_t Term::id() const { return node_->id; }
std::span<const Term> Term::args() const { return node_->args; }
uint32_t Term::height() const { return node_->height; }
uint64_t Term::tree_size() const { return node_->size; }
size_t Term::hash() const { return node_ ? node_->hash : 0; }
bool Term::has_variables() const { return node_->flags & detail::kHasVariables; }
bool Term::has_parameters() const { return node_->flags & detail::kHasParameters; }

size_t live_term_count() { return detail::table().live.load(); }

std::strong_ordering compare(const Term& a0, const Term& b0) {
  const Term* a = &a0;
  const Term* b = &b0;
  while (true) {
    if (*a == *b) return std::strong_ordering::equal;
    if (auto c = a->height() <=> b->height(); c != 0) return c;
    if (auto c = a->kind() <=> b->kind(); c != 0) return c;
    if (auto c = a->id() <=> b->id(); c != 0) return c;
    if (auto c = a->arity() <=> b->arity(); c != 0) return c;
    size_t i = 0;
    while (a->arg(i) == b->arg(i)) ++i;
    const Term* na = &a->arg(i);
    const Term* nb = &b->arg(i);
    a = na;
    b = nb;
  }
}

Signature::Signature() {
  reserved_ = add({"$a", 0, Visibility::kPublic, SymbolOrigin::kReserved});
  fresh_.push_back(add({"$c1", 0, Visibility::kPublic, SymbolOrigin::kReserved}));
  fresh_.push_back(add({"$c2", 0, Visibility::kPublic, SymbolOrigin::kReserved}));
}

SymbolId Signature::add(Symbol s) {
  if (by_name_.count(s.name)) {
    throw std::invalid_argument("duplicate symbol " + s.name);
  }
  SymbolId id = static_cast<SymbolId>(symbols_.size());
  by_name_.emplace(s.name, id);
  symbols_.push_back(std::move(s));
  return id;
}

std::optional<SymbolId> Signature::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<SymbolId> Signature::pair_symbol() const {
  auto id = find("pair");
  if (id && symbols_[*id].arity == 2) return id;
  return std::nullopt;
}

size_t Signature::user_symbol_count() const {
  return std::count_if(symbols_.begin(), symbols_.end(), [](const Symbol& s) {
    return s.origin != SymbolOrigin::kReserved;
  });
}

VariableId Signature::add_variable(std::string name) {
  if (variable_ids_.count(name)) {
    throw std::invalid_argument("duplicate variable " + name);
  }
  VariableId id = static_cast<VariableId>(variables_.size());
  variable_ids_.emplace(name, id);
  variables_.push_back(std::move(name));
  return id;
}

std::optional<VariableId> Signature::find_variable(std::string_view name) const {
  auto it = variable_ids_.find(std::string(name));
  if (it == variable_ids_.end()) return std::nullopt;
  return it->second;
}

std::string Signature::variable_name(VariableId v) const {
  if (is_bound_variable(v)) return "z" + std::to_string(v - kBoundVariableBase + 1);
  if (v < variables_.size()) return variables_[v];
  return "_v" + std::to_string(v);
}

Term Signature::make(SymbolId f, std::span<const Term> args) const {
  if (f >= symbols_.size()) throw std::invalid_argument("unknown symbol id");
  if (symbols_[f].arity != args.size()) {
    throw std::invalid_argument("arity mismatch for " + symbols_[f].name);
  }
  return Term::apply(f, args);
}

Term Signature::make(std::string_view name, std::initializer_list<Term> args) const {
  auto f = find(name);
  if (!f) throw std::invalid_argument("unknown symbol " + std::string(name));
  return make(*f, args);
}

std::string position_to_string(const Position& p) {
  if (p.empty()) return "e";
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(p[i]);
  }
  return s;
}

std::vector<Subterm> subterms(const Term& t) {
  std::vector<Subterm> out;
  std::vector<Subterm> stack{{{}, t}};
  while (!stack.empty()) {
    Subterm cur = std::move(stack.back());
    stack.pop_back();
    auto args = cur.term.args();
    for (size_t i = args.size(); i-- > 0;) {
      Position p = cur.position;
      p.push_back(static_cast<uint32_t>(i + 1));
      stack.push_back({std::move(p), args[i]});
    }
    out.push_back(std::move(cur));
  }
  return out;
}

void collect_distinct_subterms(const Term& t, std::vector<Term>& out,
                               std::unordered_set<const void*>& seen) {
  if (!seen.insert(t.identity()).second) return;
  std::vector<std::pair<Term, size_t>> stack{{t, 0}};
  while (!stack.empty()) {
    auto& [cur, next] = stack.back();
    if (next < cur.arity()) {
      Term child = cur.arg(next++);
      if (seen.insert(child.identity()).second) stack.push_back({child, 0});
      continue;
    }
    out.push_back(cur);
    stack.pop_back();
  }
}

std::vector<Term> distinct_subterms(const Term& t) {
  std::vector<Term> out;
  std::unordered_set<const void*> seen;
  collect_distinct_subterms(t, out, seen);
  return out;
}

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (uint32_t i : p) {
    if (i == 0 || i > cur->arity()) {
      throw std::out_of_range("invalid position " + position_to_string(p));
    }
    cur = &cur->arg(i - 1);
  }
  return *cur;
}

namespace {
Term replace_rec(const Term& t, const Position& p, size_t depth, const Term& u) {
  if (depth == p.size()) return u;
  uint32_t i = p[depth];
  if (i == 0 || i > t.arity()) {
    throw std::out_of_range("invalid position " + position_to_string(p));
  }
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[i - 1] = replace_rec(args[i - 1], p, depth + 1, u);
  return Term::apply(t.symbol(), args);
}
}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& u) {
  return replace_rec(t, p, 0, u);
}

bool contains_private_symbol(const Term& t, const Signature& sig) {
  std::vector<Term> all = distinct_subterms(t);
  return std::any_of(all.begin(), all.end(), [&](const Term& s) {
    return s.is_application() && !sig.is_public(s.symbol());
  });
}

void collect_variables(const Term& t, std::vector<VariableId>& out) {
  if (!t.has_variables()) return;
  if (t.is_variable()) {
    if (std::find(out.begin(), out.end(), t.id()) == out.end()) out.push_back(t.id());
    return;
  }
  for (const Term& a : t.args()) collect_variables(a, out);
}

std::vector<VariableId> variables_of(const Term& t) {
  std::vector<VariableId> out;
  collect_variables(t, out);
  return out;
}

bool occurs(VariableId v, const Term& t) {
  if (!t.has_variables()) return false;
  if (t.is_variable()) return t.id() == v;
  for (const Term& a : t.args()) {
    if (occurs(v, a)) return true;
  }
  return false;
}

void Substitution::bind(VariableId v, Term t) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const auto& e, VariableId x) { return e.first < x; });
  if (it != entries_.end() && it->first == v) {
    it->second = std::move(t);
  } else {
    entries_.insert(it, {v, std::move(t)});
  }
}

const Term* Substitution::find(VariableId v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const auto& e, VariableId x) { return e.first < x; });
  if (it != entries_.end() && it->first == v) return &it->second;
  return nullptr;
}

bool Substitution::is_ground() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const auto& e) { return e.second.is_ground(); });
}

Substitution Substitution::restricted_to(std::span<const VariableId> vars) const {
  Substitution out;
  for (const auto& [v, t] : entries_) {
    if (std::find(vars.begin(), vars.end(), v) != vars.end()) out.bind(v, t);
  }
  return out;
}

namespace {
Term subst_rec(const Term& t, const Substitution& s,
               std::unordered_map<const void*, Term>& memo) {
  if (!t.has_variables()) return t;
  if (t.is_variable()) {
    const Term* r = s.find(t.id());
    return r ? *r : t;
  }
  auto it = memo.find(t.identity());
  if (it != memo.end()) return it->second;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(subst_rec(a, s, memo));
  Term r = Term::apply(t.symbol(), args);
  memo.emplace(t.identity(), r);
  return r;
}
}  // namespace

Term apply_substitution(const Term& t, const Substitution& s) {
  if (s.empty()) return t;
  std::unordered_map<const void*, Term> memo;
  return subst_rec(t, s, memo);
}

Term ParameterInstantiator::operator()(const Term& t) {
  if (!t.has_parameters()) return t;
  if (t.is_parameter()) {
    uint32_t i = t.id();
    if (i < values_.size() && values_[i]) return *values_[i];
    return t;
  }
  auto it = memo_.find(t);
  if (it != memo_.end()) return it->second;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back((*this)(a));
  Term r = Term::apply(t.symbol(), args);
  memo_.emplace(t, r);
  return r;
}

Term instantiate_parameters(const Term& t, std::span<const Term> values) {
  std::vector<std::optional<Term>> v(values.begin(), values.end());
  ParameterInstantiator inst(std::move(v));
  return inst(t);
}

bool match_into(const Term& pattern, const Term& subject, Substitution& s) {
  if (pattern.is_variable()) {
    const Term* bound = s.find(pattern.id());
    if (bound) return *bound == subject;
    s.bind(pattern.id(), subject);
    return true;
  }
  if (!pattern.has_variables()) return pattern == subject;
  if (!subject.is_application() || subject.symbol() != pattern.symbol() ||
      subject.arity() != pattern.arity()) {
    return false;
  }
  for (size_t i = 0; i < pattern.arity(); ++i) {
    if (!match_into(pattern.arg(i), subject.arg(i), s)) return false;
  }
  return true;
}

std::optional<Substitution> match_term(const Term& pattern, const Term& subject) {
  Substitution s;
  if (!match_into(pattern, subject, s)) return std::nullopt;
  return s;
}

void print_term(std::string& out, const Term& t, const Signature& sig,
                const PrintOptions& opts) {
  auto pair = opts.pair_sugar ? sig.pair_symbol() : std::nullopt;
  struct Frame {
    const Term* term;
    size_t next;
    bool sugar;
  };
  std::vector<Frame> stack;
  auto open = [&](const Term& u) {
    switch (u.kind()) {
      case TermKind::kVariable:
        out += sig.variable_name(u.id());
        return;
      case TermKind::kParameter:
        out += 'w';
        out += std::to_string(u.id());
        return;
      case TermKind::kApplication:
        break;
    }
    bool sugar = pair && u.symbol() == *pair;
    if (sugar) {
      out += '<';
    } else {
      out += sig[u.symbol()].name;
      if (u.arity() == 0) return;
      out += '(';
    }
    stack.push_back({&u, 0, sugar});
  };
  open(t);
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == f.term->arity()) {
      out += f.sugar ? '>' : ')';
      stack.pop_back();
      continue;
    }
    if (f.next > 0) out += ',';
    const Term& child = f.term->arg(f.next++);
    open(child);
  }
}

std::string to_string(const Term& t, const Signature& sig, const PrintOptions& opts) {
  std::string s;
  print_term(s, t, sig, opts);
  return s;
}

}  // namespace knowsat

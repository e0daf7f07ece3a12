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

#ifndef KNOWSAT_TERM_HPP_
#define KNOWSAT_TERM_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace knowsat {

using SymbolId = uint32_t;
using VariableId = uint32_t;

// Variables at or above this id are bound variables of quantified equations.
inline constexpr VariableId kBoundVariableBase = 0x40000000u;

inline constexpr VariableId bound_variable(uint32_t k) {
  return kBoundVariableBase + k;
}
inline constexpr bool is_bound_variable(VariableId v) {
  return v >= kBoundVariableBase;
}

enum class Visibility : uint8_t { kPublic, kPrivate };
enum class SymbolOrigin : uint8_t { kDeclared, kImplicitConstant, kReserved };

struct Symbol {
  std::string name;
  uint32_t arity = 0;
  Visibility visibility = Visibility::kPublic;
  SymbolOrigin origin = SymbolOrigin::kDeclared;

  bool is_public() const { return visibility == Visibility::kPublic; }
};

enum class TermKind : uint8_t { kVariable = 0, kParameter = 1, kApplication = 2 };

namespace detail {
struct TermNode;
void retain(const TermNode* n);
void release(const TermNode* n);
}  // namespace detail

// Immutable, hash-consed first-order term. Structurally equal terms share one
// node, so equality and hashing are O(1).
class Term {
 public:
  Term() = default;
  Term(const Term& o) : node_(o.node_) {
    if (node_) detail::retain(node_);
  }
  Term(Term&& o) noexcept : node_(o.node_) { o.node_ = nullptr; }
  Term& operator=(const Term& o) {
    if (o.node_) detail::retain(o.node_);
    if (node_) detail::release(node_);
    node_ = o.node_;
    return *this;
  }
  Term& operator=(Term&& o) noexcept {
    if (this != &o) {
      if (node_) detail::release(node_);
      node_ = o.node_;
      o.node_ = nullptr;
    }
    return *this;
  }
  ~Term() {
    if (node_) detail::release(node_);
  }

  static Term variable(VariableId id);
  static Term parameter(uint32_t index);
  // Arity is not checked here; see Signature::make for the checked builder.
  static Term apply(SymbolId f, std::span<const Term> args);
  static Term apply(SymbolId f, std::initializer_list<Term> args) {
    return apply(f, std::span<const Term>(args.begin(), args.size()));
  }
  static Term constant(SymbolId c) { return apply(c, std::span<const Term>()); }

  bool valid() const { return node_ != nullptr; }
  TermKind kind() const;
  bool is_variable() const { return kind() == TermKind::kVariable; }
  bool is_parameter() const { return kind() == TermKind::kParameter; }
  bool is_application() const { return kind() == TermKind::kApplication; }

  // Symbol, variable or parameter id depending on kind().
  uint32_t id() const;
  SymbolId symbol() const { return id(); }
  std::span<const Term> args() const;
  const Term& arg(size_t i) const { return args()[i]; }
  size_t arity() const { return args().size(); }

  uint32_t height() const;
  // Tree size, saturating at UINT64_MAX.
  uint64_t tree_size() const;
  size_t hash() const;
  bool has_variables() const;
  bool has_parameters() const;
  bool is_ground() const { return !has_variables(); }

  const void* identity() const { return node_; }

  friend bool operator==(const Term& a, const Term& b) {
    return a.node_ == b.node_;
  }

 private:
  explicit Term(const detail::TermNode* n) : node_(n) {}
  friend struct detail::TermNode;

  const detail::TermNode* node_ = nullptr;
};

struct TermHash {
  size_t operator()(const Term& t) const { return t.hash(); }
};

template <typename V>
using TermMap = std::unordered_map<Term, V, TermHash>;

// Total order: height, kind, id, arity, then arguments left to right.
std::strong_ordering compare(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return compare(a, b) < 0; }
};

// Number of live interned nodes (diagnostics and leak tests).
size_t live_term_count();

class Signature {
 public:
  Signature();

  // Throws std::invalid_argument on a duplicate name.
  SymbolId add(Symbol s);
  std::optional<SymbolId> find(std::string_view name) const;
  const Symbol& operator[](SymbolId id) const { return symbols_.at(id); }
  size_t size() const { return symbols_.size(); }
  bool is_public(SymbolId id) const { return symbols_.at(id).is_public(); }
  uint32_t arity(SymbolId id) const { return symbols_.at(id).arity; }

  // The fixed constant used by fact-creating context reductions.
  SymbolId reserved_constant() const { return reserved_; }
  // Constants the brute-force oracle may draw on.
  std::span<const SymbolId> fresh_pool() const { return fresh_; }
  std::optional<SymbolId> pair_symbol() const;

  // Symbols the user declared or that were implicitly introduced.
  size_t user_symbol_count() const;

  VariableId add_variable(std::string name);
  std::optional<VariableId> find_variable(std::string_view name) const;
  std::string variable_name(VariableId v) const;
  size_t variable_count() const { return variables_.size(); }

  // Checked application builder. Throws std::invalid_argument on arity error.
  Term make(SymbolId f, std::span<const Term> args) const;
  Term make(SymbolId f, std::initializer_list<Term> args) const {
    return make(f, std::span<const Term>(args.begin(), args.size()));
  }
  Term make(std::string_view name, std::initializer_list<Term> args) const;

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, SymbolId> by_name_;
  std::vector<std::string> variables_;
  std::unordered_map<std::string, VariableId> variable_ids_;
  SymbolId reserved_ = 0;
  std::vector<SymbolId> fresh_;
};

// 1-based child indices; empty is the root.
using Position = std::vector<uint32_t>;

std::string position_to_string(const Position& p);

struct Subterm {
  Position position;
  Term term;
};

// Pre-order, root first.
std::vector<Subterm> subterms(const Term& t);
// Distinct subterms, each once, children before parents.
std::vector<Term> distinct_subterms(const Term& t);
void collect_distinct_subterms(const Term& t, std::vector<Term>& out,
                               std::unordered_set<const void*>& seen);

// Throws std::out_of_range for an invalid position.
const Term& subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& u);

bool contains_private_symbol(const Term& t, const Signature& sig);
inline bool is_recipe(const Term& t, const Signature& sig) {
  return !contains_private_symbol(t, sig);
}
inline bool is_plain(const Term& t) { return !t.has_parameters(); }

// Variables in order of first (pre-order) occurrence.
std::vector<VariableId> variables_of(const Term& t);
void collect_variables(const Term& t, std::vector<VariableId>& out);
bool occurs(VariableId v, const Term& t);

class Substitution {
 public:
  Substitution() = default;

  void bind(VariableId v, Term t);
  const Term* find(VariableId v) const;
  bool contains(VariableId v) const { return find(v) != nullptr; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool is_ground() const;
  // Sorted by variable id.
  const std::vector<std::pair<VariableId, Term>>& entries() const { return entries_; }
  Substitution restricted_to(std::span<const VariableId> vars) const;

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<std::pair<VariableId, Term>> entries_;
};

Term apply_substitution(const Term& t, const Substitution& s);

// Replaces Parameter(i) by values[i]; parameters outside the table stay.
// Shared subterms are rewritten once.
class ParameterInstantiator {
 public:
  explicit ParameterInstantiator(std::vector<std::optional<Term>> values)
      : values_(std::move(values)) {}
  Term operator()(const Term& t);

 private:
  std::vector<std::optional<Term>> values_;
  std::unordered_map<Term, Term, TermHash> memo_;
};

Term instantiate_parameters(const Term& t, std::span<const Term> values);

// Syntactic matching. Variables of the subject are treated as constants.
std::optional<Substitution> match_term(const Term& pattern, const Term& subject);
// Extends an existing substitution; returns false and leaves it unspecified
// on failure.
bool match_into(const Term& pattern, const Term& subject, Substitution& s);

struct PrintOptions {
  bool pair_sugar = true;
};

std::string to_string(const Term& t, const Signature& sig,
                      const PrintOptions& opts = {});
void print_term(std::string& out, const Term& t, const Signature& sig,
                const PrintOptions& opts = {});

}  // namespace knowsat

template <>
struct std::hash<knowsat::Term> {
  size_t operator()(const knowsat::Term& t) const { return t.hash(); }
};

#endif  // KNOWSAT_TERM_HPP_

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

#ifndef KNOWSAT_DSL_HPP_
#define KNOWSAT_DSL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "knowsat/theory.hpp"

namespace knowsat::dsl {

// 1-based source location. Spans never take part in AST equality.
struct Span {
  uint32_t line = 0;
  uint32_t column = 0;
  friend bool operator==(const Span&, const Span&) { return true; }
};

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity = Severity::kError;
  Span span;
  std::string message;
};

// "file:line:col: error: message"
std::string format(const Diagnostic& d, std::string_view filename);
bool has_errors(const std::vector<Diagnostic>& diags);

// ---- Abstract syntax ----

struct AstTerm {
  enum class Kind { kName, kApply, kPair };
  Kind kind = Kind::kName;
  std::string name;
  std::vector<AstTerm> args;
  Span span;
  bool operator==(const AstTerm&) const = default;
};

struct SymbolDecl {
  std::string name;
  uint32_t arity = 0;
  Span span;
  bool operator==(const SymbolDecl&) const = default;
};

struct SignatureDecl {
  Visibility visibility = Visibility::kPublic;
  std::vector<SymbolDecl> symbols;
  Span span;
  bool operator==(const SignatureDecl&) const = default;
};

struct VariablesDecl {
  std::vector<std::string> names;
  Span span;
  bool operator==(const VariablesDecl&) const = default;
};

struct RuleDecl {
  AstTerm lhs;
  AstTerm rhs;
  Span span;
  bool operator==(const RuleDecl&) const = default;
};

struct StratumSeparator {
  Span span;
  bool operator==(const StratumSeparator&) const = default;
};

struct FrameEntry {
  std::string parameter;
  AstTerm term;
  Span span;
  bool operator==(const FrameEntry&) const = default;
};

struct FrameDecl {
  std::string name;
  std::vector<FrameEntry> entries;
  Span span;
  bool operator==(const FrameDecl&) const = default;
};

enum class QueryKind { kDeducible, kEquivalent, kSaturate, kClassify };

struct QueryDecl {
  QueryKind kind = QueryKind::kClassify;
  std::vector<std::string> frames;
  std::optional<AstTerm> term;
  Span span;
  bool operator==(const QueryDecl&) const = default;
};

using Item = std::variant<SignatureDecl, VariablesDecl, RuleDecl, StratumSeparator, FrameDecl,
                          QueryDecl>;

struct TheoryFile {
  std::vector<Item> items;
  bool operator==(const TheoryFile&) const = default;
};

struct ParseResult {
  TheoryFile file;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return !has_errors(diagnostics); }
};

// Never throws; syntax errors are reported and parsing resumes after the
// next ';'.
ParseResult parse(std::string_view text);

// Canonical source text; parse(render(f)).file == f.
std::string render(const TheoryFile& f);
std::string render(const AstTerm& t);

// ---- Elaboration ----

struct Query {
  QueryKind kind = QueryKind::kClassify;
  std::vector<std::string> frames;
  std::optional<Term> term;
  Span span;
};

struct Program {
  Theory theory;
  std::vector<std::pair<std::string, InitialFrame>> frames;
  std::vector<Query> queries;

  const InitialFrame* frame(std::string_view name) const;
};

struct ElaborateResult {
  std::optional<Program> program;
  std::vector<Diagnostic> diagnostics;
};

ElaborateResult elaborate(const TheoryFile& f);

// parse followed by elaborate.
ElaborateResult load(std::string_view text);

struct TermOptions {
  bool allow_parameters = false;
  bool allow_variables = false;
  // Undeclared nullary names become implicit public constants of sig.
  bool allow_implicit_constants = true;
};

// Parses a single term against an existing signature.
std::optional<Term> parse_term(std::string_view text, Signature& sig, const TermOptions& opts,
                               std::vector<Diagnostic>& diags);

}  // namespace knowsat::dsl

#endif  // KNOWSAT_DSL_HPP_

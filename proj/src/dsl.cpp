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

#include "knowsat/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>

namespace knowsat::dsl {

std::string format(const Diagnostic& d, std::string_view filename) {
  std::string s(filename);
  s += ":" + std::to_string(d.span.line) + ":" + std::to_string(d.span.column) + ": ";
  s += d.severity == Severity::kError ? "error: " : "warning: ";
  s += d.message;
  return s;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::kError; });
}

namespace {

// ---- Lexer ----

enum class Tok {
  kIdent,
  kNumber,
  kSlash,
  kComma,
  kSemi,
  kLParen,
  kRParen,
  kLAngle,
  kRAngle,
  kLBrace,
  kRBrace,
  kEquals,
  kColon,
  kArrow,
  kSeparator,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

std::string describe(Tok t) {
  switch (t) {
    case Tok::kIdent:
      return "identifier";
    case Tok::kNumber:
      return "number";
    case Tok::kSlash:
      return "'/'";
    case Tok::kComma:
      return "','";
    case Tok::kSemi:
      return "';'";
    case Tok::kLParen:
      return "'('";
    case Tok::kRParen:
      return "')'";
    case Tok::kLAngle:
      return "'<'";
    case Tok::kRAngle:
      return "'>'";
    case Tok::kLBrace:
      return "'{'";
    case Tok::kRBrace:
      return "'}'";
    case Tok::kEquals:
      return "'='";
    case Tok::kColon:
      return "':'";
    case Tok::kArrow:
      return "'->'";
    case Tok::kSeparator:
      return "'---'";
    case Tok::kEnd:
      return "end of input";
  }
  return "";
}

std::vector<Token> lex(std::string_view text, std::vector<Diagnostic>& diags) {
  std::vector<Token> out;
  uint32_t line = 1;
  uint32_t col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    Span here{line, col};
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      size_t j = i;
      while (j < text.size()) {
        unsigned char d = static_cast<unsigned char>(text[j]);
        if (!(std::isalnum(d) || d == '_' || d == '\'')) break;
        ++j;
      }
      out.push_back({Tok::kIdent, std::string(text.substr(i, j - i)), here});
      advance(j - i);
      continue;
    }
    if (std::isdigit(c)) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::kNumber, std::string(text.substr(i, j - i)), here});
      advance(j - i);
      continue;
    }
    if (c == '-') {
      if (text.substr(i, 3) == "---") {
        out.push_back({Tok::kSeparator, "---", here});
        advance(3);
        continue;
      }
      if (text.substr(i, 2) == "->") {
        out.push_back({Tok::kArrow, "->", here});
        advance(2);
        continue;
      }
      diags.push_back({Severity::kError, here, "unexpected character '-'"});
      advance(1);
      continue;
    }
    Tok kind = Tok::kEnd;
    switch (c) {
      case '/':
        kind = Tok::kSlash;
        break;
      case ',':
        kind = Tok::kComma;
        break;
      case ';':
        kind = Tok::kSemi;
        break;
      case '(':
        kind = Tok::kLParen;
        break;
      case ')':
        kind = Tok::kRParen;
        break;
      case '<':
        kind = Tok::kLAngle;
        break;
      case '>':
        kind = Tok::kRAngle;
        break;
      case '{':
        kind = Tok::kLBrace;
        break;
      case '}':
        kind = Tok::kRBrace;
        break;
      case '=':
        kind = Tok::kEquals;
        break;
      case ':':
        kind = Tok::kColon;
        break;
      default:
        break;
    }
    if (kind == Tok::kEnd) {
      std::string shown = std::isprint(c) ? std::string(1, static_cast<char>(c))
                                          : "\\x" + std::string(1, "0123456789abcdef"[c >> 4]) +
                                                std::string(1, "0123456789abcdef"[c & 15]);
      diags.push_back({Severity::kError, here, "unexpected character '" + shown + "'"});
      advance(1);
      continue;
    }
    out.push_back({kind, std::string(1, static_cast<char>(c)), here});
    advance(1);
  }
  out.push_back({Tok::kEnd, "", Span{line, col}});
  return out;
}

// ---- Parser ----

constexpr size_t kMaxNesting = 2000;

struct SyntaxError {
  Span span;
  std::string message;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags)
      : toks_(std::move(toks)), diags_(diags) {}

  TheoryFile file() {
    TheoryFile f;
    while (peek().kind != Tok::kEnd) {
      try {
        f.items.push_back(item());
      } catch (const SyntaxError& e) {
        diags_.push_back({Severity::kError, e.span, e.message});
        recover();
      }
    }
    return f;
  }

  AstTerm single_term() {
    AstTerm t = term(0);
    if (peek().kind != Tok::kEnd) fail("expected end of term, found " + describe(peek().kind));
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::kEnd) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError{peek().span, msg}; }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) {
      fail(std::string("expected ") + what + ", found " + describe(peek().kind));
    }
    return next();
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }

  void recover() {
    while (peek().kind != Tok::kEnd && peek().kind != Tok::kSemi) next();
    accept(Tok::kSemi);
  }

  Item item() {
    const Token& head = peek();
    if (head.kind == Tok::kSeparator) {
      next();
      return StratumSeparator{head.span};
    }
    if (head.kind != Tok::kIdent) fail("expected a declaration, found " + describe(head.kind));
    const std::string& kw = head.text;
    Span span = head.span;
    if (kw == "public" || kw == "private") {
      next();
      SignatureDecl d;
      d.span = span;
      d.visibility = kw == "public" ? Visibility::kPublic : Visibility::kPrivate;
      do {
        SymbolDecl s;
        s.span = peek().span;
        s.name = expect(Tok::kIdent, "symbol name").text;
        expect(Tok::kSlash, "'/'");
        const Token& n = expect(Tok::kNumber, "arity");
        if (n.text.size() > 6) throw SyntaxError{n.span, "arity too large"};
        s.arity = static_cast<uint32_t>(std::stoul(n.text));
        d.symbols.push_back(std::move(s));
      } while (accept(Tok::kComma));
      expect(Tok::kSemi, "';'");
      return d;
    }
    if (kw == "variables") {
      next();
      VariablesDecl d;
      d.span = span;
      do {
        d.names.push_back(expect(Tok::kIdent, "variable name").text);
      } while (accept(Tok::kComma));
      expect(Tok::kSemi, "';'");
      return d;
    }
    if (kw == "rule") {
      next();
      RuleDecl r;
      r.span = span;
      r.lhs = term(0);
      expect(Tok::kArrow, "'->'");
      r.rhs = term(0);
      expect(Tok::kSemi, "';'");
      return r;
    }
    if (kw == "frame") {
      next();
      FrameDecl f;
      f.span = span;
      f.name = expect(Tok::kIdent, "frame name").text;
      expect(Tok::kEquals, "'='");
      expect(Tok::kLBrace, "'{'");
      if (peek().kind != Tok::kRBrace) {
        do {
          FrameEntry e;
          e.span = peek().span;
          e.parameter = expect(Tok::kIdent, "parameter").text;
          expect(Tok::kArrow, "'->'");
          e.term = term(0);
          f.entries.push_back(std::move(e));
        } while (accept(Tok::kComma));
      }
      expect(Tok::kRBrace, "'}'");
      expect(Tok::kSemi, "';'");
      return f;
    }
    if (kw == "query") {
      next();
      QueryDecl q;
      q.span = span;
      const Token& kind = expect(Tok::kIdent, "query kind");
      if (kind.text == "deducible") {
        q.kind = QueryKind::kDeducible;
        q.frames.push_back(expect(Tok::kIdent, "frame name").text);
        expect(Tok::kColon, "':'");
        q.term = term(0);
      } else if (kind.text == "equivalent") {
        q.kind = QueryKind::kEquivalent;
        q.frames.push_back(expect(Tok::kIdent, "frame name").text);
        q.frames.push_back(expect(Tok::kIdent, "frame name").text);
      } else if (kind.text == "saturate") {
        q.kind = QueryKind::kSaturate;
        q.frames.push_back(expect(Tok::kIdent, "frame name").text);
      } else if (kind.text == "classify") {
        q.kind = QueryKind::kClassify;
      } else {
        throw SyntaxError{kind.span, "unknown query kind '" + kind.text + "'"};
      }
      expect(Tok::kSemi, "';'");
      return q;
    }
    fail("unknown declaration '" + kw + "'");
  }

  AstTerm term(size_t depth) {
    if (depth > kMaxNesting) fail("term nesting too deep");
    AstTerm t;
    t.span = peek().span;
    if (accept(Tok::kLAngle)) {
      t.kind = AstTerm::Kind::kPair;
      t.args.push_back(term(depth + 1));
      expect(Tok::kComma, "','");
      t.args.push_back(term(depth + 1));
      expect(Tok::kRAngle, "'>'");
      return t;
    }
    t.name = expect(Tok::kIdent, "a term").text;
    if (!accept(Tok::kLParen)) return t;
    t.kind = AstTerm::Kind::kApply;
    do {
      t.args.push_back(term(depth + 1));
    } while (accept(Tok::kComma));
    expect(Tok::kRParen, "')'");
    return t;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<Diagnostic>& diags_;
};

// ---- Elaboration helpers ----

bool is_parameter_name(std::string_view s, uint32_t* id) {
  if (s.size() < 2 || s.size() > 9 || s[0] != 'w') return false;
  if (s[1] == '0' && s.size() > 2) return false;
  uint32_t v = 0;
  for (size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    v = v * 10 + static_cast<uint32_t>(s[i] - '0');
  }
  if (id) *id = v;
  return true;
}

class TermBuilder {
 public:
  TermBuilder(Signature& sig, const TermOptions& opts, std::vector<Diagnostic>& diags)
      : sig_(sig), opts_(opts), diags_(diags) {}

  // Returns nullopt after reporting at least one error.
  std::optional<Term> build(const AstTerm& root) {
    bool ok = true;
    // Iterative post-order keeps deep inputs off the native stack.
    struct Frame {
      const AstTerm* node;
      size_t next;
    };
    std::vector<Frame> stack{{&root, 0}};
    std::vector<Term> values;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < f.node->args.size()) {
        const AstTerm* child = &f.node->args[f.next++];
        stack.push_back({child, 0});
        continue;
      }
      const AstTerm& n = *f.node;
      stack.pop_back();
      size_t argc = n.args.size();
      std::vector<Term> args(values.end() - static_cast<std::ptrdiff_t>(argc), values.end());
      values.resize(values.size() - argc);
      std::optional<Term> t = node(n, args);
      if (!t) {
        ok = false;
        t = Term::constant(sig_.reserved_constant());
      }
      values.push_back(*t);
    }
    if (!ok) return std::nullopt;
    return values.back();
  }

 private:
  std::optional<Term> node(const AstTerm& n, const std::vector<Term>& args) {
    if (n.kind == AstTerm::Kind::kPair) {
      auto pair = sig_.pair_symbol();
      if (!pair) return error(n.span, "pair syntax requires a declared symbol pair/2");
      return Term::apply(*pair, args);
    }
    if (n.kind == AstTerm::Kind::kName) {
      if (auto v = sig_.find_variable(n.name)) {
        if (!opts_.allow_variables) return error(n.span, "frame term not ground");
        return Term::variable(*v);
      }
      uint32_t w = 0;
      if (is_parameter_name(n.name, &w)) {
        if (!opts_.allow_parameters) {
          return error(n.span, "parameter " + n.name + " may not occur in a plain term");
        }
        return Term::parameter(w);
      }
    }
    auto f = sig_.find(n.name);
    if (!f) {
      if (n.kind == AstTerm::Kind::kName && opts_.allow_implicit_constants) {
        SymbolId id = sig_.add({n.name, 0, Visibility::kPublic, SymbolOrigin::kImplicitConstant});
        diags_.push_back(
            {Severity::kWarning, n.span, "implicit public constant '" + n.name + "'"});
        return Term::constant(id);
      }
      return error(n.span, "unknown symbol of arity " + std::to_string(args.size()) + " '" +
                               n.name + "'");
    }
    const Symbol& s = sig_[*f];
    if (s.arity != args.size()) {
      return error(n.span, "symbol '" + n.name + "' has arity " + std::to_string(s.arity) +
                               ", used with " + std::to_string(args.size()));
    }
    return Term::apply(*f, args);
  }

  std::optional<Term> error(Span span, std::string msg) {
    diags_.push_back({Severity::kError, span, std::move(msg)});
    return std::nullopt;
  }

  Signature& sig_;
  const TermOptions& opts_;
  std::vector<Diagnostic>& diags_;
};

void render_term(std::string& out, const AstTerm& t) {
  struct Frame {
    const AstTerm* node;
    size_t next;
  };
  std::vector<Frame> stack;
  auto open = [&](const AstTerm& n) {
    if (n.kind == AstTerm::Kind::kPair) {
      out += '<';
    } else {
      out += n.name;
      if (n.kind == AstTerm::Kind::kApply) out += '(';
    }
    stack.push_back({&n, 0});
  };
  open(t);
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next < f.node->args.size()) {
      if (f.next > 0) out += ',';
      const AstTerm& child = f.node->args[f.next++];
      open(child);
      continue;
    }
    if (f.node->kind == AstTerm::Kind::kPair) out += '>';
    if (f.node->kind == AstTerm::Kind::kApply) out += ')';
    stack.pop_back();
  }
}

}  // namespace

ParseResult parse(std::string_view text) {
  ParseResult r;
  Parser p(lex(text, r.diagnostics), r.diagnostics);
  r.file = p.file();
  std::stable_sort(r.diagnostics.begin(), r.diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return std::pair(a.span.line, a.span.column) <
                            std::pair(b.span.line, b.span.column);
                   });
  return r;
}

std::string render(const AstTerm& t) {
  std::string out;
  render_term(out, t);
  return out;
}

std::string render(const TheoryFile& f) {
  std::string out;
  for (const Item& item : f.items) {
    if (auto* d = std::get_if<SignatureDecl>(&item)) {
      out += d->visibility == Visibility::kPublic ? "public " : "private ";
      for (size_t i = 0; i < d->symbols.size(); ++i) {
        if (i) out += ", ";
        out += d->symbols[i].name + "/" + std::to_string(d->symbols[i].arity);
      }
      out += ";\n";
    } else if (auto* v = std::get_if<VariablesDecl>(&item)) {
      out += "variables ";
      for (size_t i = 0; i < v->names.size(); ++i) {
        if (i) out += ", ";
        out += v->names[i];
      }
      out += ";\n";
    } else if (auto* r = std::get_if<RuleDecl>(&item)) {
      out += "rule " + render(r->lhs) + " -> " + render(r->rhs) + ";\n";
    } else if (std::get_if<StratumSeparator>(&item)) {
      out += "---\n";
    } else if (auto* fr = std::get_if<FrameDecl>(&item)) {
      out += "frame " + fr->name + " = {";
      for (size_t i = 0; i < fr->entries.size(); ++i) {
        out += i ? ", " : " ";
        out += fr->entries[i].parameter + " -> " + render(fr->entries[i].term);
      }
      out += fr->entries.empty() ? "};\n" : " };\n";
    } else if (auto* q = std::get_if<QueryDecl>(&item)) {
      switch (q->kind) {
        case QueryKind::kDeducible:
          out += "query deducible " + q->frames[0] + " : " + render(*q->term) + ";\n";
          break;
        case QueryKind::kEquivalent:
          out += "query equivalent " + q->frames[0] + " " + q->frames[1] + ";\n";
          break;
        case QueryKind::kSaturate:
          out += "query saturate " + q->frames[0] + ";\n";
          break;
        case QueryKind::kClassify:
          out += "query classify;\n";
          break;
      }
    }
  }
  return out;
}

const InitialFrame* Program::frame(std::string_view name) const {
  for (const auto& [n, f] : frames) {
    if (n == name) return &f;
  }
  return nullptr;
}

ElaborateResult elaborate(const TheoryFile& f) {
  ElaborateResult res;
  auto& diags = res.diagnostics;
  auto error = [&](Span s, std::string msg) {
    diags.push_back({Severity::kError, s, std::move(msg)});
  };
  Signature sig;

  // Declarations first, so that rules and frames may precede them.
  for (const Item& item : f.items) {
    if (auto* d = std::get_if<SignatureDecl>(&item)) {
      for (const SymbolDecl& s : d->symbols) {
        if (is_parameter_name(s.name, nullptr)) {
          error(s.span, "symbol name '" + s.name + "' is reserved for parameters");
        } else if (sig.find(s.name) || sig.find_variable(s.name)) {
          error(s.span, "duplicate declaration of '" + s.name + "'");
        } else {
          sig.add({s.name, s.arity, d->visibility, SymbolOrigin::kDeclared});
        }
      }
    }
  }
  for (const Item& item : f.items) {
    if (auto* d = std::get_if<VariablesDecl>(&item)) {
      for (const std::string& v : d->names) {
        if (is_parameter_name(v, nullptr)) {
          error(d->span, "variable name '" + v + "' is reserved for parameters");
        } else if (sig.find(v) || sig.find_variable(v)) {
          error(d->span, "duplicate declaration of '" + v + "'");
        } else {
          sig.add_variable(v);
        }
      }
    }
  }

  std::vector<RewriteRule> rules;
  std::vector<Span> rule_spans;
  int stratum = 0;
  TermOptions rule_opts{false, true, false};
  for (const Item& item : f.items) {
    if (std::get_if<StratumSeparator>(&item)) {
      if (!rules.empty() && rules.back().stratum == stratum) ++stratum;
      continue;
    }
    auto* r = std::get_if<RuleDecl>(&item);
    if (!r) continue;
    TermBuilder b(sig, rule_opts, diags);
    auto lhs = b.build(r->lhs);
    auto rhs = b.build(r->rhs);
    if (!lhs || !rhs) continue;
    RewriteRule rule{*lhs, *rhs, stratum};
    auto problems = check_rule_wellformed(rule, rules.size(), sig);
    if (!problems.empty()) {
      for (const RuleDiagnostic& p : problems) error(r->span, p.message);
      continue;
    }
    rules.push_back(rule);
    rule_spans.push_back(r->span);
  }

  Program prog;
  std::set<std::string> frame_names;
  TermOptions ground_opts{false, false, true};
  for (const Item& item : f.items) {
    auto* fr = std::get_if<FrameDecl>(&item);
    if (!fr) continue;
    if (!frame_names.insert(fr->name).second) {
      error(fr->span, "duplicate frame '" + fr->name + "'");
      continue;
    }
    InitialFrame phi;
    bool ok = true;
    for (const FrameEntry& e : fr->entries) {
      uint32_t w = 0;
      if (!is_parameter_name(e.parameter, &w)) {
        error(e.span, "frame keys must be parameters w1, w2, ..., found '" + e.parameter + "'");
        ok = false;
        continue;
      }
      TermBuilder b(sig, ground_opts, diags);
      auto t = b.build(e.term);
      if (!t) {
        ok = false;
        continue;
      }
      if (phi.find(w)) {
        error(e.span, "duplicate parameter " + e.parameter + " in frame '" + fr->name + "'");
        ok = false;
        continue;
      }
      phi.add(w, *t);
    }
    if (ok) prog.frames.emplace_back(fr->name, std::move(phi));
  }

  for (const Item& item : f.items) {
    auto* q = std::get_if<QueryDecl>(&item);
    if (!q) continue;
    Query out;
    out.kind = q->kind;
    out.frames = q->frames;
    out.span = q->span;
    bool ok = true;
    for (const std::string& name : q->frames) {
      if (!frame_names.count(name)) {
        error(q->span, "unknown frame '" + name + "'");
        ok = false;
      }
    }
    if (q->term) {
      TermBuilder b(sig, ground_opts, diags);
      auto t = b.build(*q->term);
      if (!t) ok = false;
      out.term = t;
    }
    if (ok) prog.queries.push_back(std::move(out));
  }

  if (has_errors(diags)) return res;
  try {
    prog.theory = Theory::build(std::move(sig), RewriteSystem(std::move(rules)));
  } catch (const std::exception& e) {
    error(Span{1, 1}, e.what());
    return res;
  }
  res.program = std::move(prog);
  return res;
}

ElaborateResult load(std::string_view text) {
  ParseResult p = parse(text);
  if (!p.ok()) return ElaborateResult{std::nullopt, std::move(p.diagnostics)};
  ElaborateResult e = elaborate(p.file);
  p.diagnostics.insert(p.diagnostics.end(), e.diagnostics.begin(), e.diagnostics.end());
  e.diagnostics = std::move(p.diagnostics);
  return e;
}

std::optional<Term> parse_term(std::string_view text, Signature& sig, const TermOptions& opts,
                               std::vector<Diagnostic>& diags) {
  std::vector<Token> toks = lex(text, diags);
  if (has_errors(diags)) return std::nullopt;
  Parser p(std::move(toks), diags);
  AstTerm ast;
  try {
    ast = p.single_term();
  } catch (const SyntaxError& e) {
    diags.push_back({Severity::kError, e.span, e.message});
    return std::nullopt;
  }
  TermBuilder b(sig, opts, diags);
  return b.build(ast);
}

}  // namespace knowsat::dsl

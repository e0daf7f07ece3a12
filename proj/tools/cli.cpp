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

#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "knowsat/bench.hpp"
#include "knowsat/decide.hpp"
#include "knowsat/dsl.hpp"
#include "knowsat/layered.hpp"
#include "knowsat/oracle.hpp"
#include "knowsat/saturate.hpp"

namespace knowsat::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr size_t kPartialLimit = 32;

struct Settings {
  size_t max_steps = 50000;
  bool trace = false;
  bool json = false;
  bool assert_soundness = false;
  bool check_convergence = false;
};

struct Tally {
  bool failed = false;
  bool indeterminate = false;
  bool violation = false;

  int code() const {
    if (violation) return kViolation;
    if (failed) return kFailed;
    if (indeterminate) return kIndeterminate;
    return kOk;
  }
};

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

json stats_json(const SaturationStats& s) {
  return json{{"strict_steps", s.strict_steps},
              {"init_equations", s.init_equations},
              {"a1", s.a1},
              {"a2", s.a2},
              {"a3_deferrals", s.a3_deferrals},
              {"b1", s.b1},
              {"b2", s.b2},
              {"instances_discovered", s.instances_discovered},
              {"instances_applied", s.instances_applied},
              {"image_subterms", s.image_subterms},
              {"soundness_checks", s.soundness_checks}};
}

// Runs queries against one elaborated file and collects text and JSON.
class Session {
 public:
  Session(const dsl::Program& prog, const Settings& s, std::ostream& trace_out)
      : prog_(prog), th_(prog.theory), settings_(s), trace_out_(trace_out) {}

  const Tally& tally() const { return tally_; }
  const std::string& text() const { return text_; }
  json& results() { return results_; }

  void convergence() {
    ConvergenceReport r = lint_convergence(th_.rules, th_.signature);
    const Signature& sig = th_.signature;
    text_ += "convergence: " + to_string(r.verdict) + "\n";
    json pairs = json::array();
    for (const CriticalPair& p : r.pairs) {
      if (p.joinable) continue;
      std::string line = "rules #" + std::to_string(p.outer_rule + 1) + "/#" +
                         std::to_string(p.inner_rule + 1) + " at " +
                         position_to_string(p.position) + ": " + to_string(p.left, sig) +
                         " vs " + to_string(p.right, sig) +
                         (p.inconclusive ? " (budget exhausted)" : " (not joinable)");
      text_ += "  " + line + "\n";
      pairs.push_back(line);
    }
    results_.push_back(
        json{{"kind", "convergence"}, {"verdict", to_string(r.verdict)}, {"pairs", pairs}});
  }

  void query(const dsl::Query& q) {
    switch (q.kind) {
      case dsl::QueryKind::kDeducible:
        deducible(q.frames[0], *q.term);
        break;
      case dsl::QueryKind::kEquivalent:
        equivalent(q.frames[0], q.frames[1]);
        break;
      case dsl::QueryKind::kSaturate:
        saturate_frame(q.frames[0]);
        break;
      case dsl::QueryKind::kClassify:
        classify();
        break;
    }
  }

  void deducible(const std::string& name, const Term& t) {
    const Signature& sig = th_.signature;
    const SaturationResult& s = saturated(name);
    DeductionVerdict v = deducible_in(s, th_, *prog_.frame(name), t);
    std::string head = "deducible " + name + " : " + to_string(t, sig) + ": ";
    json j{{"kind", "deducible"},
           {"frame", name},
           {"term", to_string(t, sig)},
           {"answer", to_string(v.answer)}};
    switch (v.answer) {
      case DeductionAnswer::kYes:
        text_ += head + "YES, recipe " + to_string(*v.recipe, sig) + "\n";
        j["recipe"] = to_string(*v.recipe, sig);
        break;
      case DeductionAnswer::kNo:
        text_ += head + "NO\n";
        break;
      case DeductionAnswer::kFailed:
      case DeductionAnswer::kIndeterminate:
        text_ += head + upper(to_string(v.answer)) + ", " + v.diagnostic + "\n";
        j["diagnostic"] = v.diagnostic;
        note(v.answer == DeductionAnswer::kFailed);
        break;
    }
    j["stats"] = stats_json(v.stats);
    results_.push_back(std::move(j));
  }

  void equivalent(const std::string& a, const std::string& b) {
    const Signature& sig = th_.signature;
    const InitialFrame& phi1 = *prog_.frame(a);
    const InitialFrame& phi2 = *prog_.frame(b);
    std::string head = "equivalent " + a + " " + b + ": ";
    json j{{"kind", "equivalent"}, {"frames", {a, b}}};
    if (phi1.domain() != phi2.domain()) {
      text_ += head + "NO, frames have different domains\n";
      j["answer"] = "inequivalent";
      j["diagnostic"] = "frames have different domains";
      results_.push_back(std::move(j));
      return;
    }
    EquivalenceVerdict v =
        equivalent_from(saturated(a), saturated(b), th_, phi1, phi2, kDefaultNormalizeCap);
    j["answer"] = to_string(v.answer);
    switch (v.answer) {
      case EquivalenceAnswer::kEquivalent:
        text_ += head + "YES\n";
        break;
      case EquivalenceAnswer::kInequivalent: {
        const EquivalenceWitness& w = *v.witness;
        std::string eq = to_string(w.equation, sig);
        text_ += head + "NO, witness " + eq;
        if (w.equation.bound_count > 0) {
          text_ += ", test " + to_string(w.ground_lhs, sig) + " ~ " + to_string(w.ground_rhs, sig);
        }
        text_ += "\n";
        j["witness"] = json{{"equation", eq},
                            {"holds_in", w.origin == 0 ? a : b},
                            {"test_lhs", to_string(w.ground_lhs, sig)},
                            {"test_rhs", to_string(w.ground_rhs, sig)}};
        break;
      }
      case EquivalenceAnswer::kFailed:
      case EquivalenceAnswer::kIndeterminate:
        text_ += head + upper(to_string(v.answer)) + ", " + v.diagnostic + "\n";
        j["diagnostic"] = v.diagnostic;
        note(v.answer == EquivalenceAnswer::kFailed);
        break;
    }
    j["stats"] = json::array({stats_json(v.stats[0]), stats_json(v.stats[1])});
    results_.push_back(std::move(j));
  }

  void saturate_frame(const std::string& name) {
    const Signature& sig = th_.signature;
    const SaturationResult& s = saturated(name);
    json j{{"kind", "saturate"}, {"frame", name}, {"status", to_string(s.status)}};
    text_ += "saturate " + name + ": " + upper(to_string(s.status));
    if (!s.diagnostic.empty()) text_ += ", " + s.diagnostic;
    text_ += "\n";
    // A state that is not saturated can grow without bound; show a prefix.
    size_t limit = s.saturated() ? SIZE_MAX : kPartialLimit;
    size_t omitted = 0;
    json facts = json::array();
    for (const DeductionFact& f : s.frame.sorted()) {
      if (facts.size() == limit) {
        ++omitted;
        continue;
      }
      text_ += "  " + to_string(f, sig) + "\n";
      facts.push_back(json{{"recipe", to_string(f.recipe, sig)}, {"term", to_string(f.term, sig)}});
    }
    json eqs = json::array();
    for (const QuantifiedEquation& e : s.frame_equations()) {
      if (eqs.size() == limit) {
        ++omitted;
        continue;
      }
      text_ += "  " + to_string(e, sig) + "\n";
      eqs.push_back(to_string(e, sig));
    }
    json theory = json::array();
    for (const QuantifiedEquation& e : s.theory_equations()) {
      text_ += "  theory " + to_string(e, sig) + "\n";
      theory.push_back(to_string(e, sig));
    }
    if (omitted) text_ += "  ... " + std::to_string(omitted) + " more omitted\n";
    j["omitted"] = omitted;
    j["facts"] = facts;
    j["equations"] = eqs;
    j["theory_equations"] = theory;
    if (!s.diagnostic.empty()) j["diagnostic"] = s.diagnostic;
    j["stats"] = stats_json(s.stats);
    if (s.status == SaturationStatus::kFailed) note(true);
    if (s.status == SaturationStatus::kIndeterminate) note(false);
    results_.push_back(std::move(j));
  }

  void classify() {
    LayeredReport r = check_layered(th_);
    const Signature& sig = th_.signature;
    std::string body = render(r, th_);
    text_ += "classify: " + body;
    json ev = json::array();
    for (const DecompositionEvidence& e : r.evidence) {
      json x{{"rule", e.rule + 1},
             {"stratum", e.stratum},
             {"decomposition", describe(e.decomposition, sig)}};
      switch (e.kind) {
        case EvidenceKind::kVariableCondition:
          x["condition"] = "i";
          break;
        case EvidenceKind::kContext:
          x["condition"] = "ii";
          x["context"] = to_string(*e.context, sig);
          break;
        case EvidenceKind::kNone:
          x["condition"] = "none";
          x["note"] = e.note;
          break;
        case EvidenceKind::kInconclusive:
          x["condition"] = "inconclusive";
          x["note"] = e.note;
          break;
      }
      ev.push_back(std::move(x));
    }
    results_.push_back(json{{"kind", "classify"},
                            {"verdict", to_string(r.verdict)},
                            {"weakly_subterm", r.weakly_subterm},
                            {"evidence", ev}});
  }

  // Differential run of the engine against bounded recipe enumeration.
  void oracle_frame(const std::string& name, const RecipeBudget& b) {
    const Signature& sig = th_.signature;
    const InitialFrame& phi = *prog_.frame(name);
    const SaturationResult& s = saturated(name);
    json j{{"kind", "oracle-frame"}, {"frame", name}, {"status", to_string(s.status)}};
    std::string head = "oracle frame " + name + ": ";
    if (!s.saturated()) {
      text_ += head + "skipped, saturation " + to_string(s.status) + "\n";
      results_.push_back(std::move(j));
      return;
    }
    OracleEnumeration e = oracle_enumerate(th_, phi, b);
    json violations = json::array();
    for (const OracleValue& v : e.values) {
      DeductionVerdict d = deducible_in(s, th_, phi, v.value);
      if (d.answer != DeductionAnswer::kYes) {
        std::string line = to_string(v.value, sig) + " (recipe " + to_string(v.recipe, sig) +
                           ") answered " + to_string(d.answer);
        text_ += "  DISAGREE " + line + "\n";
        violations.push_back(line);
        tally_.violation = true;
      }
    }
    text_ += head + std::to_string(e.values.size()) + " values" +
             (e.inconclusive ? " (budget reached)" : "") + ", " +
             std::to_string(violations.size()) + " disagreements\n";
    j["values"] = e.values.size();
    j["inconclusive"] = e.inconclusive;
    j["violations"] = violations;
    results_.push_back(std::move(j));
  }

  void oracle_query(const dsl::Query& q, const RecipeBudget& b) {
    const Signature& sig = th_.signature;
    if (q.kind == dsl::QueryKind::kDeducible) {
      const std::string& name = q.frames[0];
      const SaturationResult& s = saturated(name);
      DeductionVerdict v = deducible_in(s, th_, *prog_.frame(name), *q.term);
      OracleDeduction o = oracle_deducible(th_, *prog_.frame(name), *q.term, b);
      std::string head = "oracle deducible " + name + " : " + to_string(*q.term, sig) + ": ";
      std::string engine = to_string(v.answer);
      std::string oracle = o.recipe ? "found " + to_string(*o.recipe, sig)
                                    : (o.inconclusive ? "not found (budget reached)"
                                                      : "not found within depth");
      bool disagree = o.recipe && v.answer == DeductionAnswer::kNo;
      if (disagree) tally_.violation = true;
      text_ += head + (disagree ? "DISAGREE" : "agree") + ", engine " + engine + ", oracle " +
               oracle + "\n";
      results_.push_back(json{{"kind", "oracle-deducible"},
                              {"frame", name},
                              {"term", to_string(*q.term, sig)},
                              {"engine", engine},
                              {"oracle", oracle},
                              {"agree", !disagree}});
    } else if (q.kind == dsl::QueryKind::kEquivalent) {
      const std::string& a = q.frames[0];
      const std::string& c = q.frames[1];
      const InitialFrame& phi1 = *prog_.frame(a);
      const InitialFrame& phi2 = *prog_.frame(c);
      if (phi1.domain() != phi2.domain()) return;
      EquivalenceVerdict v = equivalent_from(saturated(a), saturated(c), th_, phi1, phi2);
      OracleDistinction o = oracle_distinguish(th_, phi1, phi2, b);
      std::string engine = to_string(v.answer);
      std::string oracle = o.test ? "test " + to_string(o.test->first, sig) + " ~ " +
                                        to_string(o.test->second, sig)
                                  : (o.inconclusive ? "no test (budget reached)"
                                                    : "no test within depth");
      bool disagree = o.test && v.answer == EquivalenceAnswer::kEquivalent;
      if (disagree) tally_.violation = true;
      text_ += "oracle equivalent " + a + " " + c + ": " + (disagree ? "DISAGREE" : "agree") +
               ", engine " + engine + ", oracle " + oracle + "\n";
      results_.push_back(json{{"kind", "oracle-equivalent"},
                              {"frames", {a, c}},
                              {"engine", engine},
                              {"oracle", oracle},
                              {"agree", !disagree}});
    }
  }

 private:
  SaturationOptions options() {
    SaturationOptions o;
    o.max_steps = settings_.max_steps;
    o.assert_soundness = settings_.assert_soundness;
    if (settings_.trace) {
      o.trace = [this](const TraceEvent& e) { trace_out_ << render_trace(e, th_) << "\n"; };
    }
    return o;
  }

  const SaturationResult& saturated(const std::string& name) {
    auto it = cache_.find(name);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(name, saturate(th_, *prog_.frame(name), options())).first->second;
  }

  void note(bool failed) {
    if (failed) {
      tally_.failed = true;
    } else {
      tally_.indeterminate = true;
    }
  }

  const dsl::Program& prog_;
  const Theory& th_;
  Settings settings_;
  std::ostream& trace_out_;
  std::map<std::string, SaturationResult> cache_;
  Tally tally_;
  std::string text_;
  json results_ = json::array();
};

std::optional<dsl::Program> load_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot read " << path << "\n";
    return std::nullopt;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  dsl::ElaborateResult r = dsl::load(buf.str());
  for (const dsl::Diagnostic& d : r.diagnostics) err << dsl::format(d, path) << "\n";
  return std::move(r.program);
}

int emit(const std::string& command, const std::string& file, Session& s, const Settings& st,
         std::ostream& out) {
  int code = s.tally().code();
  if (st.json) {
    json doc{{"command", command}};
    if (!file.empty()) doc["file"] = file;
    doc["results"] = s.results();
    doc["exit_code"] = code;
    out << doc.dump(2) << "\n";
  } else {
    out << s.text();
  }
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deducibility and static equivalence modulo convergent rewrite systems",
               "knowsat"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings st;
  app.add_option("--max-steps", st.max_steps, "Saturation step budget")->capture_default_str();
  app.add_flag("--trace", st.trace, "Print every strict rule application");
  app.add_flag("--json", st.json, "Machine-readable output");
  app.add_flag("--debug-assert-soundness", st.assert_soundness,
               "Verify every added fact and equation by normalization");
  app.add_flag("--check-convergence", st.check_convergence,
               "Report critical pairs that are not joinable");

  std::string file;
  std::string frame;
  RecipeBudget budget;
  std::vector<unsigned> sizes;
  bool emit_source = false;

  CLI::App* check = app.add_subcommand("check", "Answer every query in a theory file");
  check->add_option("file", file, "Theory file")->required();
  CLI::App* sat = app.add_subcommand("saturate", "Print the saturated state of a frame");
  sat->add_option("file", file, "Theory file")->required();
  sat->add_option("--frame", frame, "Frame name")->required();
  CLI::App* cls = app.add_subcommand("classify", "Layered-theory report");
  cls->add_option("file", file, "Theory file")->required();
  CLI::App* orc = app.add_subcommand("oracle", "Differential run against recipe enumeration");
  orc->add_option("file", file, "Theory file")->required();
  orc->add_option("--depth", budget.max_depth, "Recipe depth")->capture_default_str();
  orc->add_option("--cap", budget.enumeration_cap, "Enumeration cap")->capture_default_str();
  CLI::App* bench = app.add_subcommand("bench", "Nested-encryption benchmark frames");
  bench->add_option("--n", sizes, "Nesting depths")->required()->delimiter(',');
  bench->add_flag("--emit", emit_source, "Print the theory file instead of checking");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kInputError;
  }

  std::ostream& trace_out = st.json ? err : out;
  try {
    if (*bench) {
      if (emit_source) {
        for (unsigned n : sizes) out << benchmark_source(n);
        return kOk;
      }
      Theory th = encryption_theory();
      dsl::Program prog;
      for (unsigned n : sizes) {
        std::string suffix = std::to_string(n);
        prog.frames.emplace_back("phi" + suffix, gen_benchmark(th.signature, n, 0));
        prog.frames.emplace_back("phiprime" + suffix, gen_benchmark(th.signature, n, 1));
      }
      prog.theory = std::move(th);
      Session s(prog, st, trace_out);
      for (unsigned n : sizes) {
        std::string suffix = std::to_string(n);
        s.equivalent("phi" + suffix, "phiprime" + suffix);
      }
      return emit("bench", "", s, st, out);
    }

    auto prog = load_file(file, err);
    if (!prog) return kInputError;
    Session s(*prog, st, trace_out);
    if (st.check_convergence) s.convergence();
    if (*check) {
      for (const dsl::Query& q : prog->queries) s.query(q);
      return emit("check", file, s, st, out);
    }
    if (*sat) {
      if (!prog->frame(frame)) {
        err << "error: unknown frame '" << frame << "'\n";
        return kInputError;
      }
      s.saturate_frame(frame);
      return emit("saturate", file, s, st, out);
    }
    if (*cls) {
      s.classify();
      return emit("classify", file, s, st, out);
    }
    if (*orc) {
      for (const auto& [name, phi] : prog->frames) s.oracle_frame(name, budget);
      for (const dsl::Query& q : prog->queries) s.oracle_query(q, budget);
      return emit("oracle", file, s, st, out);
    }
  } catch (const SoundnessError& e) {
    err << "soundness violation: " << e.what() << "\n";
    return kViolation;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace knowsat::cli

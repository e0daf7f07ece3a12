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

#ifndef KNOWSAT_SATURATE_HPP_
#define KNOWSAT_SATURATE_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "knowsat/theory.hpp"

namespace knowsat {

struct DeductionFact {
  Term recipe;
  Term term;

  friend bool operator==(const DeductionFact&, const DeductionFact&) = default;
};

// forall z1..zq. lhs ~ rhs. Bound variables are renamed z1, z2, ... by first
// occurrence and the larger side (in term order) is on the left.
struct QuantifiedEquation {
  uint32_t bound_count = 0;
  Term lhs;
  Term rhs;

  static QuantifiedEquation make(const Term& a, const Term& b);
  bool is_tautology() const { return lhs == rhs; }
  // No parameters: a consequence of the theory alone.
  bool is_theory_equation() const {
    return !lhs.has_parameters() && !rhs.has_parameters();
  }

  friend bool operator==(const QuantifiedEquation&, const QuantifiedEquation&) = default;
};

std::strong_ordering compare(const QuantifiedEquation& a, const QuantifiedEquation& b);
std::string to_string(const QuantifiedEquation& e, const Signature& sig);
std::string to_string(const DeductionFact& f, const Signature& sig);

// Ground deduction facts, one recipe per term.
class Frame {
 public:
  const std::vector<DeductionFact>& facts() const { return facts_; }
  size_t size() const { return facts_.size(); }
  const Term* recipe_for(const Term& t) const;
  // Returns false if the term is already carried.
  bool add(DeductionFact f);
  // Facts sorted by recipe.
  std::vector<DeductionFact> sorted() const;

 private:
  std::vector<DeductionFact> facts_;
  TermMap<size_t> index_;
};

// Recipe for t built from facts and public symbols, preferring a direct fact
// at each node. Public constants are deducible by themselves.
std::optional<Term> syntactic_deduce(const Frame& facts, const Term& t,
                                     const Signature& sig);

// Normalizes t, then deduces syntactically; bound variables deduce themselves.
std::optional<Term> ctx(const Frame& facts, const Term& t, const Theory& th,
                        Normalizer& norm);

enum class SaturationStatus { kLive, kSaturated, kFailed, kIndeterminate };
std::string to_string(SaturationStatus s);

enum class RuleName { kInit, kA1, kA2, kA3, kB1, kB2 };
std::string to_string(RuleName r);

struct TraceEvent {
  RuleName rule = RuleName::kInit;
  // Rewrite rule and decomposition indices for A rules.
  size_t rewrite_rule = 0;
  size_t decomposition = 0;
  std::vector<Term> premises;
  std::optional<DeductionFact> fact;
  std::optional<QuantifiedEquation> equation;
  Term reduct;
};

std::string render_trace(const TraceEvent& e, const Theory& th);

struct SaturationOptions {
  size_t max_steps = 50000;
  size_t normalize_cap = kDefaultNormalizeCap;
  bool assert_soundness = false;
  std::function<void(const TraceEvent&)> trace;
};

struct SaturationStats {
  size_t strict_steps = 0;
  size_t init_equations = 0;
  size_t a1 = 0;
  size_t a2 = 0;
  size_t a3_deferrals = 0;
  size_t b1 = 0;
  size_t b2 = 0;
  size_t instances_discovered = 0;
  size_t instances_applied = 0;
  // Distinct subterms of the frame image.
  size_t image_subterms = 0;
  size_t soundness_checks = 0;
};

class SoundnessError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct AInstance {
  size_t rule = 0;
  size_t decomposition = 0;
  // t1..t_{n+p}: matched cores, then images of the bound variables.
  std::vector<Term> terms;
  Substitution sigma;
};

enum class AOutcome { kEquation, kFact, kDuplicate, kDeferred };

struct SaturationResult {
  SaturationStatus status = SaturationStatus::kLive;
  Frame frame;
  // In insertion order.
  std::vector<QuantifiedEquation> equations;
  std::string diagnostic;
  SaturationStats stats;

  bool saturated() const { return status == SaturationStatus::kSaturated; }
  // Equations mentioning parameters, sorted.
  std::vector<QuantifiedEquation> frame_equations() const;
  std::vector<QuantifiedEquation> theory_equations() const;
};

class Saturation {
 public:
  // Computes Init. Throws InputError on a bad frame.
  Saturation(const Theory& th, const InitialFrame& phi, SaturationOptions opts = {});
  ~Saturation();
  Saturation(const Saturation&) = delete;
  Saturation& operator=(const Saturation&) = delete;

  SaturationStatus status() const;
  const Frame& frame() const;
  const std::vector<QuantifiedEquation>& equations() const;
  const SaturationStats& stats() const;
  const std::string& diagnostic() const;

  // Runs syntactic rules to a fixpoint; returns strict steps taken.
  size_t apply_b_fixpoint();
  // Queued context-reduction instances, FIFO order.
  std::vector<AInstance> pending() const;
  std::vector<AInstance> deferred() const;
  AOutcome apply_a_instance(const AInstance& inst);
  // One B fixpoint and one A instance. False once no longer live.
  bool step();
  SaturationResult run();
  SaturationResult result() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

SaturationResult saturate(const Theory& th, const InitialFrame& phi,
                          const SaturationOptions& opts = {});

}  // namespace knowsat

#endif  // KNOWSAT_SATURATE_HPP_

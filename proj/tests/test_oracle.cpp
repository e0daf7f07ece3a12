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

#include <gtest/gtest.h>

#include <set>

#include "knowsat/oracle.hpp"
#include "support.hpp"

namespace knowsat {
namespace {

using testing::parse;

class OracleTest : public ::testing::Test {
 protected:
  OracleTest() : prog_(testing::load_program("e_enc_ex34.th")) {}
  Signature& sig() { return prog_.theory.signature; }
  const Theory& th() { return prog_.theory; }
  const InitialFrame& frame(const char* name) { return *prog_.frame(name); }
  Term p(const std::string& s) { return parse(sig(), s); }
  RecipeBudget depth(unsigned d) {
    RecipeBudget b;
    b.max_depth = d;
    return b;
  }

  dsl::Program prog_;
};

TEST_F(OracleTest, DeducesPublicConstant) {
  auto r = oracle_deducible(th(), frame("phi0"), p("c0"), depth(3));
  ASSERT_TRUE(r.recipe);
  ParameterInstantiator inst(frame("phi0").table());
  EXPECT_EQ(normalize(inst(*r.recipe), th().rules), p("c0"));
}

// A signature small enough for exhaustive enumeration at depth 3.
TEST_F(OracleTest, SecretStaysSecret) {
  auto small = dsl::load(
      "public enc/2, dec/2; private s/0, k/0; variables x, y;\n"
      "rule dec(enc(x,y),y) -> x;\n"
      "frame phi = { w1 -> enc(s,k) };\n");
  ASSERT_TRUE(small.program);
  const Theory& t = small.program->theory;
  RecipeBudget b = depth(3);
  b.fresh_constants = 0;
  auto r = oracle_deducible(t, *small.program->frame("phi"),
                            Term::constant(*t.signature.find("s")), b);
  EXPECT_FALSE(r.inconclusive);
  EXPECT_FALSE(r.recipe);
  auto e = oracle_enumerate(t, *small.program->frame("phi"), b);
  EXPECT_FALSE(e.inconclusive);
  // w1, enc(w1,w1), dec(w1,w1) and so on; none of them is the secret or the key.
  EXPECT_GT(e.values.size(), 100u);
  for (const OracleValue& v : e.values) {
    EXPECT_NE(to_string(v.value, t.signature), "s");
    EXPECT_NE(to_string(v.value, t.signature), "k");
  }
}

TEST_F(OracleTest, EmptyFrameDeducesNoPrivateConstant) {
  for (unsigned d = 0; d <= 3; ++d) {
    auto r = oracle_deducible(th(), InitialFrame(), p("k"), depth(d));
    EXPECT_FALSE(r.recipe);
  }
}

TEST_F(OracleTest, DistinguishesKeyedFrames) {
  auto r = oracle_distinguish(th(), frame("phi0"), frame("phi1"), depth(3));
  ASSERT_TRUE(r.test);
  ParameterInstantiator i0(frame("phi0").table());
  ParameterInstantiator i1(frame("phi1").table());
  auto [m, n] = *r.test;
  bool eq0 = normalize(i0(m), th().rules) == normalize(i0(n), th().rules);
  bool eq1 = normalize(i1(m), th().rules) == normalize(i1(n), th().rules);
  EXPECT_NE(eq0, eq1);
}

TEST_F(OracleTest, FindsTestAtDepthOne) {
  // Depth 0 only offers w1, w2 and constants, whose values are pairwise
  // distinct on both frames.
  auto r0 = oracle_distinguish(th(), frame("phi0"), frame("phi1"), depth(0));
  EXPECT_FALSE(r0.test);
  auto r1 = oracle_distinguish(th(), frame("phi0"), frame("phi1"), depth(1));
  ASSERT_TRUE(r1.test);
  // dec is declared before enc, so decryption is enumerated first.
  std::set<std::string> sides{to_string(r1.test->first, sig()), to_string(r1.test->second, sig())};
  EXPECT_EQ(sides, (std::set<std::string>{"c0", "dec(w1,w2)"}));
}

TEST_F(OracleTest, ReencryptionIsAlsoATest) {
  ParameterInstantiator i0(frame("phi0").table());
  ParameterInstantiator i1(frame("phi1").table());
  Term m = p("enc(c0,w2)");
  Term n = p("w1");
  EXPECT_EQ(normalize(i0(m), th().rules), normalize(i0(n), th().rules));
  EXPECT_NE(normalize(i1(m), th().rules), normalize(i1(n), th().rules));
}

TEST_F(OracleTest, ReflexiveFramesAreNotDistinguished) {
  for (unsigned d = 0; d <= 2; ++d) {
    EXPECT_FALSE(oracle_distinguish(th(), frame("phi0"), frame("phi0"), depth(d)).test);
  }
}

TEST_F(OracleTest, KeylessFramesAreNotDistinguished) {
  auto r = oracle_distinguish(th(), frame("psi0"), frame("psi1"), depth(4));
  EXPECT_FALSE(r.test);
}

TEST_F(OracleTest, CapMakesResultInconclusive) {
  RecipeBudget b = depth(3);
  b.enumeration_cap = 10;
  auto r = oracle_enumerate(th(), frame("phi0"), b);
  EXPECT_TRUE(r.inconclusive);
}

TEST_F(OracleTest, EnumeratedValuesAreConsistent) {
  auto r = oracle_enumerate(th(), frame("phi0"), depth(2));
  ASSERT_FALSE(r.inconclusive);
  ParameterInstantiator inst(frame("phi0").table());
  std::set<const void*> seen;
  for (const OracleValue& v : r.values) {
    EXPECT_TRUE(is_recipe(v.recipe, sig()));
    EXPECT_EQ(normalize(inst(v.recipe), th().rules), v.value);
    EXPECT_TRUE(seen.insert(v.value.identity()).second);
  }
}

}  // namespace
}  // namespace knowsat

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

#ifndef KNOWSAT_BENCH_HPP_
#define KNOWSAT_BENCH_HPP_

#include <string>

#include "knowsat/theory.hpp"

namespace knowsat {

// Pairing and symmetric encryption: dec/enc, pair, proj1, proj2.
Theory encryption_theory();

// {w1 |> t_n, w2 |> c0, w3 |> c1} where t_0 = c_v and
// t_{j+1} = <enc(t_j, k_j), k_j> with private keys kv_j. Adds missing
// constants to sig, which must declare enc/2 and pair/2.
InitialFrame gen_benchmark(Signature& sig, unsigned n, int variant);

// Theory file text with both frames and the equivalence query.
std::string benchmark_source(unsigned n);

}  // namespace knowsat

#endif  // KNOWSAT_BENCH_HPP_

/*
   Copyright 2026 The dpdecomp Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <string>

#include "dpdecomp/dp.hpp"

namespace dpdecomp {

/// Families of seeded random instances used by the property suites.
enum class Suite {
    range_condition,  // every column of B lies in one part
    invertible_A,     // A invertible, B unconstrained
    unconstrained,    // A and B unconstrained
};

std::string to_string(Suite s);

struct RandomInstanceOptions {
    std::uint32_t max_n = 4;
    std::uint32_t max_m = 3;
};

struct GeneratedInstance {
    DPInstance instance;
    DirectSumDecomposition decomposition;
};

/// A = P diag(A_1, ..., A_r) P^{-1} over GF(2) or GF(3) with r >= 2 random
/// blocks, parts spanned by the matching column blocks of P, B injective, and
/// a positive-definite cost that is separable over the parts. The instance
/// depends only on (suite, seed, options); draws use a fixed-width engine and
/// plain modular reduction so the sequence is the same on every platform.
GeneratedInstance random_instance(Suite suite, std::uint64_t seed, const Horizon& h,
                                  const RandomInstanceOptions& opts = {});

}  // namespace dpdecomp

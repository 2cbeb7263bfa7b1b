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

#include "dpdecomp/dp.hpp"

namespace dpdecomp::kernels::detail {

// Per-state bodies shared by the serial and OpenMP loops. Each call touches
// only slot x of its outputs, so the loops over x are embarrassingly parallel
// and both variants perform the same operations in the same order per state.

inline void backup_state(const Transitions& tr, std::size_t x, const std::vector<Rational>& g,
                         const std::vector<Rational>& next_values, const Rational& alpha, std::vector<Rational>& out,
                         std::vector<std::vector<std::uint32_t>>* argmin) {
    const std::uint32_t* row = tr.next.data() + x * tr.num_inputs;
    const Rational* best = &next_values[row[0]];
    for (std::size_t u = 1; u < tr.num_inputs; ++u) {
        const Rational& c = next_values[row[u]];
        if (cmp(c, *best) < 0) best = &c;
    }
    if (argmin) {
        auto& set = (*argmin)[x];
        set.clear();
        for (std::size_t u = 0; u < tr.num_inputs; ++u)
            if (cmp(next_values[row[u]], *best) == 0) set.push_back(static_cast<std::uint32_t>(u));
    }
    out[x] = g[x] + alpha * *best;
}

inline bool improve_state(const Transitions& tr, std::size_t x, const std::vector<Rational>& J,
                          std::vector<std::uint32_t>& policy) {
    const std::uint32_t* row = tr.next.data() + x * tr.num_inputs;
    std::size_t arg = 0;
    for (std::size_t u = 1; u < tr.num_inputs; ++u)
        if (cmp(J[row[u]], J[row[arg]]) < 0) arg = u;
    if (cmp(J[row[arg]], J[row[policy[x]]]) < 0) {
        policy[x] = static_cast<std::uint32_t>(arg);
        return true;
    }
    return false;
}

inline void prepare(const Transitions& tr, std::vector<Rational>& out, std::vector<std::vector<std::uint32_t>>* argmin) {
    out.resize(tr.num_states);
    if (argmin) argmin->resize(tr.num_states);
}

}  // namespace dpdecomp::kernels::detail

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

#include <cstdint>

#include "backup_detail.hpp"

namespace dpdecomp::kernels {

void bellman_backup_parallel(const Transitions& tr, const std::vector<Rational>& g,
                             const std::vector<Rational>& next_values, const Rational& alpha, std::vector<Rational>& out,
                             std::vector<std::vector<std::uint32_t>>* argmin) {
    detail::prepare(tr, out, argmin);
    const auto n = static_cast<std::int64_t>(tr.num_states);
#pragma omp parallel for schedule(static)
    for (std::int64_t x = 0; x < n; ++x)
        detail::backup_state(tr, static_cast<std::size_t>(x), g, next_values, alpha, out, argmin);
}

std::size_t improve_policy_parallel(const Transitions& tr, const std::vector<Rational>& J,
                                    std::vector<std::uint32_t>& policy) {
    const auto n = static_cast<std::int64_t>(tr.num_states);
    std::int64_t changed = 0;
#pragma omp parallel for schedule(static) reduction(+ : changed)
    for (std::int64_t x = 0; x < n; ++x)
        if (detail::improve_state(tr, static_cast<std::size_t>(x), J, policy)) ++changed;
    return static_cast<std::size_t>(changed);
}

}  // namespace dpdecomp::kernels

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

#include "backup_detail.hpp"

namespace dpdecomp::kernels {

void bellman_backup_serial(const Transitions& tr, const std::vector<Rational>& g, const std::vector<Rational>& next_values,
                           const Rational& alpha, std::vector<Rational>& out,
                           std::vector<std::vector<std::uint32_t>>* argmin) {
    detail::prepare(tr, out, argmin);
    for (std::size_t x = 0; x < tr.num_states; ++x) detail::backup_state(tr, x, g, next_values, alpha, out, argmin);
}

std::size_t improve_policy_serial(const Transitions& tr, const std::vector<Rational>& J, std::vector<std::uint32_t>& policy) {
    std::size_t changed = 0;
    for (std::size_t x = 0; x < tr.num_states; ++x)
        if (detail::improve_state(tr, x, J, policy)) ++changed;
    return changed;
}

}  // namespace dpdecomp::kernels

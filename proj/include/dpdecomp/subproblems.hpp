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
#include <vector>

#include "dpdecomp/dp.hpp"

namespace dpdecomp {

enum class Family { restricted, projected };

/// The two families of subproblems attached to one parent instance and one
/// decomposition X = X_1 + ... + X_r. Subproblem i lives on GF(p)^{dim X_i}
/// through the basis of X_i.
struct SubproblemBundle {
    DPInstance parent;
    DirectSumDecomposition decomposition;
    std::vector<Subspace> E;         // E_i = {u : B u in X_i}
    Subspace sum_E;                  // E_1 + ... + E_r (direct)
    Subspace V;                      // greedy complement of sum_E in U
    std::vector<MatrixFp> E_bases;   // m x dim E_i, the inputs of restricted[i]
    std::vector<DPInstance> restricted;
    std::vector<DPInstance> projected;

    // part_state[i][x]: index of the coordinates of rho_i(x) in subproblem i.
    std::vector<std::vector<std::uint32_t>> part_state;
    // embed_state[i][y]: parent state index of the part-i state with coordinates y.
    std::vector<std::vector<std::uint32_t>> embed_state;
    // lift_input[i][v]: parent input index of E_bases[i] * v.
    std::vector<std::vector<std::uint32_t>> lift_input;

    std::size_t size() const noexcept { return decomposition.size(); }
    const std::vector<DPInstance>& family(Family f) const { return f == Family::restricted ? restricted : projected; }
};

/// Throws NotSeparableCost when g is not in G_s for the decomposition, and
/// ShapeError/InvalidInput when the decomposition does not fit the instance.
/// `extension_order` is the unit-vector order used to grow sum_E into U.
SubproblemBundle build_bundle(const DPInstance& inst, const DirectSumDecomposition& d,
                              const std::vector<std::size_t>& extension_order = {});

/// Same bundle with every instance switched to horizon h.
SubproblemBundle with_horizon(const SubproblemBundle& b, const Horizon& h);

std::vector<DPSolution> solve_bundle(const SubproblemBundle& b, Family f, Exec exec = Exec::parallel);

/// selections[i][t][y]: chosen restricted-subproblem input at part state y and
/// stage t (one stage for a discounted horizon). Returns law[t][x], the parent
/// input sum_i lift(selection at rho_i x). Only the restricted family lifts
/// into U; asking for the projected family throws PreconditionFailed.
std::vector<std::vector<std::uint32_t>> lift_policy(const SubproblemBundle& b, Family f,
                                                    const std::vector<std::vector<std::vector<std::uint32_t>>>& selections);

/// Sum over parts of J_i(rho_i x) for one stage of per-part value tables.
std::vector<Rational> summed_values(const SubproblemBundle& b, const std::vector<const std::vector<Rational>*>& part_values);

}  // namespace dpdecomp

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

#include "dpdecomp/subproblems.hpp"

namespace dpdecomp {

namespace {

CostFunction pull_back(const DPInstance& inst, const DirectSumDecomposition& d, std::size_t i,
                       const std::vector<std::uint32_t>& embed) {
    std::vector<Rational> table(embed.size());
    for (std::size_t y = 0; y < embed.size(); ++y) table[y] = inst.cost()(embed[y]);
    const auto check = inst.cost().positive_definite() ? CostCheck::positive_definite : CostCheck::semidefinite;
    return CostFunction::from_table(d.field(), d.part_dim(i), std::move(table), check);
}

}  // namespace

SubproblemBundle build_bundle(const DPInstance& inst, const DirectSumDecomposition& d,
                              const std::vector<std::size_t>& extension_order) {
    if (d.ambient_dim() != inst.n() || !(d.field() == inst.field()))
        throw ShapeError("decomposition does not live on the state space of the instance");
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!is_invariant(inst.A(), d.part(i)))
            throw NotInvariant(i, "part " + std::to_string(i) + " is not A-invariant");
    if (!is_in_Gs(inst.cost(), d))
        throw NotSeparableCost("cost is not separable over the decomposition: g(x) != sum_i g(rho_i x) for some x");

    const auto& f = inst.field();
    const auto& A = inst.A();
    const auto& B = inst.B();
    std::vector<Subspace> E;
    for (std::size_t i = 0; i < d.size(); ++i) E.push_back(preimage(B, d.part(i)));
    Subspace sumE = subspace_sum(E, f, inst.m());
    Subspace V = greedy_complement(sumE, extension_order);

    InstanceOptions sub_opts;
    sub_opts.limits = inst.options().limits;
    InstanceOptions proj_opts = sub_opts;
    proj_opts.require_injective_input = false;

    std::vector<MatrixFp> E_bases;
    std::vector<DPInstance> restricted, projected;
    std::vector<std::vector<std::uint32_t>> part_state(d.size()), embed_state(d.size()), lift_input(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        const MatrixFp C = d.embedding(i);
        const MatrixFp R = d.coordinate_map(i);
        const StateSpace ps(f, d.part_dim(i));
        embed_state[i].resize(ps.size());
        for (std::size_t y = 0; y < ps.size(); ++y)
            embed_state[i][y] = static_cast<std::uint32_t>(inst.states().index(C.apply(ps.vector(y))));
        part_state[i].resize(inst.num_states());
        for (std::size_t x = 0; x < inst.num_states(); ++x)
            part_state[i][x] = static_cast<std::uint32_t>(ps.index(d.part_coordinates(i, inst.states().vector(x))));

        const MatrixFp Ai = R * A * C;
        const MatrixFp& F = E[i].basis();
        E_bases.push_back(F);
        const StateSpace es(f, F.cols());
        lift_input[i].resize(es.size());
        for (std::size_t v = 0; v < es.size(); ++v)
            lift_input[i][v] = static_cast<std::uint32_t>(inst.inputs().index(F.apply(es.vector(v))));

        const CostFunction gi = pull_back(inst, d, i, embed_state[i]);
        restricted.emplace_back(Ai, R * B * F, gi, inst.horizon(), sub_opts);
        projected.emplace_back(Ai, R * B, gi, inst.horizon(), proj_opts);
    }
    return SubproblemBundle{inst,
                            d,
                            std::move(E),
                            std::move(sumE),
                            std::move(V),
                            std::move(E_bases),
                            std::move(restricted),
                            std::move(projected),
                            std::move(part_state),
                            std::move(embed_state),
                            std::move(lift_input)};
}

SubproblemBundle with_horizon(const SubproblemBundle& b, const Horizon& h) {
    SubproblemBundle out = b;
    out.parent = b.parent.with_horizon(h);
    for (auto& r : out.restricted) r = r.with_horizon(h);
    for (auto& p : out.projected) p = p.with_horizon(h);
    return out;
}

std::vector<DPSolution> solve_bundle(const SubproblemBundle& b, Family f, Exec exec) {
    std::vector<DPSolution> out;
    for (const auto& inst : b.family(f)) out.push_back(solve(inst, exec));
    return out;
}

std::vector<std::vector<std::uint32_t>> lift_policy(const SubproblemBundle& b, Family f,
                                                    const std::vector<std::vector<std::vector<std::uint32_t>>>& selections) {
    if (f != Family::restricted)
        throw PreconditionFailed("only restricted-family inputs lie in E_i and lift to the parent input space");
    if (selections.size() != b.size()) throw InvalidInput("need one selection table per part");
    const std::size_t stages = selections.front().size();
    const auto& fld = b.parent.field();
    const auto& U = b.parent.inputs();
    std::vector<std::vector<std::uint32_t>> law(stages, std::vector<std::uint32_t>(b.parent.num_states()));
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (selections[i].size() != stages) throw InvalidInput("selection tables disagree on the number of stages");
        for (const auto& layer : selections[i])
            if (layer.size() != b.restricted[i].num_states()) throw InvalidInput("selection layer has the wrong number of part states");
    }
    for (std::size_t t = 0; t < stages; ++t)
        for (std::size_t x = 0; x < b.parent.num_states(); ++x) {
            VecFp u(b.parent.m(), 0);
            for (std::size_t i = 0; i < b.size(); ++i) {
                const auto v = selections[i][t][b.part_state[i][x]];
                if (v >= b.lift_input[i].size()) throw InvalidInput("selected input index out of range");
                u = vec_add(fld, u, U.vector(b.lift_input[i][v]));
            }
            law[t][x] = static_cast<std::uint32_t>(U.index(u));
        }
    return law;
}

std::vector<Rational> summed_values(const SubproblemBundle& b, const std::vector<const std::vector<Rational>*>& part_values) {
    if (part_values.size() != b.size()) throw InvalidInput("need one value table per part");
    std::vector<Rational> out(b.parent.num_states(), Rational(0));
    for (std::size_t x = 0; x < out.size(); ++x)
        for (std::size_t i = 0; i < b.size(); ++i) out[x] += (*part_values[i])[b.part_state[i][x]];
    return out;
}

}  // namespace dpdecomp

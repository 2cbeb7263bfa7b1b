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

#include <doctest.h>

#include "dpdecomp/random_instances.hpp"
#include "dpdecomp/subproblems.hpp"
#include "worked_examples.hpp"

using namespace dpdecomp;
using namespace testing_support;

namespace {

std::vector<Suite> all_suites() { return {Suite::range_condition, Suite::invertible_A, Suite::unconstrained}; }

// Every u in U with B u in X_i, by enumeration.
std::vector<std::size_t> inputs_into(const DPInstance& inst, const Subspace& part) {
    std::vector<std::size_t> out;
    for (std::size_t u = 0; u < inst.num_inputs(); ++u)
        if (part.contains(inst.B().apply(inst.inputs().vector(u)))) out.push_back(u);
    return out;
}

}  // namespace

TEST_CASE("third example: input spaces, complement and subsystem matrices") {
    const auto b = build_bundle(ex3_instance(Horizon::finite(1)), ex3_decomposition());
    const auto f = gf3();
    REQUIRE(b.E.size() == 3);
    CHECK(b.E[0] == Subspace::span(f, 2, {vec({1, 0})}));
    CHECK(b.E[1].is_zero());
    CHECK(b.E[2].is_zero());
    CHECK(b.V == Subspace::span(f, 2, {vec({0, 1})}));

    CHECK(b.restricted[1].m() == 0);
    CHECK(b.restricted[2].m() == 0);
    CHECK(b.restricted[1].num_inputs() == 1);
    CHECK(b.restricted[0].A() == MatrixFp::from_rows(f, {{1}}));
    CHECK(b.restricted[1].A() == MatrixFp::from_rows(f, {{1}}));
    CHECK(b.restricted[2].A() == MatrixFp::from_rows(f, {{0}}));
    CHECK(b.restricted[0].B() == MatrixFp::from_rows(f, {{1}}));

    CHECK(b.projected[0].B() == MatrixFp::from_rows(f, {{1, 1}}));
    CHECK(b.projected[1].B() == MatrixFp::from_rows(f, {{0, 1}}));
    CHECK(b.projected[2].B() == MatrixFp::from_rows(f, {{0, 1}}));
    for (const auto& p : b.projected) CHECK(p.m() == 2);
}

TEST_CASE("second example: subsystem 2 is the one-dimensional reduced problem") {
    const auto b = build_bundle(ex2_instance(Horizon::finite(1)), ex2_decomposition());
    const auto f = gf3();
    CHECK(b.E[0].is_zero());
    CHECK(b.E[1] == Subspace::span(f, 2, {vec({1, 0})}));
    CHECK(b.E[2].is_zero());
    CHECK(b.restricted[1].A() == MatrixFp::from_rows(f, {{2}}));
    CHECK(b.restricted[1].B() == MatrixFp::from_rows(f, {{1}}));
    CHECK(b.restricted[0].A() == MatrixFp::from_rows(f, {{1}}));
    CHECK(b.restricted[2].A() == MatrixFp::from_rows(f, {{1}}));
    // cost pulled back to X_2 coordinates
    CHECK(b.restricted[1].cost().table() == std::vector<Rational>{0, 1, 2});
    CHECK(b.restricted[0].cost().table() == std::vector<Rational>{0, 0, 0});
    CHECK(b.restricted[1].cost().positive_definite());
    CHECK_FALSE(b.restricted[0].cost().positive_definite());
}

TEST_CASE("third example: restricted values h, 2h, h and projected values h") {
    const auto b = build_bundle(ex3_instance(Horizon::finite(1)), ex3_decomposition());
    const auto restricted = solve_bundle(b, Family::restricted);
    const auto projected = solve_bundle(b, Family::projected);
    const int scale[3] = {1, 2, 1};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::uint32_t y = 0; y < 3; ++y) {
            CHECK(restricted[i].optimal_cost(y) == scale[i] * h(y));
            CHECK(projected[i].optimal_cost(y) == h(y));
        }
}

TEST_CASE("third example: lifted restricted policy is [-x1, 0]") {
    const auto b = build_bundle(ex3_instance(Horizon::finite(1)), ex3_decomposition());
    const auto sols = solve_bundle(b, Family::restricted);
    std::vector<std::vector<std::vector<std::uint32_t>>> sel(3);
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<std::uint32_t> layer;
        for (const auto& set : sols[i].argmin.sets[0]) {
            REQUIRE(set.size() == 1);
            layer.push_back(set[0]);
        }
        sel[i].push_back(layer);
    }
    const auto law = lift_policy(b, Family::restricted, sel);
    const auto f = gf3();
    const auto& inst = b.parent;
    for (std::size_t x = 0; x < inst.num_states(); ++x) {
        const auto xv = inst.states().vector(x);
        CHECK(inst.inputs().vector(law[0][x]) == vec({f.neg(xv[0]), 0}));
    }
    CHECK_THROWS_AS(lift_policy(b, Family::projected, sel), PreconditionFailed);
}

TEST_CASE("lift_policy: zero selections give the zero input, and changes stay local") {
    Rng rng(11);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = random_instance(Suite::unconstrained, seed, Horizon::finite(1));
        const auto b = build_bundle(g.instance, g.decomposition);
        std::vector<std::vector<std::vector<std::uint32_t>>> sel(b.size());
        for (std::size_t i = 0; i < b.size(); ++i)
            sel[i].push_back(std::vector<std::uint32_t>(b.restricted[i].num_states(), 0));
        const auto zero_law = lift_policy(b, Family::restricted, sel);
        CHECK(zero_law[0][0] == 0);
        for (auto u : zero_law[0]) CHECK(u == 0);

        const std::size_t i = rng.below(static_cast<std::uint32_t>(b.size()));
        if (b.restricted[i].num_inputs() < 2) continue;
        const auto y = rng.below(static_cast<std::uint32_t>(b.restricted[i].num_states()));
        sel[i][0][y] = 1;
        const auto law = lift_policy(b, Family::restricted, sel);
        for (std::size_t x = 0; x < b.parent.num_states(); ++x)
            CHECK((law[0][x] != 0) == (b.part_state[i][x] == y));
    }
}

TEST_CASE("build_bundle rejects costs outside G_s and non-invariant parts") {
    const auto f = gf3();
    std::vector<Rational> flat(27, Rational(1));
    flat[0] = 0;
    const DPInstance flat_inst(ex2_A(), ex2_B(), CostFunction::from_table(f, 3, flat), Horizon::finite(1));
    CHECK_THROWS_AS(build_bundle(flat_inst, ex2_decomposition()), NotSeparableCost);

    const DirectSumDecomposition unit({Subspace::span(f, 3, {vec({1, 0, 0})}), Subspace::span(f, 3, {vec({0, 1, 0})}),
                                       Subspace::span(f, 3, {vec({0, 0, 1})})});
    try {
        build_bundle(ex2_instance(Horizon::finite(1)), unit);
        FAIL("expected NotInvariant");
    } catch (const NotInvariant& e) {
        CHECK(e.part() == 1);
    }
}

TEST_CASE("property: bundle structure on random instances") {
    for (auto suite : all_suites())
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            const auto g = random_instance(suite, seed, Horizon::finite(1));
            const auto& inst = g.instance;
            const auto b = build_bundle(inst, g.decomposition);
            const auto& f = inst.field();
            CAPTURE(to_string(suite));
            CAPTURE(seed);

            std::vector<Subspace> with_v = b.E;
            with_v.push_back(b.V);
            CHECK(is_direct_sum(with_v));

            for (std::size_t i = 0; i < b.size(); ++i) {
                const auto& part = g.decomposition.part(i);
                // E_i against an enumeration of {u : B u in X_i}
                const auto into = inputs_into(inst, part);
                CHECK(into.size() == b.restricted[i].num_inputs());
                for (auto u : into) CHECK(b.E[i].contains(inst.inputs().vector(u)));
                for (std::size_t k = 0; k < b.E[i].dim(); ++k) CHECK(part.contains(inst.B().apply(b.E[i].basis_vector(k))));

                CHECK(b.restricted[i].n() == part.dim());
                CHECK(b.restricted[i].m() == b.E[i].dim());
                CHECK(b.projected[i].n() == part.dim());
                CHECK(b.projected[i].m() == inst.m());

                // embed(A_i y + B_i v) = A embed(y) + B lift(v)
                const auto& sub = b.restricted[i];
                for (std::size_t y = 0; y < sub.num_states(); ++y)
                    for (std::size_t v = 0; v < sub.num_inputs(); ++v) {
                        const auto lhs = b.embed_state[i][sub.transitions()(y, v)];
                        const auto rhs = inst.transitions()(b.embed_state[i][y], b.lift_input[i][v]);
                        CHECK(lhs == rhs);
                    }
                // embed(A_i y + rho_i B u) = A embed(y) + rho_i(B u)
                const auto& proj = b.projected[i];
                for (std::size_t y = 0; y < proj.num_states(); ++y)
                    for (std::size_t u = 0; u < proj.num_inputs(); ++u) {
                        const auto ay = inst.A().apply(inst.states().vector(b.embed_state[i][y]));
                        const auto bu = g.decomposition.component(i, inst.B().apply(inst.inputs().vector(u)));
                        CHECK(b.embed_state[i][proj.transitions()(y, u)] == inst.states().index(vec_add(f, ay, bu)));
                    }
                // part_state and embed_state are inverse on X_i
                for (std::size_t y = 0; y < sub.num_states(); ++y) CHECK(b.part_state[i][b.embed_state[i][y]] == y);
                // pulled-back cost
                for (std::size_t y = 0; y < sub.num_states(); ++y)
                    CHECK(sub.cost()(y) == inst.cost()(b.embed_state[i][y]));
            }

            // a different extension order gives another complement of the same sum
            std::vector<std::size_t> rev(inst.m());
            for (std::size_t k = 0; k < rev.size(); ++k) rev[k] = rev.size() - 1 - k;
            const auto alt = build_bundle(inst, g.decomposition, rev);
            CHECK(alt.sum_E == b.sum_E);
            CHECK(subspace_sum(alt.sum_E, alt.V).dim() == inst.m());
        }
}

TEST_CASE("property: the minimum over E_i equals the minimum over the sum of all E_j") {
    for (auto suite : all_suites())
        for (std::uint64_t seed = 100; seed < 130; ++seed) {
            const auto g = random_instance(suite, seed, Horizon::finite(1));
            const auto& inst = g.instance;
            const auto b = build_bundle(inst, g.decomposition);
            std::vector<std::vector<std::size_t>> into;
            for (const auto& part : g.decomposition.parts()) into.push_back(inputs_into(inst, part));
            for (std::size_t i = 0; i < b.size(); ++i)
                for (auto x : b.embed_state[i]) {
                    const auto ax = inst.A().apply(inst.states().vector(x));
                    auto cost_of = [&](const VecFp& u) {
                        return inst.cost()(inst.states().index(vec_add(inst.field(), ax, inst.B().apply(u))));
                    };
                    Rational own = cost_of(inst.inputs().vector(into[i][0]));
                    for (auto u : into[i]) own = std::min(own, cost_of(inst.inputs().vector(u)));
                    // sums of one element from every E_j
                    Rational all = own;
                    std::vector<std::size_t> idx(b.size(), 0);
                    for (;;) {
                        VecFp u(inst.m(), 0);
                        for (std::size_t j = 0; j < b.size(); ++j)
                            u = vec_add(inst.field(), u, inst.inputs().vector(into[j][idx[j]]));
                        all = std::min(all, cost_of(u));
                        std::size_t k = 0;
                        while (k < b.size() && ++idx[k] == into[k].size()) idx[k++] = 0;
                        if (k == b.size()) break;
                    }
                    CHECK(own == all);
                }
        }
}

TEST_CASE("subproblem optimal cost vanishes at the zero part state") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = random_instance(Suite::unconstrained, seed, Horizon::discounted(Rational(1, 2)));
        const auto b = build_bundle(g.instance, g.decomposition);
        for (auto fam : {Family::restricted, Family::projected})
            for (const auto& s : solve_bundle(b, fam)) CHECK(s.optimal_cost(0) == 0);
    }
}

TEST_CASE("with_horizon switches every instance; summed_values checks its arity") {
    const auto b = build_bundle(ex3_instance(Horizon::finite(1)), ex3_decomposition());
    const auto b3 = with_horizon(b, Horizon::finite(3));
    CHECK(b3.parent.horizon().T() == 3);
    for (const auto& r : b3.restricted) CHECK(r.horizon().T() == 3);
    for (const auto& p : b3.projected) CHECK(p.horizon().T() == 3);
    CHECK_THROWS_AS(summed_values(b, {}), InvalidInput);
}

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

#include <functional>

#include "dpdecomp/dp.hpp"
#include "support.hpp"

using namespace dpdecomp;
using namespace testing_support;

namespace {

std::vector<Rational> random_cost_table(Rng& rng, PrimeField f, std::size_t n) {
    const StateSpace s(f, n);
    std::vector<Rational> t(s.size());
    for (std::size_t x = 1; x < s.size(); ++x) t[x] = Rational(rng.below(9) + 1, rng.below(3) + 1);
    return t;
}

DPInstance random_instance(Rng& rng, PrimeField f, std::size_t n, std::size_t m, Horizon h) {
    MatrixFp b(f, n, m);
    do b = random_matrix(rng, f, n, m);
    while (rank(b) != m);
    return DPInstance(random_matrix(rng, f, n, n), b, CostFunction::from_table(f, n, random_cost_table(rng, f, n)), h);
}

// min over every open-loop input sequence, by enumeration.
Rational openloop_oracle(const DPInstance& inst, std::size_t x0) {
    const std::size_t T = inst.horizon().T();
    std::vector<std::uint32_t> seq(T, 0);
    Rational best = inst.cost()(x0) * 1000000;
    for (;;) {
        best = std::min(best, evaluate_openloop(inst, x0, seq));
        std::size_t k = 0;
        while (k < T && ++seq[k] == inst.num_inputs()) seq[k++] = 0;
        if (k == T) break;
    }
    return best;
}

// Solves (I - alpha P_sigma) J = g exactly by Gauss-Jordan over the rationals.
std::vector<Rational> policy_value_oracle(const DPInstance& inst, const std::vector<std::uint32_t>& policy) {
    const std::size_t N = inst.num_states();
    const Rational alpha = inst.horizon().alpha();
    std::vector<std::vector<Rational>> M(N, std::vector<Rational>(N + 1, Rational(0)));
    for (std::size_t x = 0; x < N; ++x) {
        M[x][x] += 1;
        M[x][inst.transitions()(x, policy[x])] -= alpha;
        M[x][N] = inst.cost()(x);
    }
    for (std::size_t c = 0; c < N; ++c) {
        std::size_t piv = c;
        while (M[piv][c] == 0) ++piv;
        std::swap(M[piv], M[c]);
        const Rational inv = Rational(1) / M[c][c];
        for (auto& e : M[c]) e *= inv;
        for (std::size_t r = 0; r < N; ++r) {
            if (r == c || M[r][c] == 0) continue;
            const Rational k = M[r][c];
            for (std::size_t j = c; j <= N; ++j) M[r][j] -= k * M[c][j];
        }
    }
    std::vector<Rational> J(N);
    for (std::size_t x = 0; x < N; ++x) J[x] = M[x][N];
    return J;
}

// Pointwise minimum over all stationary policies.
std::vector<Rational> discounted_oracle(const DPInstance& inst) {
    const std::size_t N = inst.num_states();
    std::vector<std::uint32_t> pol(N, 0);
    std::vector<Rational> best;
    for (;;) {
        auto J = policy_value_oracle(inst, pol);
        if (best.empty())
            best = J;
        else
            for (std::size_t x = 0; x < N; ++x) best[x] = std::min(best[x], J[x]);
        std::size_t k = 0;
        while (k < N && ++pol[k] == inst.num_inputs()) pol[k++] = 0;
        if (k == N) break;
    }
    return best;
}

}  // namespace

TEST_CASE("state indexing") {
    const StateSpace s(PrimeField(3), 3);
    CHECK(s.size() == 27);
    CHECK(s.index(vec({0, 0, 0})) == 0);
    CHECK(s.index(vec({1, 2, 0})) == 7);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.index(s.vector(i)) == i);
    CHECK_THROWS_AS(s.vector(27), InvalidInput);
    CHECK_THROWS_AS(s.index(vec({3, 0, 0})), InvalidInput);
    CHECK_THROWS_AS(s.index(vec({0, 0})), InvalidInput);
}

TEST_CASE("horizon validation") {
    CHECK_THROWS_AS(Horizon::finite(0), InvalidInput);
    CHECK_THROWS_AS(Horizon::discounted(Rational(1)), InvalidInput);
    CHECK_THROWS_AS(Horizon::discounted(Rational(0)), InvalidInput);
    CHECK(Horizon::finite(3).alpha() == 1);
    CHECK(Horizon::discounted(Rational(1, 2)).alpha() == Rational(1, 2));
    CHECK_THROWS_AS(Horizon::discounted(Rational(1, 2)).T(), PreconditionFailed);
}

TEST_CASE("cost validation") {
    const PrimeField f(2);
    CHECK_THROWS_AS(CostFunction::from_table(f, 1, {Rational(1), Rational(1)}), InvalidInput);
    CHECK_THROWS_AS(CostFunction::from_table(f, 1, {Rational(0), Rational(-1)}), InvalidInput);
    CHECK_THROWS_AS(CostFunction::from_table(f, 1, {Rational(0), Rational(0)}), InvalidInput);
    CHECK_THROWS_AS(CostFunction::from_table(f, 1, {Rational(0)}), InvalidInput);
    const auto semi = CostFunction::from_table(f, 1, {Rational(0), Rational(0)}, CostCheck::semidefinite);
    CHECK_FALSE(semi.positive_definite());
    CHECK(CostFunction::from_table(f, 1, {Rational(0), Rational(2, 4)}).positive_definite());
}

TEST_CASE("instance validation") {
    const PrimeField f(3);
    const auto g = CostFunction::from_table(f, 1, {Rational(0), Rational(1), Rational(1)});
    CHECK_THROWS_AS(DPInstance(MatrixFp::from_rows(f, {{1}}), MatrixFp::from_rows(f, {{0}}), g, Horizon::finite(1)),
                    InvalidInput);
    InstanceOptions loose;
    loose.require_injective_input = false;
    CHECK_NOTHROW(DPInstance(MatrixFp::from_rows(f, {{1}}), MatrixFp::from_rows(f, {{0}}), g, Horizon::finite(1), loose));
    CHECK_THROWS_AS(DPInstance(MatrixFp::from_rows(f, {{1}}), MatrixFp(f, 2, 1), g, Horizon::finite(1)), ShapeError);
    InstanceOptions tight;
    tight.limits.max_states = 2;
    CHECK_THROWS_AS(DPInstance(MatrixFp::from_rows(f, {{1}}), MatrixFp::from_rows(f, {{1}}), g, Horizon::finite(1), tight),
                    InvalidInput);
}

TEST_CASE("separable and indicator costs") {
    const PrimeField f(3);
    const DirectSumDecomposition d(ex2_parts());
    const auto g = CostFunction::indicator(d, {Rational(1), Rational(2), Rational(3)});
    CHECK(is_in_Gs(g, d));
    const StateSpace s(f, 3);
    CHECK(g(s.index(vec({1, 2, 0}))) == 1 + 2);
    CHECK(g(s.index(vec({2, 1, 1}))) == 1 + 2 + 3);
    CHECK(g(s.index(vec({1, 1, 1}))) == 2 + 3);
    // penalizes only the second part: not positive definite
    CHECK_THROWS_AS(CostFunction::indicator(d, {Rational(0), Rational(1), Rational(0)}), InvalidInput);
    const auto only2 = CostFunction::indicator(d, {Rational(0), Rational(1), Rational(0)}, CostCheck::semidefinite);
    CHECK(is_in_Gs(only2, d));

    const PrimeField f2(2);
    const DirectSumDecomposition e(std::vector<Subspace>{Subspace::span(f2, 2, {vec({1, 0})}), Subspace::span(f2, 2, {vec({0, 1})})});
    const auto ind = CostFunction::from_table(f2, 2, {Rational(0), Rational(1), Rational(1), Rational(1)});
    CHECK_FALSE(is_in_Gs(ind, e));
}

TEST_CASE("finite horizon matches open-loop enumeration") {
    Rng rng(7);
    for (int k = 0; k < 40; ++k) {
        const PrimeField f(rng.coin() ? 2 : 3);
        const auto n = rng.range(1, 3), m = rng.range(0, 2);
        if (m > n) continue;
        const std::size_t T = rng.range(1, 3);
        const auto inst = random_instance(rng, f, n, m, Horizon::finite(T));
        const auto sol = solve_finite(inst, Exec::serial);
        REQUIRE(sol.values.layers.size() == T + 1);
        CHECK(sol.values.layers[T] == inst.cost().table());
        for (std::size_t x = 0; x < inst.num_states(); ++x) CHECK(sol.optimal_cost(x) == openloop_oracle(inst, x));
    }
}

TEST_CASE("argmin sets are complete and exact") {
    Rng rng(8);
    for (int k = 0; k < 30; ++k) {
        const PrimeField f(rng.coin() ? 2 : 3);
        const auto n = rng.range(1, 3), m = rng.range(1, 2);
        if (m > n) continue;
        const auto inst = random_instance(rng, f, n, m, Horizon::finite(rng.range(1, 3)));
        const auto sol = solve_finite(inst);
        const auto& tr = inst.transitions();
        for (std::size_t t = 0; t < sol.argmin.sets.size(); ++t)
            for (std::size_t x = 0; x < inst.num_states(); ++x) {
                const auto& set = sol.argmin.sets[t][x];
                REQUIRE_FALSE(set.empty());
                CHECK(sol.values.layers[t][x] >= inst.cost()(x));
                std::size_t members = 0;
                for (std::size_t u = 0; u < inst.num_inputs(); ++u) {
                    const bool opt = sol.values.layers[t][x] == inst.cost()(x) + sol.values.layers[t + 1][tr(x, u)];
                    if (opt) ++members;
                    CHECK(opt == std::binary_search(set.begin(), set.end(), static_cast<std::uint32_t>(u)));
                }
                CHECK(members == set.size());
            }
    }
}

TEST_CASE("greedy open-loop from the argmin table attains J*") {
    Rng rng(10);
    for (int k = 0; k < 20; ++k) {
        const auto inst = random_instance(rng, PrimeField(3), 2, 1, Horizon::finite(3));
        const auto sol = solve_finite(inst);
        for (std::size_t x0 = 0; x0 < inst.num_states(); ++x0) {
            std::vector<std::uint32_t> seq;
            std::size_t x = x0;
            for (std::size_t t = 0; t < 3; ++t) {
                seq.push_back(sol.argmin.sets[t][x].front());
                x = inst.transitions()(x, seq.back());
            }
            CHECK(evaluate_openloop(inst, x0, seq) == sol.optimal_cost(x0));
        }
    }
}

TEST_CASE("zero state costs nothing and zero input is optimal there") {
    Rng rng(12);
    for (int k = 0; k < 30; ++k) {
        const PrimeField f(rng.coin() ? 2 : 3);
        const auto n = rng.range(1, 3);
        const auto m = rng.range(0, n);
        const bool finite = rng.coin();
        const auto inst = random_instance(rng, f, n, m, finite ? Horizon::finite(rng.range(1, 3)) : Horizon::discounted(Rational(1, 2)));
        const auto sol = solve(inst);
        for (std::size_t x = 0; x < inst.num_states(); ++x) CHECK((sol.optimal_cost(x) == 0) == (x == 0));
        // B injective: N(B) = {0}, so the only optimal input at the origin is 0.
        for (const auto& layer : sol.argmin.sets) CHECK(layer[0] == std::vector<std::uint32_t>{0});
    }
}

TEST_CASE("A = 0 with T = 1 gives J* = g") {
    const PrimeField f(3);
    const DirectSumDecomposition d(ex3_parts());
    const auto g = CostFunction::indicator(d, {Rational(1), Rational(1), Rational(1)});
    const DPInstance inst(MatrixFp(f, 3, 3), ex3_B(), g, Horizon::finite(1));
    CHECK(solve_finite(inst).optimal_costs() == g.table());
}

TEST_CASE("single-coordinate discounted example") {
    const PrimeField f(2);
    const auto g = CostFunction::from_table(f, 1, {Rational(0), Rational(1)});
    const DPInstance inst(MatrixFp::from_rows(f, {{1}}), MatrixFp::from_rows(f, {{1}}), g, Horizon::discounted(Rational(1, 2)));
    const auto sol = solve_discounted_pi(inst);
    CHECK(sol.optimal_cost(1) == 1);
    CHECK(sol.optimal_cost(0) == 0);
    CHECK(bellman_residual(inst, sol.optimal_costs()) == 0);
    const auto vi = solve_discounted_vi(inst, Rational(1, 1000));
    CHECK(abs(vi.values[1] - 1) <= Rational(1, 1000));
    CHECK(vi.error_bound == Rational(1, 1000));
    // policy "stay": 1 + 1/2 + 1/4 + ... = 2
    const std::vector<std::uint32_t> stay = {0, 0};
    CHECK(evaluate_stationary_policy(inst, stay)[1] == 2);
}

TEST_CASE("two-cycle closed form") {
    const PrimeField f(3);
    // x -> 2x swaps 1 and 2; no inputs.
    const auto g = CostFunction::from_table(f, 1, {Rational(0), Rational(3), Rational(5)});
    const Rational alpha(2, 3);
    const DPInstance inst(MatrixFp::from_rows(f, {{2}}), MatrixFp(f, 1, 0), g, Horizon::discounted(alpha));
    const std::vector<std::uint32_t> pol = {0, 0, 0};
    const auto J = evaluate_stationary_policy(inst, pol);
    CHECK(J[1] == (Rational(3) + alpha * 5) / (1 - alpha * alpha));
    CHECK(J[2] == (Rational(5) + alpha * 3) / (1 - alpha * alpha));
    CHECK(J[0] == 0);
}

TEST_CASE("stationary policy evaluation matches the linear-system oracle") {
    Rng rng(14);
    for (int k = 0; k < 40; ++k) {
        const PrimeField f(rng.coin() ? 2 : 3);
        const auto n = rng.range(1, 3), m = rng.range(0, 2);
        if (m > n) continue;
        const auto inst = random_instance(rng, f, n, m, Horizon::discounted(Rational(rng.below(4) + 1, 5)));
        std::vector<std::uint32_t> pol(inst.num_states());
        for (auto& u : pol) u = rng.below(static_cast<std::uint32_t>(inst.num_inputs()));
        CHECK(evaluate_stationary_policy(inst, pol) == policy_value_oracle(inst, pol));
    }
}

TEST_CASE("policy iteration matches enumeration of stationary policies") {
    Rng rng(15);
    int tried = 0;
    while (tried < 25) {
        const PrimeField f(rng.coin() ? 2 : 3);
        const auto n = rng.range(1, 2), m = rng.range(1, 2);
        if (m > n) continue;
        const auto inst = random_instance(rng, f, n, m, Horizon::discounted(Rational(rng.below(4) + 1, 5)));
        if (std::pow(double(inst.num_inputs()), double(inst.num_states())) > 5000) continue;
        ++tried;
        const auto sol = solve_discounted_pi(inst);
        CHECK(sol.optimal_costs() == discounted_oracle(inst));
        CHECK(bellman_residual(inst, sol.optimal_costs()) == 0);
        // every argmin member is an optimal stationary action
        std::vector<std::uint32_t> pol(inst.num_states());
        for (std::size_t x = 0; x < pol.size(); ++x) pol[x] = sol.argmin.sets[0][x].back();
        CHECK(evaluate_stationary_policy(inst, pol) == sol.optimal_costs());
    }
}

TEST_CASE("value iteration stays within its bound") {
    Rng rng(16);
    for (int k = 0; k < 20; ++k) {
        const PrimeField f(rng.coin() ? 2 : 3);
        const auto inst = random_instance(rng, f, 3, rng.range(1, 2), Horizon::discounted(Rational(rng.below(3) + 1, 4)));
        const Rational tol(1, 100);
        const auto pi = solve_discounted_pi(inst);
        const auto vi = solve_discounted_vi(inst, tol);
        CHECK(vi.values[0] == 0);
        CHECK(vi.last_update <= tol);
        for (std::size_t x = 0; x < inst.num_states(); ++x) CHECK(abs(vi.values[x] - pi.optimal_cost(x)) <= vi.error_bound);
    }
}

TEST_CASE("serial and parallel kernels are bit-identical") {
    Rng rng(17);
    for (int k = 0; k < 10; ++k) {
        const auto fin = random_instance(rng, PrimeField(3), 4, 2, Horizon::finite(3));
        const auto a = solve_finite(fin, Exec::serial), b = solve_finite(fin, Exec::parallel);
        CHECK(a.values.layers == b.values.layers);
        CHECK(a.argmin.sets == b.argmin.sets);
        const auto disc = fin.with_horizon(Horizon::discounted(Rational(2, 3)));
        const auto c = solve_discounted_pi(disc, Exec::serial), d = solve_discounted_pi(disc, Exec::parallel);
        CHECK(c.values.layers == d.values.layers);
        CHECK(c.argmin.sets == d.argmin.sets);
        CHECK(c.iterations == d.iterations);
        const auto e = solve_discounted_vi(disc, Rational(1, 50), Exec::serial);
        const auto h = solve_discounted_vi(disc, Rational(1, 50), Exec::parallel);
        CHECK(e.values == h.values);
    }
}

TEST_CASE("open-loop evaluation") {
    const PrimeField f(3);
    const DirectSumDecomposition d(ex2_parts());
    const auto g = CostFunction::indicator(d, {Rational(0), Rational(1), Rational(0)}, CostCheck::semidefinite);
    const DPInstance inst(ex2_A(), ex2_B(), g, Horizon::finite(1));
    const std::vector<std::uint32_t> zero = {0};
    CHECK(evaluate_openloop(inst, 0, zero) == 0);
    CHECK_THROWS_AS(evaluate_openloop(inst, 0, std::vector<std::uint32_t>{0, 0}), InvalidInput);
    const auto sol = solve_finite(inst);
    const std::size_t x0 = inst.states().index(vec({1, 2, 0}));
    // Subsystem 2 sits at 2*[1,1,0], moves to 4 = 1 times [1,1,0], and the
    // input u1 [1,1,0] cancels it with u1 = 2; lifted to U that is [2, 0].
    const std::vector<std::uint32_t> lifted = {static_cast<std::uint32_t>(inst.inputs().index(vec({2, 0})))};
    CHECK(evaluate_openloop(inst, x0, lifted) == sol.optimal_cost(x0));
    for (std::uint32_t u = 0; u < inst.num_inputs(); ++u)
        CHECK(evaluate_openloop(inst, x0, std::vector<std::uint32_t>{u}) >= sol.optimal_cost(x0));
}

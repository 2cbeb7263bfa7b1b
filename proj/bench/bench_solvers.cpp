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

// Serial vs OpenMP solver kernels on desk-scale random instances over GF(3).
#include <benchmark/benchmark.h>

#include <random>

#include "dpdecomp/dp.hpp"

using namespace dpdecomp;

namespace {

DPInstance make_instance(std::size_t n, std::size_t m, Horizon h, std::uint64_t seed = 1) {
    const PrimeField f(3);
    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> a(n * n), b(n * m);
    for (auto& e : a) e = static_cast<std::int64_t>(rng() % 3);
    for (auto& e : b) e = static_cast<std::int64_t>(rng() % 3);
    for (std::size_t j = 0; j < m; ++j) b[j * m + j] = 1;  // rank m
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j) b[i * m + j] = 0;
    std::size_t states = 1;
    for (std::size_t k = 0; k < n; ++k) states *= 3;
    std::vector<Rational> table(states);
    for (std::size_t x = 1; x < states; ++x) table[x] = Rational(static_cast<long>(1 + rng() % 7), static_cast<long>(1 + rng() % 3));
    InstanceOptions opts;
    opts.limits.max_states = 1u << 16;
    opts.limits.max_inputs = 1u << 12;
    return DPInstance(MatrixFp(f, n, n, a), MatrixFp(f, n, m, b), CostFunction::from_table(f, n, std::move(table)), h,
                      opts);
}

Exec exec_of(const benchmark::State& st) { return st.range(2) ? Exec::parallel : Exec::serial; }

void BM_Backup(benchmark::State& st) {
    const auto inst = make_instance(st.range(0), st.range(1), Horizon::finite(1));
    const auto& tr = inst.transitions();
    const auto& g = inst.cost().table();
    std::vector<Rational> out;
    std::vector<std::vector<std::uint32_t>> argmin;
    const Rational one(1);
    for (auto _ : st) {
        if (st.range(2))
            kernels::bellman_backup_parallel(tr, g, g, one, out, &argmin);
        else
            kernels::bellman_backup_serial(tr, g, g, one, out, &argmin);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(tr.num_states * tr.num_inputs));
}

void BM_FiniteHorizon(benchmark::State& st) {
    const auto inst = make_instance(st.range(0), st.range(1), Horizon::finite(5));
    for (auto _ : st) benchmark::DoNotOptimize(solve_finite(inst, exec_of(st)).iterations);
}

void BM_PolicyIteration(benchmark::State& st) {
    const auto inst = make_instance(st.range(0), st.range(1), Horizon::discounted(Rational(2, 3)));
    for (auto _ : st) benchmark::DoNotOptimize(solve_discounted_pi(inst, exec_of(st)).iterations);
}

void BM_ValueIteration(benchmark::State& st) {
    const auto inst = make_instance(st.range(0), st.range(1), Horizon::discounted(Rational(2, 3)));
    const Rational tol(1, 1000);
    for (auto _ : st) benchmark::DoNotOptimize(solve_discounted_vi(inst, tol, exec_of(st)).iterations);
}

// args: n, m, parallel
void sizes(benchmark::internal::Benchmark* b) {
    for (int par : {0, 1}) {
        b->Args({6, 2, par});
        b->Args({7, 3, par});
        b->Args({8, 3, par});
    }
    b->ArgNames({"n", "m", "omp"});
    b->Unit(benchmark::kMillisecond);
    b->UseRealTime();
}

}  // namespace

BENCHMARK(BM_Backup)->Apply(sizes);
BENCHMARK(BM_FiniteHorizon)->Apply(sizes);
BENCHMARK(BM_PolicyIteration)->Apply(sizes);
BENCHMARK(BM_ValueIteration)->Apply(sizes);

BENCHMARK_MAIN();

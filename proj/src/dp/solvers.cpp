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

#include <algorithm>

#include "dpdecomp/dp.hpp"

namespace dpdecomp {

namespace {

void backup(Exec exec, const Transitions& tr, const std::vector<Rational>& g, const std::vector<Rational>& next,
            const Rational& alpha, std::vector<Rational>& out, std::vector<std::vector<std::uint32_t>>* argmin) {
    if (exec == Exec::parallel)
        kernels::bellman_backup_parallel(tr, g, next, alpha, out, argmin);
    else
        kernels::bellman_backup_serial(tr, g, next, alpha, out, argmin);
}

std::size_t improve(Exec exec, const Transitions& tr, const std::vector<Rational>& J, std::vector<std::uint32_t>& policy) {
    return exec == Exec::parallel ? kernels::improve_policy_parallel(tr, J, policy)
                                  : kernels::improve_policy_serial(tr, J, policy);
}

void require_discounted(const DPInstance& inst, const char* what) {
    if (inst.horizon().is_finite()) throw PreconditionFailed(std::string(what) + " needs a discounted horizon");
}

void require_finite(const DPInstance& inst, const char* what) {
    if (!inst.horizon().is_finite()) throw PreconditionFailed(std::string(what) + " needs a finite horizon");
}

Rational abs_diff(const Rational& a, const Rational& b) {
    Rational d = a - b;
    return d < 0 ? Rational(-d) : d;
}

}  // namespace

DPSolution solve_finite(const DPInstance& inst, Exec exec) {
    require_finite(inst, "solve_finite");
    const std::size_t T = inst.horizon().T();
    const auto& tr = inst.transitions();
    const auto& g = inst.cost().table();
    DPSolution sol;
    sol.values.layers.assign(T + 1, {});
    sol.argmin.sets.assign(T, {});
    sol.values.layers[T] = g;
    const Rational one(1);
    for (std::size_t t = T; t-- > 0;)
        backup(exec, tr, g, sol.values.layers[t + 1], one, sol.values.layers[t], &sol.argmin.sets[t]);
    sol.iterations = T;
    return sol;
}

std::vector<Rational> evaluate_stationary_policy(const DPInstance& inst, std::span<const std::uint32_t> policy) {
    require_discounted(inst, "evaluate_stationary_policy");
    const auto& tr = inst.transitions();
    const auto& g = inst.cost().table();
    const Rational alpha = inst.horizon().alpha();
    const std::size_t N = tr.num_states;
    if (policy.size() != N) throw InvalidInput("policy must assign an input to every state");
    for (auto u : policy)
        if (u >= tr.num_inputs) throw InvalidInput("policy input index out of range");

    // The closed-loop map x -> A x + B sigma(x) is a functional graph: every
    // trajectory is a prefix followed by a cycle. Cycle values come from the
    // geometric tail, everything else from J(x) = g(x) + alpha J(next(x)).
    enum : std::uint8_t { unseen, on_path, done };
    std::vector<std::uint8_t> state(N, unseen);
    std::vector<Rational> J(N);
    std::vector<std::size_t> path;
    for (std::size_t start = 0; start < N; ++start) {
        if (state[start] == done) continue;
        path.clear();
        std::size_t x = start;
        while (state[x] == unseen) {
            state[x] = on_path;
            path.push_back(x);
            x = tr(x, policy[x]);
        }
        std::size_t prefix_end = path.size();
        if (state[x] == on_path) {
            const auto pos = static_cast<std::size_t>(std::find(path.begin(), path.end(), x) - path.begin());
            const std::size_t L = path.size() - pos;
            Rational sum = 0, a_pow = 1;
            for (std::size_t j = 0; j < L; ++j) {
                sum += a_pow * g[path[pos + j]];
                a_pow *= alpha;
            }
            J[path[pos]] = sum / (Rational(1) - a_pow);
            state[path[pos]] = done;
            for (std::size_t j = L; j-- > 1;) {
                const std::size_t c = path[pos + j];
                J[c] = g[c] + alpha * J[tr(c, policy[c])];
                state[c] = done;
            }
            prefix_end = pos;
        }
        for (std::size_t j = prefix_end; j-- > 0;) {
            const std::size_t c = path[j];
            J[c] = g[c] + alpha * J[tr(c, policy[c])];
            state[c] = done;
        }
    }
    return J;
}

DPSolution solve_discounted_pi(const DPInstance& inst, Exec exec) {
    require_discounted(inst, "solve_discounted_pi");
    const auto& tr = inst.transitions();
    const auto& g = inst.cost().table();
    const Rational alpha = inst.horizon().alpha();

    // Greedy on g: the lowest-index u minimizing g(Ax + Bu).
    std::vector<std::uint32_t> policy(tr.num_states, 0);
    improve(exec, tr, g, policy);

    DPSolution sol;
    std::vector<Rational> J;
    for (;;) {
        ++sol.iterations;
        J = evaluate_stationary_policy(inst, policy);
        if (improve(exec, tr, J, policy) == 0) break;
    }
    std::vector<Rational> check;
    sol.argmin.sets.assign(1, {});
    backup(exec, tr, g, J, alpha, check, &sol.argmin.sets[0]);
    if (check != J) throw TheoremViolation("policy iteration terminated without satisfying the Bellman equation");
    sol.values.layers.push_back(std::move(J));
    return sol;
}

DPSolution solve(const DPInstance& inst, Exec exec) {
    return inst.horizon().is_finite() ? solve_finite(inst, exec) : solve_discounted_pi(inst, exec);
}

ValueIterationResult solve_discounted_vi(const DPInstance& inst, const Rational& tol, Exec exec) {
    require_discounted(inst, "solve_discounted_vi");
    if (tol <= 0) throw InvalidInput("value-iteration tolerance must be positive");
    const auto& tr = inst.transitions();
    const auto& g = inst.cost().table();
    const Rational alpha = inst.horizon().alpha();
    ValueIterationResult res;
    std::vector<Rational> J(tr.num_states, Rational(0)), next;
    for (;;) {
        backup(exec, tr, g, J, alpha, next, nullptr);
        ++res.iterations;
        Rational sup = 0;
        for (std::size_t x = 0; x < J.size(); ++x) sup = std::max(sup, abs_diff(next[x], J[x]));
        J.swap(next);
        if (sup <= tol) {
            res.last_update = sup;
            break;
        }
    }
    res.values = std::move(J);
    res.error_bound = alpha * tol / (Rational(1) - alpha);
    return res;
}

Rational evaluate_openloop(const DPInstance& inst, std::size_t x0, std::span<const std::uint32_t> inputs) {
    require_finite(inst, "evaluate_openloop");
    const std::size_t T = inst.horizon().T();
    if (inputs.size() != T)
        throw InvalidInput("open-loop sequence has length " + std::to_string(inputs.size()) + ", expected T = " + std::to_string(T));
    const auto& tr = inst.transitions();
    if (x0 >= tr.num_states) throw InvalidInput("initial state out of range");
    Rational cost = inst.cost()(x0);
    std::size_t x = x0;
    for (auto u : inputs) {
        if (u >= tr.num_inputs) throw InvalidInput("input index out of range");
        x = tr(x, u);
        cost += inst.cost()(x);
    }
    return cost;
}

Rational evaluate_control_law(const DPInstance& inst, std::size_t x0, const std::vector<std::vector<std::uint32_t>>& law) {
    require_finite(inst, "evaluate_control_law");
    const std::size_t T = inst.horizon().T();
    if (law.size() != T) throw InvalidInput("control law must have one layer per stage");
    const auto& tr = inst.transitions();
    if (x0 >= tr.num_states) throw InvalidInput("initial state out of range");
    std::vector<std::uint32_t> seq;
    std::size_t x = x0;
    for (std::size_t t = 0; t < T; ++t) {
        const auto u = law[t].at(x);
        seq.push_back(u);
        x = tr(x, u);
    }
    return evaluate_openloop(inst, x0, seq);
}

Rational bellman_residual(const DPInstance& inst, const std::vector<Rational>& J) {
    const auto& tr = inst.transitions();
    if (J.size() != tr.num_states) throw InvalidInput("value table size differs from the state count");
    std::vector<Rational> out;
    kernels::bellman_backup_serial(tr, inst.cost().table(), J, inst.horizon().alpha(), out, nullptr);
    Rational worst = 0;
    for (std::size_t x = 0; x < J.size(); ++x) worst = std::max(worst, abs_diff(out[x], J[x]));
    return worst;
}

}  // namespace dpdecomp

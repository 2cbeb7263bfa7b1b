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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dpdecomp/field.hpp"
#include "dpdecomp/subspace.hpp"

namespace dpdecomp {

/// Base-p little-endian indexing of GF(p)^dim: x <-> sum_k x_k p^k.
class StateSpace {
   public:
    StateSpace(PrimeField field, std::size_t dim);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return size_; }

    /// Throws InvalidInput on wrong length or components outside [0, p).
    std::size_t index(std::span<const std::uint32_t> x) const;
    /// Throws InvalidInput for idx >= size().
    VecFp vector(std::size_t idx) const;

   private:
    PrimeField field_;
    std::size_t dim_;
    std::size_t size_;
};

struct FiniteHorizon {
    std::size_t T;
};
struct DiscountedHorizon {
    Rational alpha;
};

/// Finite(T) with alpha = 1, or Discounted(alpha) with 0 < alpha < 1.
class Horizon {
   public:
    static Horizon finite(std::size_t T);
    static Horizon discounted(const Rational& alpha);

    bool is_finite() const noexcept { return std::holds_alternative<FiniteHorizon>(h_); }
    std::size_t T() const;
    Rational alpha() const;

   private:
    explicit Horizon(std::variant<FiniteHorizon, DiscountedHorizon> h) : h_(std::move(h)) {}
    std::variant<FiniteHorizon, DiscountedHorizon> h_;
};

enum class CostCheck {
    positive_definite,  // g >= 0 and g(x) = 0 iff x = 0
    semidefinite,       // g >= 0 and g(0) = 0 only
};

class CostFunction {
   public:
    static CostFunction from_table(PrimeField field, std::size_t n, std::vector<Rational> table,
                                   CostCheck check = CostCheck::positive_definite);
    /// g(x) = sum_i g_i(coords_i(x)), each g_i indexed by part-coordinate state
    /// index and required to vanish at 0.
    static CostFunction separable(const DirectSumDecomposition& d, std::vector<std::vector<Rational>> part_tables,
                                  CostCheck check = CostCheck::positive_definite);
    /// g(x) = sum_i w_i [rho_i(x) != 0].
    static CostFunction indicator(const DirectSumDecomposition& d, const std::vector<Rational>& weights,
                                  CostCheck check = CostCheck::positive_definite);

    const Rational& operator()(std::size_t state) const { return table_.at(state); }
    const std::vector<Rational>& table() const noexcept { return table_; }
    std::size_t dim() const noexcept { return n_; }
    const PrimeField& field() const noexcept { return field_; }
    bool positive_definite() const noexcept { return positive_definite_; }
    bool has_separable_parts() const noexcept { return !parts_.empty(); }
    const std::vector<std::vector<Rational>>& separable_parts() const noexcept { return parts_; }

   private:
    CostFunction(PrimeField field, std::size_t n) : field_(field), n_(n) {}
    void validate(CostCheck check);

    PrimeField field_;
    std::size_t n_;
    std::vector<Rational> table_;
    std::vector<std::vector<Rational>> parts_;
    bool positive_definite_ = false;
};

struct Limits {
    std::size_t max_states = 729;  // p^n
    std::size_t max_inputs = 81;   // p^m
};

struct InstanceOptions {
    bool require_injective_input = true;
    Limits limits{};
};

/// Precomputed x -> A x + B u table, shared between copies of an instance.
struct Transitions {
    std::size_t num_states = 0;
    std::size_t num_inputs = 0;
    std::vector<std::uint32_t> next;         // next[x * num_inputs + u]
    std::vector<std::uint32_t> input_image;  // index of B u

    std::uint32_t operator()(std::size_t x, std::size_t u) const noexcept { return next[x * num_inputs + u]; }
};

/// (A, B, g, T) or (A, B, g, alpha) on GF(p)^n with inputs GF(p)^m.
class DPInstance {
   public:
    DPInstance(MatrixFp a, MatrixFp b, CostFunction g, Horizon h, InstanceOptions opts = {});

    const PrimeField& field() const noexcept { return a_.field(); }
    std::size_t n() const noexcept { return a_.rows(); }
    std::size_t m() const noexcept { return b_.cols(); }
    const MatrixFp& A() const noexcept { return a_; }
    const MatrixFp& B() const noexcept { return b_; }
    const CostFunction& cost() const noexcept { return g_; }
    const Horizon& horizon() const noexcept { return h_; }
    const InstanceOptions& options() const noexcept { return opts_; }
    const StateSpace& states() const noexcept { return states_; }
    const StateSpace& inputs() const noexcept { return inputs_; }
    std::size_t num_states() const noexcept { return states_.size(); }
    std::size_t num_inputs() const noexcept { return inputs_.size(); }
    const Transitions& transitions() const noexcept { return *trans_; }

    DPInstance with_horizon(Horizon h) const;

   private:
    MatrixFp a_;
    MatrixFp b_;
    CostFunction g_;
    Horizon h_;
    InstanceOptions opts_;
    StateSpace states_;
    StateSpace inputs_;
    std::shared_ptr<const Transitions> trans_;
};

/// Finite horizon: layers[t] for t = 0..T (layers[T] = g). Discounted: one
/// layer holding J*.
struct ValueTable {
    std::vector<std::vector<Rational>> layers;
};

/// sets[t][x] is the full, ascending set of minimizing input indices.
/// Finite horizon: t = 0..T-1. Discounted: one layer.
struct ArgminTable {
    std::vector<std::vector<std::vector<std::uint32_t>>> sets;
};

struct DPSolution {
    ValueTable values;
    ArgminTable argmin;
    std::size_t iterations = 0;  // policy-iteration rounds; T for finite

    /// J*(x) = J_0*(x).
    const Rational& optimal_cost(std::size_t x) const { return values.layers.front().at(x); }
    const std::vector<Rational>& optimal_costs() const { return values.layers.front(); }
};

enum class Exec { serial, parallel };

DPSolution solve_finite(const DPInstance& inst, Exec exec = Exec::parallel);
DPSolution solve_discounted_pi(const DPInstance& inst, Exec exec = Exec::parallel);
/// Dispatches on the instance's horizon (policy iteration when discounted).
DPSolution solve(const DPInstance& inst, Exec exec = Exec::parallel);

struct ValueIterationResult {
    std::vector<Rational> values;
    std::size_t iterations = 0;
    Rational last_update;  // sup-norm of the final update, <= tol
    Rational error_bound;  // alpha * tol / (1 - alpha)
};

ValueIterationResult solve_discounted_vi(const DPInstance& inst, const Rational& tol, Exec exec = Exec::parallel);

/// Exact discounted cost of a stationary policy (input index per state).
std::vector<Rational> evaluate_stationary_policy(const DPInstance& inst, std::span<const std::uint32_t> policy);

/// sum_{t=0..T} g(x_t) for an open-loop input sequence of length T.
Rational evaluate_openloop(const DPInstance& inst, std::size_t x0, std::span<const std::uint32_t> inputs);

/// Cost of a time-varying closed-loop law law[t][x] (finite horizon) from x0.
Rational evaluate_control_law(const DPInstance& inst, std::size_t x0,
                              const std::vector<std::vector<std::uint32_t>>& law);

/// g(x) = sum_i g(rho_i x) for every state.
bool is_in_Gs(const CostFunction& g, const DirectSumDecomposition& d);

/// max_x |g(x) + alpha min_u J(Ax+Bu) - J(x)|, exact.
Rational bellman_residual(const DPInstance& inst, const std::vector<Rational>& J);

namespace kernels {

/// One Bellman backup over all states:
///   out[x] = g[x] + alpha * min_u next_values[T(x,u)]
/// and, when argmin is non-null, the full minimizing set per state.
void bellman_backup_serial(const Transitions& tr, const std::vector<Rational>& g,
                           const std::vector<Rational>& next_values, const Rational& alpha,
                           std::vector<Rational>& out, std::vector<std::vector<std::uint32_t>>* argmin);
void bellman_backup_parallel(const Transitions& tr, const std::vector<Rational>& g,
                             const std::vector<Rational>& next_values, const Rational& alpha,
                             std::vector<Rational>& out, std::vector<std::vector<std::uint32_t>>* argmin);

/// Policy improvement: keeps policy[x] unless some input is strictly cheaper
/// under J, in which case the lowest-index minimizer is taken. Returns the
/// number of states that changed.
std::size_t improve_policy_serial(const Transitions& tr, const std::vector<Rational>& J,
                                  std::vector<std::uint32_t>& policy);
std::size_t improve_policy_parallel(const Transitions& tr, const std::vector<Rational>& J,
                                    std::vector<std::uint32_t>& policy);

}  // namespace kernels

}  // namespace dpdecomp

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
#include <optional>
#include <string>
#include <vector>

#include "dpdecomp/subproblems.hpp"

namespace dpdecomp {

enum class Verdict { holds, fails, inconclusive };
std::string to_string(Verdict v);

struct CheckOptions {
    std::size_t tuple_cap = 1'000'000;  // action tuples per (x, t) in the diagram check
    Exec exec = Exec::parallel;
    bool restricted = true;  // run the restricted-family checks
    bool projected = true;   // run the projected-family checks
    // Throw TheoremViolation at the first failed implication; otherwise the
    // failures are collected in DecompositionReport::violations.
    bool throw_on_violation = true;
};

struct StateTime {
    std::size_t state = 0;
    std::size_t t = 0;  // always 0 for a discounted horizon
};

struct RangeReport {
    bool range_condition = false;  // R(B) = (+)_i [R(B) cap X_i]
    bool u_equals_sum_E = false;   // U = sum_i E_i
    std::size_t range_dim = 0;
    std::vector<std::size_t> intersection_dims;
};

/// Finite horizon: some u in sum_E attains min_u J_{t+1}(Ax + Bu) at every (x, t).
struct Lemma1Report {
    bool holds = false;
    std::optional<StateTime> witness;
};

/// Discounted: some u in sum_E attains min_u J*(Ax + Bu) at every x. When it
/// holds, a stationary optimal policy with inputs in sum_E exists.
struct SelectorReport {
    bool stationary_witness_present = false;
    std::optional<std::size_t> witness;
};

struct Def1Report {
    bool holds = false;                  // J_t = sum_i Jbar_{i,t} o rho_i at every stage
    bool holds_at_initial_time = false;  // the same at t = 0 only
    std::optional<StateTime> witness;    // earliest stage, then lowest state
    // Summed middle-of-argmin restricted selections, lifted and evaluated
    // exactly; only computed when `holds`.
    std::optional<bool> lifted_policy_optimal;
};

struct Def2Witness {
    std::size_t state = 0;
    std::size_t t = 0;
    std::vector<std::uint32_t> actions;  // one projected-subproblem input per part; empty for a value mismatch
    bool value_mismatch = false;
};

struct Def2Report {
    Verdict verdict = Verdict::inconclusive;
    bool values_equal = false;
    Verdict diagram = Verdict::inconclusive;
    std::optional<Def2Witness> witness;
    std::size_t tuples_checked = 0;
    std::size_t capped_points = 0;
};

struct MonotoneReport {
    std::vector<bool> def1_by_T;          // index T' - 1
    std::vector<bool> def1_initial_by_T;  // t = 0 reading
    bool consistent = true;               // def1 at T implies def1 at every T' < T
    bool initial_time_consistent = true;  // same implication for the t = 0 reading (not a theorem)
};

struct PropositionReport {
    bool prop1 = false;                 // min over E_i equals min over sum_E at part states
    std::optional<bool> prop2_5;        // J_t in G_s and J_t restricted to X_i = Jbar_{i,t}; absent unless the selector condition holds
    bool ax_cap_bv_zero = false;        // A(X) cap B(V) = {0}
    std::optional<bool> prop7_10;       // def1 => A(X) cap B(V) = {0}, for two choices of V; positive-definite costs only
    std::optional<bool> prop8;          // J(x) = 0 <=> x = 0; positive-definite costs only
    std::optional<bool> prop9;          // argmin at 0 inside N(B); positive-definite costs only
};

struct DecompositionReport {
    bool finite = true;
    std::size_t T = 0;
    Rational alpha = 1;
    bool cost_positive_definite = false;
    bool A_invertible = false;
    RangeReport range;
    std::optional<Lemma1Report> lemma1;
    std::optional<SelectorReport> selector;
    std::optional<Def1Report> def1;
    std::optional<Def2Report> def2;
    std::optional<bool> hierarchy_consistent;
    std::optional<bool> thm2_consistent;
    std::optional<MonotoneReport> monotone;
    std::optional<bool> complement_independent;  // selector-condition verdict unchanged under another V
    PropositionReport props;
    std::vector<std::string> violations;
};

/// Computes the range condition and U = sum E_i; they must agree.
RangeReport check_range_condition(const SubproblemBundle& b);

Lemma1Report check_lemma1_fh(const SubproblemBundle& b, const DPSolution& parent);
SelectorReport check_lemma2_selector(const SubproblemBundle& b, const DPSolution& parent);

/// Throws InvalidInput when the solutions do not share one horizon.
Def1Report check_def1(const SubproblemBundle& b, const DPSolution& parent, const std::vector<DPSolution>& restricted);
Def2Report check_def2(const SubproblemBundle& b, const DPSolution& parent, const std::vector<DPSolution>& projected,
                      const CheckOptions& opts = {});

/// def2 => def1. Throws TheoremViolation when def2 holds and def1 fails.
bool check_hierarchy(const Def1Report& def1, const Def2Report& def2);

/// Absent when A is singular. Otherwise range condition <=> def1 for every
/// supplied verdict; a mismatch throws TheoremViolation when g is positive
/// definite.
std::optional<bool> check_thm2(const SubproblemBundle& b, const RangeReport& range, const std::vector<bool>& def1_verdicts);

/// Solves horizons 1..T (T >= 1) and checks that def1 at T carries over to
/// every shorter horizon. Throws TheoremViolation otherwise.
MonotoneReport check_monotone_T(const SubproblemBundle& b, std::size_t T, Exec exec = Exec::parallel);

/// Full battery for the bundle's horizon.
DecompositionReport run_checks(const SubproblemBundle& b, const CheckOptions& opts = {});

/// Re-solves from scratch and confirms every witness in the report still
/// exhibits its failure. Returns the list of witnesses that did not.
std::vector<std::string> verify_witnesses(const SubproblemBundle& b, const DecompositionReport& report);

}  // namespace dpdecomp

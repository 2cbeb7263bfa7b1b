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

#include "dpdecomp/decomp_check.hpp"

#include <algorithm>
#include <numeric>

namespace dpdecomp {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::holds:
            return "holds";
        case Verdict::fails:
            return "fails";
        case Verdict::inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

namespace {

// Collects failed implications, or throws at the first one.
class Violations {
   public:
    explicit Violations(bool throw_first) : throw_first_(throw_first) {}
    void require(bool ok, const std::string& what) {
        if (ok) return;
        if (throw_first_) throw TheoremViolation(what);
        list_.push_back(what);
    }
    std::vector<std::string> take() { return std::move(list_); }

   private:
    bool throw_first_;
    std::vector<std::string> list_;
};

std::vector<bool> input_membership(const DPInstance& inst, const Subspace& s) {
    std::vector<bool> in(inst.num_inputs());
    for (std::size_t u = 0; u < in.size(); ++u) in[u] = s.contains(inst.inputs().vector(u));
    return in;
}

std::string state_label(const DPInstance& inst, std::size_t x) {
    std::string s = "[";
    const auto v = inst.states().vector(x);
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s + "]";
}

// First state whose argmin set misses sum_E, or nullopt.
std::optional<std::size_t> selector_gap(const std::vector<std::vector<std::uint32_t>>& layer, const std::vector<bool>& in_sum) {
    for (std::size_t x = 0; x < layer.size(); ++x)
        if (std::none_of(layer[x].begin(), layer[x].end(), [&](std::uint32_t u) { return in_sum[u]; })) return x;
    return std::nullopt;
}

void require_same_stages(const DPSolution& parent, const std::vector<DPSolution>& parts) {
    for (const auto& s : parts)
        if (s.values.layers.size() != parent.values.layers.size())
            throw InvalidInput("parent and subproblem solutions were computed for different horizons");
}

std::vector<Rational> summed_layer(const SubproblemBundle& b, const std::vector<DPSolution>& parts, std::size_t t) {
    std::vector<const std::vector<Rational>*> tables;
    for (const auto& s : parts) tables.push_back(&s.values.layers[t]);
    return summed_values(b, tables);
}

Subspace ax_cap_bv(const SubproblemBundle& b, const Subspace& V) {
    const auto& inst = b.parent;
    return subspace_intersect(Subspace::column_space(inst.A()), image(inst.B(), V));
}

bool prop1_holds(const SubproblemBundle& b) {
    const auto& inst = b.parent;
    const auto& g = inst.cost();
    const auto& tr = inst.transitions();
    const auto in_sum = input_membership(inst, b.sum_E);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const auto in_i = input_membership(inst, b.E[i]);
        for (auto x : b.embed_state[i]) {
            std::optional<Rational> best_i, best_sum;
            for (std::size_t u = 0; u < tr.num_inputs; ++u) {
                const Rational& c = g(tr(x, u));
                if (in_i[u] && (!best_i || c < *best_i)) best_i = c;
                if (in_sum[u] && (!best_sum || c < *best_sum)) best_sum = c;
            }
            if (*best_i != *best_sum) return false;
        }
    }
    return true;
}

// J_t in G_s and J_t(embed_i y) = Jbar_{i,t}(y) for every stage.
bool props2_5_hold(const SubproblemBundle& b, const DPSolution& parent, const std::vector<DPSolution>& restricted) {
    for (std::size_t t = 0; t < parent.values.layers.size(); ++t) {
        const auto& J = parent.values.layers[t];
        for (std::size_t x = 0; x < J.size(); ++x) {
            Rational acc = 0;
            for (std::size_t i = 0; i < b.size(); ++i) acc += J[b.embed_state[i][b.part_state[i][x]]];
            if (acc != J[x]) return false;
        }
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t y = 0; y < b.embed_state[i].size(); ++y)
                if (J[b.embed_state[i][y]] != restricted[i].values.layers[t][y]) return false;
    }
    return true;
}

bool prop8_holds(const DPSolution& parent) {
    for (const auto& layer : parent.values.layers)
        for (std::size_t x = 0; x < layer.size(); ++x)
            if ((layer[x] == 0) != (x == 0)) return false;
    return true;
}

bool prop9_holds(const DPInstance& inst, const DPSolution& parent) {
    for (const auto& layer : parent.argmin.sets)
        for (auto u : layer[0])
            if (inst.transitions().input_image[u] != 0) return false;
    return true;
}

bool lifted_policy_optimal(const SubproblemBundle& b, const DPSolution& parent, const std::vector<DPSolution>& restricted) {
    std::vector<std::vector<std::vector<std::uint32_t>>> sel(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        for (const auto& layer : restricted[i].argmin.sets) {
            std::vector<std::uint32_t> pick(layer.size());
            for (std::size_t y = 0; y < layer.size(); ++y) pick[y] = layer[y][layer[y].size() / 2];
            sel[i].push_back(std::move(pick));
        }
    const auto law = lift_policy(b, Family::restricted, sel);
    const auto& inst = b.parent;
    if (inst.horizon().is_finite()) {
        for (std::size_t x = 0; x < inst.num_states(); ++x)
            if (evaluate_control_law(inst, x, law) != parent.values.layers[0][x]) return false;
        return true;
    }
    return evaluate_stationary_policy(inst, law[0]) == parent.values.layers[0];
}

struct PartChoice {
    std::uint32_t image;   // part-coordinate state index of rho_i B a
    std::uint32_t action;  // a representative projected input
};

// Distinct values of rho_i B a over the argmin set, in first-seen order.
std::vector<PartChoice> distinct_images(const DPInstance& sub, const std::vector<std::uint32_t>& set) {
    std::vector<PartChoice> out;
    for (auto a : set) {
        const auto img = sub.transitions().input_image[a];
        if (std::none_of(out.begin(), out.end(), [&](const PartChoice& c) { return c.image == img; })) out.push_back({img, a});
    }
    return out;
}

}  // namespace

RangeReport check_range_condition(const SubproblemBundle& b) {
    const auto& inst = b.parent;
    const Subspace rb = Subspace::column_space(inst.B());
    RangeReport r;
    r.range_dim = rb.dim();
    std::vector<Subspace> caps;
    std::size_t total = 0;
    for (const auto& part : b.decomposition.parts()) {
        caps.push_back(subspace_intersect(rb, part));
        r.intersection_dims.push_back(caps.back().dim());
        total += caps.back().dim();
    }
    const Subspace sum = subspace_sum(caps, inst.field(), inst.n());
    r.range_condition = sum == rb && sum.dim() == total;
    r.u_equals_sum_E = b.sum_E.dim() == inst.m();
    if (r.range_condition != r.u_equals_sum_E)
        throw TheoremViolation("range condition and U = sum E_i disagree");
    return r;
}

Lemma1Report check_lemma1_fh(const SubproblemBundle& b, const DPSolution& parent) {
    if (!b.parent.horizon().is_finite()) throw PreconditionFailed("the stage-wise argmin condition needs a finite horizon");
    const auto in_sum = input_membership(b.parent, b.sum_E);
    Lemma1Report r;
    r.holds = true;
    for (std::size_t t = 0; t < parent.argmin.sets.size(); ++t)
        if (auto x = selector_gap(parent.argmin.sets[t], in_sum)) {
            r.holds = false;
            r.witness = StateTime{*x, t};
            break;
        }
    return r;
}

SelectorReport check_lemma2_selector(const SubproblemBundle& b, const DPSolution& parent) {
    if (b.parent.horizon().is_finite()) throw PreconditionFailed("the stationary selector condition needs a discounted horizon");
    const auto in_sum = input_membership(b.parent, b.sum_E);
    SelectorReport r;
    r.witness = selector_gap(parent.argmin.sets.at(0), in_sum);
    r.stationary_witness_present = !r.witness.has_value();
    return r;
}

Def1Report check_def1(const SubproblemBundle& b, const DPSolution& parent, const std::vector<DPSolution>& restricted) {
    if (restricted.size() != b.size()) throw InvalidInput("need one restricted solution per part");
    require_same_stages(parent, restricted);
    Def1Report r;
    r.holds = true;
    for (std::size_t t = 0; t < parent.values.layers.size(); ++t) {
        const auto sum = summed_layer(b, restricted, t);
        const auto& J = parent.values.layers[t];
        for (std::size_t x = 0; x < J.size(); ++x)
            if (J[x] != sum[x]) {
                if (r.holds) r.witness = StateTime{x, t};
                r.holds = false;
                break;
            }
        if (t == 0) r.holds_at_initial_time = r.holds;
    }
    if (r.holds) r.lifted_policy_optimal = lifted_policy_optimal(b, parent, restricted);
    return r;
}

Def2Report check_def2(const SubproblemBundle& b, const DPSolution& parent, const std::vector<DPSolution>& projected,
                      const CheckOptions& opts) {
    if (projected.size() != b.size()) throw InvalidInput("need one projected solution per part");
    require_same_stages(parent, projected);
    const auto& inst = b.parent;
    const auto& f = inst.field();
    Def2Report r;

    r.values_equal = true;
    for (std::size_t t = 0; t < parent.values.layers.size() && r.values_equal; ++t) {
        const auto sum = summed_layer(b, projected, t);
        for (std::size_t x = 0; x < sum.size(); ++x)
            if (sum[x] != parent.values.layers[t][x]) {
                r.values_equal = false;
                r.witness = Def2Witness{x, t, {}, true};
                break;
            }
    }

    std::vector<VecFp> parent_vec(inst.num_states());
    for (std::size_t x = 0; x < parent_vec.size(); ++x) parent_vec[x] = inst.states().vector(x);
    std::vector<char> reachable(inst.num_states(), 0);
    bool diagram_failed = false;
    const std::size_t r_parts = b.size();
    for (std::size_t t = 0; t < parent.argmin.sets.size() && !diagram_failed; ++t) {
        // per part and part state, the distinct projected input effects
        std::vector<std::vector<std::vector<PartChoice>>> choices(r_parts);
        for (std::size_t i = 0; i < r_parts; ++i)
            for (const auto& set : projected[i].argmin.sets[t]) choices[i].push_back(distinct_images(b.projected[i], set));

        for (std::size_t x = 0; x < inst.num_states() && !diagram_failed; ++x) {
            std::vector<const std::vector<PartChoice>*> per(r_parts);
            std::size_t tuples = 1;
            bool capped = false;
            for (std::size_t i = 0; i < r_parts; ++i) {
                per[i] = &choices[i][b.part_state[i][x]];
                if (tuples > opts.tuple_cap / per[i]->size()) capped = true;
                tuples *= per[i]->size();
            }
            if (capped || tuples > opts.tuple_cap) {
                ++r.capped_points;
                continue;
            }
            const auto& set = parent.argmin.sets[t][x];
            for (auto u : set) reachable[inst.transitions().input_image[u]] = 1;
            std::vector<std::size_t> idx(r_parts, 0);
            for (;;) {
                ++r.tuples_checked;
                VecFp target(inst.n(), 0);
                for (std::size_t i = 0; i < r_parts; ++i)
                    target = vec_add(f, target, parent_vec[b.embed_state[i][(*per[i])[idx[i]].image]]);
                if (!reachable[inst.states().index(target)]) {
                    diagram_failed = true;
                    if (r.values_equal) {
                        Def2Witness w{x, t, {}, false};
                        for (std::size_t i = 0; i < r_parts; ++i) w.actions.push_back((*per[i])[idx[i]].action);
                        r.witness = std::move(w);
                    }
                    break;
                }
                std::size_t k = 0;
                while (k < r_parts && ++idx[k] == per[k]->size()) idx[k++] = 0;
                if (k == r_parts) break;
            }
            for (auto u : set) reachable[inst.transitions().input_image[u]] = 0;
        }
    }
    r.diagram = diagram_failed ? Verdict::fails : (r.capped_points ? Verdict::inconclusive : Verdict::holds);
    if (!r.values_equal || r.diagram == Verdict::fails)
        r.verdict = Verdict::fails;
    else
        r.verdict = r.diagram;
    return r;
}

bool check_hierarchy(const Def1Report& def1, const Def2Report& def2) {
    if (def2.verdict == Verdict::holds && !def1.holds)
        throw TheoremViolation("projected family decomposes the problem but the restricted family does not");
    return true;
}

std::optional<bool> check_thm2(const SubproblemBundle& b, const RangeReport& range, const std::vector<bool>& def1_verdicts) {
    const auto& inst = b.parent;
    if (rank(inst.A()) != inst.n()) return std::nullopt;
    bool ok = true;
    for (bool d : def1_verdicts) ok = ok && (d == range.range_condition);
    if (!ok && inst.cost().positive_definite())
        throw TheoremViolation("A is invertible but the range condition and the restricted decomposition disagree");
    return ok;
}

MonotoneReport check_monotone_T(const SubproblemBundle& b, std::size_t T, Exec exec) {
    if (T < 1) throw InvalidInput("horizon must be at least 1");
    MonotoneReport r;
    for (std::size_t k = 1; k <= T; ++k) {
        const auto bk = with_horizon(b, Horizon::finite(k));
        const auto parent = solve_finite(bk.parent, exec);
        const auto restricted = solve_bundle(bk, Family::restricted, exec);
        const auto d = check_def1(bk, parent, restricted);
        r.def1_by_T.push_back(d.holds);
        r.def1_initial_by_T.push_back(d.holds_at_initial_time);
    }
    for (std::size_t k = 0; k < T; ++k)
        for (std::size_t j = 0; j < k; ++j) {
            if (r.def1_by_T[k] && !r.def1_by_T[j]) r.consistent = false;
            if (r.def1_initial_by_T[k] && !r.def1_initial_by_T[j]) r.initial_time_consistent = false;
        }
    if (!r.consistent) throw TheoremViolation("restricted decomposition holds at a horizon but fails at a shorter one");
    return r;
}

DecompositionReport run_checks(const SubproblemBundle& b, const CheckOptions& opts) {
    const auto& inst = b.parent;
    Violations viol(opts.throw_on_violation);
    DecompositionReport rep;
    rep.finite = inst.horizon().is_finite();
    if (rep.finite) rep.T = inst.horizon().T();
    rep.alpha = inst.horizon().alpha();
    rep.cost_positive_definite = inst.cost().positive_definite();
    rep.A_invertible = rank(inst.A()) == inst.n();
    const bool pd = rep.cost_positive_definite;

    try {
        rep.range = check_range_condition(b);
    } catch (const TheoremViolation& e) {
        viol.require(false, e.what());
    }
    const DPSolution parent = solve(inst, opts.exec);

    // argmin-in-sum_E condition, and its independence from the choice of V
    bool selector_ok = false;
    if (rep.finite) {
        rep.lemma1 = check_lemma1_fh(b, parent);
        selector_ok = rep.lemma1->holds;
    } else {
        rep.selector = check_lemma2_selector(b, parent);
        selector_ok = rep.selector->stationary_witness_present;
    }
    std::vector<std::size_t> reversed(inst.m());
    std::iota(reversed.rbegin(), reversed.rend(), std::size_t{0});
    const auto alt = build_bundle(inst, b.decomposition, reversed);
    const bool alt_ok = rep.finite ? check_lemma1_fh(alt, parent).holds : check_lemma2_selector(alt, parent).stationary_witness_present;
    rep.complement_independent = alt_ok == selector_ok;
    viol.require(*rep.complement_independent, "argmin condition changed with the choice of complement V");

    rep.props.prop1 = prop1_holds(b);
    viol.require(rep.props.prop1, "minimum over E_i differs from the minimum over sum E_j at a part state");
    rep.props.ax_cap_bv_zero = ax_cap_bv(b, b.V).is_zero();
    if (pd) {
        rep.props.prop8 = prop8_holds(parent);
        viol.require(*rep.props.prop8, "optimal cost vanishes at a nonzero state or not at the origin");
        rep.props.prop9 = prop9_holds(inst, parent);
        viol.require(*rep.props.prop9, "an optimal input at the origin lies outside N(B)");
    }

    std::vector<DPSolution> restricted;
    if (opts.restricted) {
        restricted = solve_bundle(b, Family::restricted, opts.exec);
        rep.def1 = check_def1(b, parent, restricted);
        const auto& d1 = *rep.def1;
        viol.require(d1.holds == selector_ok, rep.finite ? "argmin condition and restricted decomposition disagree"
                                                         : "stationary selector condition and restricted decomposition disagree");
        viol.require(!rep.range.range_condition || d1.holds, "range condition holds but the restricted family does not decompose");
        if (d1.lifted_policy_optimal) viol.require(*d1.lifted_policy_optimal, "summed restricted policy is not optimal");
        if (selector_ok) {
            rep.props.prop2_5 = props2_5_hold(b, parent, restricted);
            viol.require(*rep.props.prop2_5, "optimal cost is not separable or does not restrict to the subproblem cost");
        }
        if (pd) {
            const bool alt_zero = ax_cap_bv(alt, alt.V).is_zero();
            rep.props.prop7_10 = !d1.holds || (rep.props.ax_cap_bv_zero && alt_zero);
            viol.require(*rep.props.prop7_10, "restricted decomposition holds but A(X) cap B(V) is nonzero");
        }
        std::vector<bool> verdicts = {d1.holds};
        if (rep.finite) {
            try {
                rep.monotone = check_monotone_T(b, rep.T, opts.exec);
            } catch (const TheoremViolation& e) {
                viol.require(false, e.what());
            }
            if (rep.monotone) verdicts = rep.monotone->def1_by_T;
        }
        try {
            rep.thm2_consistent = check_thm2(b, rep.range, verdicts);
        } catch (const TheoremViolation& e) {
            rep.thm2_consistent = false;
            viol.require(false, e.what());
        }
    }

    if (opts.projected) {
        const auto projected = solve_bundle(b, Family::projected, opts.exec);
        rep.def2 = check_def2(b, parent, projected, opts);
        viol.require(rep.def2->diagram != Verdict::holds || rep.def2->values_equal,
                     "commutative-diagram condition holds but the projected values do not add up");
    }

    if (rep.def1 && rep.def2) {
        try {
            rep.hierarchy_consistent = check_hierarchy(*rep.def1, *rep.def2);
        } catch (const TheoremViolation& e) {
            rep.hierarchy_consistent = false;
            viol.require(false, e.what());
        }
    }
    rep.violations = viol.take();
    return rep;
}

std::vector<std::string> verify_witnesses(const SubproblemBundle& b, const DecompositionReport& rep) {
    std::vector<std::string> bad;
    const auto& inst = b.parent;
    const auto& tr = inst.transitions();
    const auto parent = solve(inst, Exec::serial);
    const auto in_sum = input_membership(inst, b.sum_E);

    // min over all inputs vs min over sum_E of the next-stage value
    auto argmin_misses_sum = [&](std::size_t x, std::size_t t) {
        const auto& next = rep.finite ? parent.values.layers.at(t + 1) : parent.values.layers[0];
        std::optional<Rational> all, inside;
        for (std::size_t u = 0; u < tr.num_inputs; ++u) {
            const Rational& c = next[tr(x, u)];
            if (!all || c < *all) all = c;
            if (in_sum[u] && (!inside || c < *inside)) inside = c;
        }
        return !inside || *inside > *all;
    };

    if (rep.lemma1 && rep.lemma1->witness && !argmin_misses_sum(rep.lemma1->witness->state, rep.lemma1->witness->t))
        bad.push_back("argmin witness " + state_label(inst, rep.lemma1->witness->state));
    if (rep.selector && rep.selector->witness && !argmin_misses_sum(*rep.selector->witness, 0))
        bad.push_back("selector witness " + state_label(inst, *rep.selector->witness));

    if (rep.def1 && rep.def1->witness) {
        const auto sols = solve_bundle(b, Family::restricted, Exec::serial);
        const auto [x, t] = *rep.def1->witness;
        Rational sum = 0;
        for (std::size_t i = 0; i < b.size(); ++i) sum += sols[i].values.layers.at(t)[b.part_state[i][x]];
        if (sum == parent.values.layers.at(t)[x]) bad.push_back("restricted-family witness " + state_label(inst, x));
    }

    if (rep.def2 && rep.def2->witness) {
        const auto sols = solve_bundle(b, Family::projected, Exec::serial);
        const auto& w = *rep.def2->witness;
        if (w.value_mismatch) {
            Rational sum = 0;
            for (std::size_t i = 0; i < b.size(); ++i) sum += sols[i].values.layers.at(w.t)[b.part_state[i][w.state]];
            if (sum == parent.values.layers.at(w.t)[w.state]) bad.push_back("projected-family value witness " + state_label(inst, w.state));
        } else {
            bool ok = w.actions.size() == b.size();
            VecFp target(inst.n(), 0);
            for (std::size_t i = 0; ok && i < b.size(); ++i) {
                const auto& set = sols[i].argmin.sets.at(w.t)[b.part_state[i][w.state]];
                ok = std::find(set.begin(), set.end(), w.actions[i]) != set.end();
                const auto img = b.projected[i].transitions().input_image[w.actions[i]];
                target = vec_add(inst.field(), target, inst.states().vector(b.embed_state[i][img]));
            }
            if (ok) {
                const auto goal = inst.states().index(target);
                for (auto u : parent.argmin.sets.at(w.t)[w.state])
                    if (tr.input_image[u] == goal) ok = false;
            }
            if (!ok) bad.push_back("projected-family diagram witness " + state_label(inst, w.state));
        }
    }
    return bad;
}

}  // namespace dpdecomp

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

#include "dpdecomp/io.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace dpdecomp::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw InvalidInput((path.empty() ? "/" : path) + ": " + msg);
}

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t k) { return path + "/" + std::to_string(k); }

void require_keys(const Json& obj, const std::string& path, const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k)) fail(at(path, k), "unknown field");
}

const Json& member(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(at(path, key), "missing required field");
    return *it;
}

std::int64_t get_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<std::int64_t>();
}

std::size_t get_count(const Json& j, const std::string& path, std::size_t min) {
    const auto v = get_int(j, path);
    if (v < static_cast<std::int64_t>(min)) fail(path, "must be at least " + std::to_string(min));
    return static_cast<std::size_t>(v);
}

Rational get_rational(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) fail(path, "expected a rational string \"num/den\" or an integer");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const InvalidInput& e) {
        fail(path, e.what());
    }
}

std::vector<Rational> get_rationals(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    std::vector<Rational> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(get_rational(j[k], at(path, k)));
    return out;
}

std::int64_t reduce(std::int64_t v, std::uint32_t p) {
    const auto r = v % static_cast<std::int64_t>(p);
    return r < 0 ? r + p : r;
}

std::vector<std::vector<std::int64_t>> get_matrix(const Json& j, const std::string& path, std::size_t rows,
                                                  std::size_t cols, std::uint32_t p) {
    if (!j.is_array() || j.size() != rows) fail(path, "expected " + std::to_string(rows) + " rows");
    std::vector<std::vector<std::int64_t>> out(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto rp = at(path, r);
        if (!j[r].is_array() || j[r].size() != cols) fail(rp, "expected " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) out[r].push_back(reduce(get_int(j[r][c], at(rp, c)), p));
    }
    return out;
}

VecFp get_vector(const Json& j, const std::string& path, std::size_t n, std::uint32_t p) {
    if (!j.is_array() || j.size() != n) fail(path, "expected a vector of length " + std::to_string(n));
    VecFp v;
    for (std::size_t k = 0; k < n; ++k) v.push_back(static_cast<std::uint32_t>(reduce(get_int(j[k], at(path, k)), p)));
    return v;
}

// p^k, or 0 when it exceeds 2^40.
std::size_t bounded_pow(std::uint32_t p, std::size_t k) {
    std::size_t v = 1;
    for (std::size_t i = 0; i < k; ++i) {
        v *= p;
        if (v > (std::size_t{1} << 40)) return 0;
    }
    return v;
}

template <class F>
auto with_path(const std::string& path, F&& fn) {
    try {
        return fn();
    } catch (const InvalidInput& e) {
        fail(path, e.what());
    }
}

Json matrix_json(const std::vector<std::vector<std::int64_t>>& m) {
    Json out = Json::array();
    for (const auto& row : m) out.push_back(row);
    return out;
}

Json real_matrix_json(const RealMatrix& m) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(row);
    }
    return out;
}

Json rationals_json(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& q : v) out.push_back(rational_json(q));
    return out;
}

Json state_json(const DPInstance& inst, std::size_t x) { return {{"index", x}, {"x", vec_json(inst.states().vector(x))}}; }

std::optional<std::size_t> opt_index(const Json& j, const std::string& key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<std::size_t>();
}

}  // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InvalidInput(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
    }
}

InstanceFile parse_instance(const Json& j) {
    require_keys(j, "", {"$schema", "description", "field", "dims", "A", "B", "cost", "horizon", "decomposition"});
    InstanceFile f;
    const auto& field = member(j, "field", "");
    require_keys(field, "/field", {"prime"});
    const auto p = get_int(member(field, "prime", "/field"), "/field/prime");
    if (p < 2 || p > 65521 || !is_prime(static_cast<std::uint32_t>(p))) fail("/field/prime", "must be a prime below 65536");
    f.prime = static_cast<std::uint32_t>(p);

    const auto& dims = member(j, "dims", "");
    require_keys(dims, "/dims", {"n", "m"});
    f.n = get_count(member(dims, "n", "/dims"), "/dims/n", 1);
    f.m = get_count(member(dims, "m", "/dims"), "/dims/m", 0);
    if (f.n > 64 || f.m > 64) fail("/dims", "dimensions above 64 are not supported");

    f.A = get_matrix(member(j, "A", ""), "/A", f.n, f.n, f.prime);
    f.B = get_matrix(member(j, "B", ""), "/B", f.n, f.m, f.prime);

    const auto& cost = member(j, "cost", "");
    require_keys(cost, "/cost", {"table", "separable", "indicator", "semidefinite"});
    const int kinds = cost.contains("table") + cost.contains("separable") + cost.contains("indicator");
    if (kinds != 1) fail("/cost", "give exactly one of table, separable, indicator");
    if (cost.contains("semidefinite")) {
        if (!cost["semidefinite"].is_boolean()) fail("/cost/semidefinite", "expected a boolean");
        f.cost.semidefinite = cost["semidefinite"].get<bool>();
    }
    if (cost.contains("table")) {
        f.cost.kind = CostSpec::Kind::table;
        f.cost.table = get_rationals(cost["table"], "/cost/table");
        const auto want = bounded_pow(f.prime, f.n);
        if (want == 0 || f.cost.table.size() != want)
            fail("/cost/table", "expected p^n = " + (want ? std::to_string(want) : std::string("(too many)")) + " entries, got " +
                                    std::to_string(f.cost.table.size()));
    } else if (cost.contains("separable")) {
        f.cost.kind = CostSpec::Kind::separable;
        const auto& parts = cost["separable"];
        if (!parts.is_array()) fail("/cost/separable", "expected an array of per-part tables");
        for (std::size_t i = 0; i < parts.size(); ++i) f.cost.parts.push_back(get_rationals(parts[i], at("/cost/separable", i)));
    } else {
        f.cost.kind = CostSpec::Kind::indicator;
        f.cost.weights = get_rationals(cost["indicator"], "/cost/indicator");
    }

    if (j.contains("horizon")) {
        const auto& h = j["horizon"];
        require_keys(h, "/horizon", {"finite", "discounted"});
        if (h.contains("finite") == h.contains("discounted")) fail("/horizon", "give exactly one of finite, discounted");
        HorizonSpec hs;
        if (h.contains("finite")) {
            require_keys(h["finite"], "/horizon/finite", {"T"});
            hs.finite = true;
            hs.T = get_count(member(h["finite"], "T", "/horizon/finite"), "/horizon/finite/T", 1);
        } else {
            require_keys(h["discounted"], "/horizon/discounted", {"alpha"});
            hs.finite = false;
            hs.alpha = get_rational(member(h["discounted"], "alpha", "/horizon/discounted"), "/horizon/discounted/alpha");
            with_path("/horizon/discounted/alpha", [&] { return Horizon::discounted(hs.alpha); });
        }
        f.horizon = hs;
    }

    if (j.contains("decomposition")) {
        const auto& d = j["decomposition"];
        if (!d.is_array()) fail("/decomposition", "expected an array of parts");
        std::vector<std::vector<VecFp>> parts;
        for (std::size_t i = 0; i < d.size(); ++i) {
            const auto pp = at("/decomposition", i);
            if (!d[i].is_array() || d[i].empty()) fail(pp, "expected a non-empty array of basis vectors");
            std::vector<VecFp> basis;
            for (std::size_t k = 0; k < d[i].size(); ++k) basis.push_back(get_vector(d[i][k], at(pp, k), f.n, f.prime));
            parts.push_back(std::move(basis));
        }
        f.decomposition = std::move(parts);
    }
    return f;
}

InstanceFile read_instance_file(const std::string& path) { return parse_instance(read_json_file(path)); }

Json to_json(const InstanceFile& f) {
    Json j;
    j["field"] = {{"prime", f.prime}};
    j["dims"] = {{"n", f.n}, {"m", f.m}};
    j["A"] = matrix_json(f.A);
    j["B"] = matrix_json(f.B);
    Json cost;
    switch (f.cost.kind) {
        case CostSpec::Kind::table:
            cost["table"] = rationals_json(f.cost.table);
            break;
        case CostSpec::Kind::separable: {
            Json parts = Json::array();
            for (const auto& t : f.cost.parts) parts.push_back(rationals_json(t));
            cost["separable"] = parts;
            break;
        }
        case CostSpec::Kind::indicator:
            cost["indicator"] = rationals_json(f.cost.weights);
            break;
    }
    if (f.cost.semidefinite) cost["semidefinite"] = true;
    j["cost"] = cost;
    if (f.horizon) {
        if (f.horizon->finite)
            j["horizon"] = {{"finite", {{"T", f.horizon->T}}}};
        else
            j["horizon"] = {{"discounted", {{"alpha", rational_json(f.horizon->alpha)}}}};
    }
    if (f.decomposition) {
        Json parts = Json::array();
        for (const auto& basis : *f.decomposition) {
            Json b = Json::array();
            for (const auto& v : basis) b.push_back(vec_json(v));
            parts.push_back(b);
        }
        j["decomposition"] = parts;
    }
    return j;
}

namespace {

void guard(const InstanceFile& f, const InstanceOptions& opts) {
    // before any table of size p^n is built
    const auto states = bounded_pow(f.prime, f.n), inputs = bounded_pow(f.prime, f.m);
    if (states == 0 || states > opts.limits.max_states)
        fail("/dims/n", "p^n exceeds the state-count guard of " + std::to_string(opts.limits.max_states) + " (use --force)");
    if (inputs == 0 || inputs > opts.limits.max_inputs)
        fail("/dims/m", "p^m exceeds the input-count guard of " + std::to_string(opts.limits.max_inputs) + " (use --force)");
}

DirectSumDecomposition file_decomposition(const InstanceFile& f, const MatrixFp& A) {
    std::vector<Subspace> parts;
    for (const auto& basis : *f.decomposition) parts.push_back(Subspace::span(A.field(), f.n, basis));
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (parts[i].dim() != (*f.decomposition)[i].size())
            fail(at("/decomposition", i), "basis vectors are linearly dependent");
    return with_path("/decomposition", [&] { return verify_decomposition(A, parts); });
}

CostFunction build_cost(const InstanceFile& f, const DirectSumDecomposition* dec) {
    const auto check = f.cost.semidefinite ? CostCheck::semidefinite : CostCheck::positive_definite;
    return with_path("/cost", [&] {
        switch (f.cost.kind) {
            case CostSpec::Kind::separable:
                return CostFunction::separable(*dec, f.cost.parts, check);
            case CostSpec::Kind::indicator:
                return CostFunction::indicator(*dec, f.cost.weights, check);
            case CostSpec::Kind::table:
                break;
        }
        return CostFunction::from_table(PrimeField(f.prime), f.n, f.cost.table, check);
    });
}

}  // namespace

LoadedProblem load(const InstanceFile& f, const Horizon& h, const InstanceOptions& opts) {
    guard(f, opts);
    const PrimeField fld(f.prime);
    const MatrixFp A = MatrixFp::from_rows(fld, f.n, f.A);
    const MatrixFp B = MatrixFp::from_rows(fld, f.m, f.B);

    std::optional<PrimaryDecomposition> primary;
    std::optional<DirectSumDecomposition> dec;
    if (f.decomposition) {
        dec = file_decomposition(f, A);
    } else {
        primary = primary_decomposition(A);
        dec = primary->decomposition;
    }
    DPInstance inst(A, B, build_cost(f, &*dec), h, opts);
    return {std::move(inst), std::move(*dec), std::move(primary)};
}

DPInstance load_instance(const InstanceFile& f, const Horizon& h, const InstanceOptions& opts) {
    if (f.cost.kind != CostSpec::Kind::table) return load(f, h, opts).instance;
    guard(f, opts);
    const PrimeField fld(f.prime);
    const MatrixFp A = MatrixFp::from_rows(fld, f.n, f.A);
    if (f.decomposition) file_decomposition(f, A);
    return DPInstance(A, MatrixFp::from_rows(fld, f.m, f.B), build_cost(f, nullptr), h, opts);
}

InstanceFile from_instance(const DPInstance& inst, const DirectSumDecomposition& d) {
    InstanceFile f;
    f.prime = inst.field().modulus();
    f.n = inst.n();
    f.m = inst.m();
    auto rows = [](const MatrixFp& m) {
        std::vector<std::vector<std::int64_t>> out(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(m(i, j));
        return out;
    };
    f.A = rows(inst.A());
    f.B = rows(inst.B());
    f.cost.kind = CostSpec::Kind::table;
    f.cost.table = inst.cost().table();
    f.cost.semidefinite = !inst.cost().positive_definite();
    HorizonSpec hs;
    hs.finite = inst.horizon().is_finite();
    if (hs.finite)
        hs.T = inst.horizon().T();
    else
        hs.alpha = inst.horizon().alpha();
    f.horizon = hs;
    std::vector<std::vector<VecFp>> parts;
    for (const auto& p : d.parts()) {
        std::vector<VecFp> basis;
        for (std::size_t k = 0; k < p.dim(); ++k) basis.push_back(p.basis_vector(k));
        parts.push_back(std::move(basis));
    }
    f.decomposition = std::move(parts);
    return f;
}

Json vec_json(const VecFp& v) { return Json(std::vector<std::uint32_t>(v.begin(), v.end())); }

Json rational_json(const Rational& q) { return dpdecomp::to_string(q); }

Json horizon_json(const Horizon& h) {
    if (h.is_finite()) return {{"finite", {{"T", h.T()}}}};
    return {{"discounted", {{"alpha", rational_json(h.alpha())}}}};
}

Json decomposition_json(const DirectSumDecomposition& d) {
    Json parts = Json::array();
    for (const auto& p : d.parts()) {
        Json basis = Json::array();
        for (std::size_t k = 0; k < p.dim(); ++k) basis.push_back(vec_json(p.basis_vector(k)));
        parts.push_back({{"dim", p.dim()}, {"basis", basis}});
    }
    return parts;
}

Json primary_json(const PrimaryDecomposition& p) {
    Json factors = Json::array();
    for (const auto& f : p.factorization.factors)
        factors.push_back({{"factor", f.factor.to_string()}, {"multiplicity", f.multiplicity}});
    return {{"char_poly", p.factorization.char_poly.to_string()}, {"factors", factors},
            {"parts", decomposition_json(p.decomposition)}};
}

Json solution_json(const DPInstance& inst, const DPSolution& sol, bool all_t, bool argmin) {
    Json j;
    j["state_order"] = "x = sum_k x_k p^k (little-endian base p)";
    j["horizon"] = horizon_json(inst.horizon());
    j["iterations"] = sol.iterations;
    Json states = Json::array();
    for (std::size_t x = 0; x < inst.num_states(); ++x) states.push_back(vec_json(inst.states().vector(x)));
    j["states"] = states;
    j["J"] = rationals_json(sol.optimal_costs());
    if (all_t) {
        Json layers = Json::array();
        for (const auto& l : sol.values.layers) layers.push_back(rationals_json(l));
        j["layers"] = layers;
    }
    if (argmin) {
        Json inputs = Json::array();
        for (std::size_t u = 0; u < inst.num_inputs(); ++u) inputs.push_back(vec_json(inst.inputs().vector(u)));
        j["inputs"] = inputs;
        j["argmin"] = sol.argmin.sets;
    }
    return j;
}

Json vi_json(const ValueIterationResult& vi, const Rational& tol, const std::vector<Rational>& exact) {
    Rational gap = 0;
    for (std::size_t x = 0; x < exact.size(); ++x) {
        const Rational d = abs(Rational(vi.values[x] - exact[x]));
        if (d > gap) gap = d;
    }
    return {{"tol", rational_json(tol)},
            {"iterations", vi.iterations},
            {"last_update", rational_json(vi.last_update)},
            {"error_bound", rational_json(vi.error_bound)},
            {"gap_to_exact", rational_json(gap)},
            {"within_bound", gap <= vi.error_bound},
            {"J", rationals_json(vi.values)}};
}

Json report_json(const SubproblemBundle& b, const DecompositionReport& r) {
    const auto& inst = b.parent;
    auto st = [&](const StateTime& w) {
        Json j = state_json(inst, w.state);
        j["t"] = w.t;
        return j;
    };
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["horizon"] = horizon_json(inst.horizon());
    j["cost_positive_definite"] = r.cost_positive_definite;
    j["A_invertible"] = r.A_invertible;
    j["decomposition"] = decomposition_json(b.decomposition);
    Json edims = Json::array();
    for (const auto& e : b.E) edims.push_back(e.dim());
    j["E_dims"] = edims;
    j["V_dim"] = b.V.dim();
    j["range_condition"] = r.range.range_condition;
    j["u_equals_sum_Ei"] = r.range.u_equals_sum_E;
    j["range_dim"] = r.range.range_dim;
    j["intersection_dims"] = r.range.intersection_dims;

    j["lemma1_condition"] = nullptr;
    if (r.lemma1) {
        j["lemma1_condition"] = {{"holds", r.lemma1->holds}, {"witness", nullptr}};
        if (r.lemma1->witness) j["lemma1_condition"]["witness"] = st(*r.lemma1->witness);
    }
    j["lemma2_selector_condition"] = nullptr;
    if (r.selector) {
        j["lemma2_selector_condition"] = {{"stationary_witness_present", r.selector->stationary_witness_present},
                                          {"witness", nullptr}};
        if (r.selector->witness) j["lemma2_selector_condition"]["witness"] = state_json(inst, *r.selector->witness);
    }
    j["def1"] = nullptr;
    if (r.def1) {
        Json d = {{"holds", r.def1->holds}, {"holds_at_initial_time", r.def1->holds_at_initial_time}, {"witness", nullptr},
                  {"lifted_policy_optimal", nullptr}};
        if (r.def1->witness) d["witness"] = st(*r.def1->witness);
        if (r.def1->lifted_policy_optimal) d["lifted_policy_optimal"] = *r.def1->lifted_policy_optimal;
        j["def1"] = d;
    }
    j["def2"] = nullptr;
    if (r.def2) {
        Json d = {{"verdict", to_string(r.def2->verdict)},
                  {"values_equal", r.def2->values_equal},
                  {"diagram", to_string(r.def2->diagram)},
                  {"tuples_checked", r.def2->tuples_checked},
                  {"capped_points", r.def2->capped_points},
                  {"witness", nullptr}};
        if (r.def2->witness) {
            const auto& w = *r.def2->witness;
            Json wj = st(StateTime{w.state, w.t});
            wj["value_mismatch"] = w.value_mismatch;
            wj["action_indices"] = w.actions;
            Json acts = Json::array();
            for (auto a : w.actions) acts.push_back(vec_json(inst.inputs().vector(a)));
            wj["actions"] = acts;
            d["witness"] = wj;
        }
        j["def2"] = d;
    }
    auto opt = [](const std::optional<bool>& v) { return v ? Json(*v) : Json(nullptr); };
    j["hierarchy_consistent"] = opt(r.hierarchy_consistent);
    j["thm2_consistent"] = opt(r.thm2_consistent);
    j["complement_independent"] = opt(r.complement_independent);
    j["monotone"] = nullptr;
    if (r.monotone)
        j["monotone"] = {{"def1_by_T", r.monotone->def1_by_T},
                         {"def1_initial_by_T", r.monotone->def1_initial_by_T},
                         {"consistent", r.monotone->consistent},
                         {"initial_time_consistent", r.monotone->initial_time_consistent}};
    j["propositions"] = {{"prop1", r.props.prop1},
                         {"prop2_5", opt(r.props.prop2_5)},
                         {"ax_cap_bv_zero", r.props.ax_cap_bv_zero},
                         {"prop7_10", opt(r.props.prop7_10)},
                         {"prop8", opt(r.props.prop8)},
                         {"prop9", opt(r.props.prop9)}};
    j["violations"] = r.violations;
    return j;
}

DecompositionReport report_from_json(const Json& j) {
    DecompositionReport r;
    try {
        r.finite = j.at("horizon").contains("finite");
        if (r.finite) r.T = j["horizon"]["finite"]["T"].get<std::size_t>();
        const auto& l1 = j.at("lemma1_condition");
        if (!l1.is_null()) {
            Lemma1Report l;
            l.holds = l1.at("holds").get<bool>();
            if (!l1.at("witness").is_null()) l.witness = StateTime{l1["witness"]["index"], l1["witness"]["t"]};
            r.lemma1 = l;
        }
        const auto& sel = j.at("lemma2_selector_condition");
        if (!sel.is_null()) {
            SelectorReport s;
            s.stationary_witness_present = sel.at("stationary_witness_present").get<bool>();
            if (!sel.at("witness").is_null()) s.witness = opt_index(sel["witness"], "index");
            r.selector = s;
        }
        const auto& d1 = j.at("def1");
        if (!d1.is_null()) {
            Def1Report d;
            d.holds = d1.at("holds").get<bool>();
            if (!d1.at("witness").is_null()) d.witness = StateTime{d1["witness"]["index"], d1["witness"]["t"]};
            r.def1 = d;
        }
        const auto& d2 = j.at("def2");
        if (!d2.is_null()) {
            Def2Report d;
            d.values_equal = d2.at("values_equal").get<bool>();
            if (!d2.at("witness").is_null()) {
                const auto& w = d2["witness"];
                d.witness = Def2Witness{w.at("index"), w.at("t"), w.at("action_indices").get<std::vector<std::uint32_t>>(),
                                        w.at("value_mismatch").get<bool>()};
            }
            r.def2 = d;
        }
    } catch (const Json::exception& e) {
        throw InvalidInput(std::string("report: ") + e.what());
    }
    return r;
}

LqrFile parse_lqr(const Json& j) {
    require_keys(j, "", {"$schema", "description", "A", "B", "P", "T", "parts", "tol", "x0"});
    auto real_matrix = [](const Json& m, const std::string& path) {
        if (!m.is_array() || m.empty()) fail(path, "expected a non-empty array of rows");
        const std::size_t cols = m[0].is_array() ? m[0].size() : 0;
        RealMatrix out(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(cols));
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (!m[r].is_array() || m[r].size() != cols) fail(at(path, r), "rows must have equal length");
            for (std::size_t c = 0; c < cols; ++c) {
                if (!m[r][c].is_number()) fail(at(at(path, r), c), "expected a number");
                out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m[r][c].get<double>();
            }
        }
        return out;
    };
    LqrFile f;
    f.A = real_matrix(member(j, "A", ""), "/A");
    f.P = real_matrix(member(j, "P", ""), "/P");
    const auto n = f.A.rows();
    const auto& bj = member(j, "B", "");
    if (bj.is_array() && bj.size() == static_cast<std::size_t>(n) && bj[0].is_array() && bj[0].empty())
        f.B = RealMatrix(n, 0);
    else
        f.B = real_matrix(bj, "/B");
    f.T = get_count(member(j, "T", ""), "/T", 1);
    if (j.contains("tol")) {
        if (!j["tol"].is_number() || j["tol"].get<double>() <= 0) fail("/tol", "expected a positive number");
        f.tol = j["tol"].get<double>();
    }
    if (j.contains("parts")) {
        const auto& ps = j["parts"];
        if (!ps.is_array()) fail("/parts", "expected an array of parts");
        for (std::size_t i = 0; i < ps.size(); ++i) {
            // basis vectors are listed as rows; store them as columns
            const RealMatrix rows = real_matrix(ps[i], at("/parts", i));
            if (rows.cols() != n) fail(at("/parts", i), "basis vectors must have length n");
            f.parts.push_back(rows.transpose());
        }
    }
    if (j.contains("x0")) {
        const RealMatrix x = real_matrix(Json::array({j["x0"]}), "/x0");
        if (x.cols() != n) fail("/x0", "expected a vector of length n");
        f.x0 = RealVector(x.transpose());
    }
    return f;
}

Json lqr_json(const LqrFile& f, const RiccatiSolution& sol, const std::optional<BlockDiagonalReport>& block,
              const std::optional<GainIndexCheck>& gains) {
    Json j;
    j["T"] = f.T;
    Json K = Json::array(), G = Json::array(), Gn = Json::array();
    bool psd = true;
    for (const auto& k : sol.K) {
        K.push_back(real_matrix_json(k));
        psd = psd && is_psd(k);
    }
    for (const auto& g : sol.gains) G.push_back(real_matrix_json(g));
    for (const auto& g : sol.gains_next) Gn.push_back(real_matrix_json(g));
    j["K"] = K;
    j["gains"] = G;
    j["gains_next"] = Gn;
    j["all_K_psd"] = psd;
    j["block_diagonal"] = nullptr;
    if (block)
        j["block_diagonal"] = {{"holds", block->holds},
                               {"P_block_compatible", block->P_block_compatible},
                               {"max_offdiag_K", block->max_offdiag_K},
                               {"max_offdiag_gain", block->max_offdiag_gain},
                               {"max_block_mismatch", block->max_block_mismatch},
                               {"state_dims", block->state_dims},
                               {"input_dims", block->input_dims},
                               {"tol", f.tol}};
    j["gain_index"] = nullptr;
    if (gains)
        j["gain_index"] = {{"predicted", gains->predicted},
                           {"cost_with_K_t", gains->cost_current},
                           {"cost_with_K_t_plus_1", gains->cost_next},
                           {"K_t_matches", gains->current_matches},
                           {"K_t_plus_1_matches", gains->next_matches}};
    return j;
}

}  // namespace dpdecomp::io

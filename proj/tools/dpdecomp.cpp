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

// Command-line front end: solve, decompose, check, lqr, generate.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <limits>
#include <optional>

#include "dpdecomp/io.hpp"
#include "dpdecomp/random_instances.hpp"

using namespace dpdecomp;
using io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kValidation = 2;
constexpr int kViolation = 3;

struct Common {
    std::string file;
    std::string horizon;  // finite | discounted, empty: from the file
    std::size_t T = 0;
    std::string alpha;
    std::optional<std::uint64_t> seed;
    std::string suite = "unconstrained";
    bool force = false;
    bool serial = false;
    std::string output;
};

void add_common(CLI::App* cmd, Common& c, bool needs_horizon) {
    cmd->add_option("file", c.file, "instance file (JSON)");
    cmd->add_option("--seed", c.seed, "use a seeded random instance instead of a file");
    cmd->add_option("--suite", c.suite, "random instance family for --seed")
        ->check(CLI::IsMember({"range_condition", "invertible_A", "unconstrained"}));
    if (needs_horizon) {
        cmd->add_option("--horizon", c.horizon, "override the file's horizon")->check(CLI::IsMember({"finite", "discounted"}));
        cmd->add_option("--T", c.T, "finite horizon length")->check(CLI::PositiveNumber);
        cmd->add_option("--alpha", c.alpha, "discount factor as num/den");
    }
    cmd->add_flag("--force", c.force, "lift the p^n <= 2^16 and p^m <= 2^12 guard");
    cmd->add_flag("--serial", c.serial, "run the serial kernels");
    cmd->add_option("-o,--output", c.output, "write JSON here instead of stdout");
}

Suite parse_suite(const std::string& s) {
    if (s == "range_condition") return Suite::range_condition;
    if (s == "invertible_A") return Suite::invertible_A;
    return Suite::unconstrained;
}

InstanceOptions limits(const Common& c) {
    InstanceOptions o;
    if (c.force) {
        o.limits.max_states = std::numeric_limits<std::size_t>::max();
        o.limits.max_inputs = std::numeric_limits<std::size_t>::max();
    } else {
        o.limits.max_states = std::size_t{1} << 16;
        o.limits.max_inputs = std::size_t{1} << 12;
    }
    return o;
}

Horizon resolve_horizon(const Common& c, const std::optional<io::HorizonSpec>& from_file) {
    std::string kind = c.horizon;
    if (kind.empty() && !c.alpha.empty()) kind = "discounted";
    if (kind.empty() && c.T > 0) kind = "finite";
    if (kind == "finite") return Horizon::finite(c.T > 0 ? c.T : (from_file && from_file->finite ? from_file->T : 1));
    if (kind == "discounted") {
        if (!c.alpha.empty()) return Horizon::discounted(parse_rational(c.alpha));
        if (from_file && !from_file->finite) return Horizon::discounted(from_file->alpha);
        throw InvalidInput("--horizon discounted needs --alpha");
    }
    if (!from_file) throw InvalidInput("no horizon: give --horizon or a horizon field in the instance file");
    return from_file->finite ? Horizon::finite(from_file->T) : Horizon::discounted(from_file->alpha);
}

io::InstanceFile input_file(const Common& c) {
    if (c.seed) {
        if (!c.file.empty()) throw InvalidInput("give either a file or --seed, not both");
        const auto g = random_instance(parse_suite(c.suite), *c.seed, Horizon::finite(1));
        auto f = io::from_instance(g.instance, g.decomposition);
        f.horizon.reset();
        return f;
    }
    if (c.file.empty()) throw InvalidInput("no instance file given");
    return io::read_instance_file(c.file);
}

Horizon horizon_of(const Common& c, const io::InstanceFile& f) {
    std::optional<io::HorizonSpec> fh = f.horizon;
    if (!fh && c.seed) fh = io::HorizonSpec{true, 1, 0};
    return resolve_horizon(c, fh);
}

io::LoadedProblem load_problem(const Common& c) {
    const auto f = input_file(c);
    return io::load(f, horizon_of(c, f), limits(c));
}

void emit(const Common& c, const Json& j) {
    if (c.output.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(c.output);
    if (!out) throw InvalidInput(c.output + ": cannot open for writing");
    out << j.dump(2) << "\n";
}

Exec exec(const Common& c) { return c.serial ? Exec::serial : Exec::parallel; }

int cmd_solve(const Common& c, const std::string& tol_text, bool all_t, bool argmin) {
    const auto f = input_file(c);
    const auto inst = io::load_instance(f, horizon_of(c, f), limits(c));
    const auto sol = solve(inst, exec(c));
    Json j = io::solution_json(inst, sol, all_t, argmin);
    if (!inst.horizon().is_finite()) {
        const Rational tol = parse_rational(tol_text);
        if (tol <= 0) throw InvalidInput("--tol must be positive");
        j["method"] = "policy_iteration";
        j["value_iteration"] = io::vi_json(solve_discounted_vi(inst, tol, exec(c)), tol, sol.optimal_costs());
    } else {
        j["method"] = "backward_induction";
    }
    emit(c, j);
    return kOk;
}

int cmd_decompose(const Common& c) {
    const auto f = input_file(c);
    const PrimeField fld(f.prime);
    const MatrixFp A = MatrixFp::from_rows(fld, f.n, f.A);
    Json j;
    if (f.decomposition) {
        std::vector<Subspace> parts;
        for (const auto& basis : *f.decomposition) parts.push_back(Subspace::span(fld, f.n, basis));
        const auto d = verify_decomposition(A, parts);
        j = {{"source", "file"}, {"valid", true}, {"parts", io::decomposition_json(d)}};
    } else {
        j = io::primary_json(primary_decomposition(A));
        j["source"] = "primary";
    }
    emit(c, j);
    return kOk;
}

int cmd_check(const Common& c, const std::string& family, const std::string& verify_path) {
    const auto p = load_problem(c);
    const auto bundle = build_bundle(p.instance, p.decomposition);
    if (!verify_path.empty()) {
        const auto report = io::report_from_json(io::read_json_file(verify_path));
        const auto bad = verify_witnesses(bundle, report);
        emit(c, Json{{"verified", bad.empty()}, {"failures", bad}});
        return bad.empty() ? kOk : kInternal;
    }
    CheckOptions opts;
    opts.exec = exec(c);
    opts.restricted = family != "projected";
    opts.projected = family != "restricted";
    const auto report = run_checks(bundle, opts);
    Json j = io::report_json(bundle, report);
    if (p.primary) j["primary"] = io::primary_json(*p.primary);
    emit(c, j);
    return kOk;
}

int cmd_lqr(const Common& c) {
    const auto f = io::parse_lqr(io::read_json_file(c.file));
    const auto sol = riccati_backward(f.A, f.B, f.P, f.T);
    std::optional<BlockDiagonalReport> block;
    if (!f.parts.empty()) block = block_diagonal_check(f.A, f.B, f.P, f.parts, f.T, f.tol);
    const RealVector x0 = f.x0 ? *f.x0 : RealVector::Ones(f.A.rows());
    emit(c, io::lqr_json(f, sol, block, gain_index_check(f.A, f.B, f.P, sol, x0)));
    return kOk;
}

int cmd_generate(const Common& c) {
    if (!c.seed) throw InvalidInput("generate needs --seed");
    const auto p = load_problem(c);
    emit(c, io::to_json(io::from_instance(p.instance, p.decomposition)));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact decomposition checks for linear dynamic programs over GF(p)"};
    app.require_subcommand(1);
    Common c;
    std::string tol = "1/1000", family = "both", verify;
    bool all_t = false, argmin = false;

    auto* solve_cmd = app.add_subcommand("solve", "optimal costs (and argmin sets) of an instance");
    add_common(solve_cmd, c, true);
    solve_cmd->add_option("--tol", tol, "value-iteration tolerance as num/den");
    solve_cmd->add_flag("--all-t", all_t, "print J_t for every stage");
    solve_cmd->add_flag("--argmin", argmin, "print the full argmin sets");

    auto* dec_cmd = app.add_subcommand("decompose", "primary decomposition of A, or validate the file's decomposition");
    add_common(dec_cmd, c, false);

    auto* check_cmd = app.add_subcommand("check", "run every decomposition check");
    add_common(check_cmd, c, true);
    check_cmd->add_option("--family", family, "subproblem family")->check(CLI::IsMember({"restricted", "projected", "both"}));
    check_cmd->add_option("--verify-witness", verify, "re-verify the witnesses of a saved report");

    auto* lqr_cmd = app.add_subcommand("lqr", "Riccati recursion and block-diagonal check on a real instance");
    lqr_cmd->add_option("file", c.file, "LQR instance file (JSON)")->required();
    lqr_cmd->add_option("-o,--output", c.output, "write JSON here instead of stdout");

    auto* gen_cmd = app.add_subcommand("generate", "write a seeded random instance file");
    add_common(gen_cmd, c, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (*solve_cmd) return cmd_solve(c, tol, all_t, argmin);
        if (*dec_cmd) return cmd_decompose(c);
        if (*check_cmd) return cmd_check(c, family, verify);
        if (*lqr_cmd) return cmd_lqr(c);
        if (*gen_cmd) return cmd_generate(c);
    } catch (const TheoremViolation& e) {
        std::cerr << "theorem violation: " << e.what() << "\n";
        return kViolation;
    } catch (const NotDecomposable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}

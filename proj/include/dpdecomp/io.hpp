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

#include <json.hpp>

#include "dpdecomp/decomp_check.hpp"
#include "dpdecomp/invariant.hpp"
#include "dpdecomp/lqr.hpp"

namespace dpdecomp::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct CostSpec {
    enum class Kind { table, separable, indicator };
    Kind kind = Kind::table;
    std::vector<Rational> table;                 // kind == table
    std::vector<std::vector<Rational>> parts;    // kind == separable
    std::vector<Rational> weights;               // kind == indicator
    bool semidefinite = false;                   // accept g(x) = 0 at nonzero x
};

struct HorizonSpec {
    bool finite = true;
    std::size_t T = 1;
    Rational alpha = 0;
};

/// In-memory form of an instance file. Matrix entries are reduced mod p and
/// rationals are canonical, so to_json(parse(j)) is a fixed point.
struct InstanceFile {
    std::uint32_t prime = 2;
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<std::vector<std::int64_t>> A;
    std::vector<std::vector<std::int64_t>> B;
    CostSpec cost;
    std::optional<HorizonSpec> horizon;
    // each part as a list of basis vectors of length n
    std::optional<std::vector<std::vector<VecFp>>> decomposition;
};

/// Throws InvalidInput whose message starts with the JSON pointer of the
/// offending field, e.g. "/cost/table/3: ...".
InstanceFile parse_instance(const Json& j);
/// Reads and parses a file; JSON syntax errors are reported with line and
/// column.
InstanceFile read_instance_file(const std::string& path);
Json read_json_file(const std::string& path);
Json to_json(const InstanceFile& f);

struct LoadedProblem {
    DPInstance instance;
    DirectSumDecomposition decomposition;
    std::optional<PrimaryDecomposition> primary;  // set when the file gave no decomposition
};

/// Builds the instance under horizon h. Without a decomposition in the file
/// the primary decomposition of A is computed (NotDecomposable when r = 1).
LoadedProblem load(const InstanceFile& f, const Horizon& h, const InstanceOptions& opts = {});
/// The instance alone. A decomposition is computed only when the cost is
/// given per part; a decomposition present in the file is still validated.
DPInstance load_instance(const InstanceFile& f, const Horizon& h, const InstanceOptions& opts = {});

/// The instance file equivalent of a generated instance (explicit cost table).
InstanceFile from_instance(const DPInstance& inst, const DirectSumDecomposition& d);

Json vec_json(const VecFp& v);
Json rational_json(const Rational& q);
Json horizon_json(const Horizon& h);
Json decomposition_json(const DirectSumDecomposition& d);
Json primary_json(const PrimaryDecomposition& p);
Json solution_json(const DPInstance& inst, const DPSolution& sol, bool all_t, bool argmin);
Json vi_json(const ValueIterationResult& vi, const Rational& tol, const std::vector<Rational>& exact);
Json report_json(const SubproblemBundle& b, const DecompositionReport& r);

/// Reads back the fields of a report that verify_witnesses needs.
DecompositionReport report_from_json(const Json& j);

struct LqrFile {
    RealMatrix A, B, P;
    std::size_t T = 1;
    std::vector<RealMatrix> parts;  // empty: only the recursion is run
    double tol = 1e-9;
    std::optional<RealVector> x0;
};

LqrFile parse_lqr(const Json& j);
Json lqr_json(const LqrFile& f, const RiccatiSolution& sol, const std::optional<BlockDiagonalReport>& block,
              const std::optional<GainIndexCheck>& gains);

}  // namespace dpdecomp::io

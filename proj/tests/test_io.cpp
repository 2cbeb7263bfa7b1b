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

#include <fstream>

#include "dpdecomp/io.hpp"
#include "dpdecomp/random_instances.hpp"
#include "worked_examples.hpp"

using namespace dpdecomp;
using namespace testing_support;
using io::Json;

namespace {

std::string data(const std::string& name) { return std::string(DPDECOMP_DATA_DIR) + "/" + name; }

Json minimal() {
    return Json::parse(R"({
      "field": {"prime": 3}, "dims": {"n": 2, "m": 1},
      "A": [[1, 0], [0, 2]], "B": [[1], [0]],
      "cost": {"indicator": ["1", "1"]},
      "horizon": {"finite": {"T": 2}},
      "decomposition": [[[1, 0]], [[0, 1]]]
    })");
}

// Message of the InvalidInput thrown by fn, or "" when nothing is thrown.
template <class F>
std::string error_of(F&& fn) {
    try {
        fn();
    } catch (const InvalidInput& e) {
        return e.what();
    }
    return "";
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

TEST_CASE("instance files round-trip to a fixed point") {
    for (const char* name : {"example2.json", "example3.json", "example2_primary.json", "bad_cost.json", "identity.json"}) {
        CAPTURE(name);
        const Json once = io::to_json(io::read_instance_file(data(name)));
        const Json twice = io::to_json(io::parse_instance(once));
        CHECK(once == twice);
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = random_instance(Suite::unconstrained, seed, Horizon::discounted(Rational(2, 3)));
        const Json once = io::to_json(io::from_instance(g.instance, g.decomposition));
        CHECK(io::to_json(io::parse_instance(once)) == once);
        const auto back = io::load(io::parse_instance(once), Horizon::discounted(Rational(2, 3)));
        CHECK(back.instance.A() == g.instance.A());
        CHECK(back.instance.B() == g.instance.B());
        CHECK(back.instance.cost().table() == g.instance.cost().table());
        CHECK(back.decomposition.parts() == g.decomposition.parts());
    }
}

TEST_CASE("entries are reduced mod p and rationals canonicalized") {
    Json j = minimal();
    j["A"] = {{-1, 4}, {3, 5}};
    j["cost"] = {{"indicator", {"2/4", 3}}};
    const auto f = io::parse_instance(j);
    CHECK(f.A == std::vector<std::vector<std::int64_t>>{{2, 1}, {0, 2}});
    CHECK(f.cost.weights == std::vector<Rational>{Rational(1, 2), Rational(3)});
    CHECK(io::to_json(f)["cost"]["indicator"] == Json({"1/2", "3/1"}));
}

TEST_CASE("diagnostics name the offending field") {
    auto err = [](Json j) { return error_of([&] { io::parse_instance(j); }); };
    Json j = minimal();
    j["foo"] = 1;
    CHECK(starts_with(err(j), "/foo:"));
    j = minimal();
    j["dims"].erase("n");
    CHECK(starts_with(err(j), "/dims/n:"));
    j = minimal();
    j["A"][1] = {1};
    CHECK(starts_with(err(j), "/A/1:"));
    j = minimal();
    j["B"][0][0] = "x";
    CHECK(starts_with(err(j), "/B/0/0:"));
    j = minimal();
    j["cost"] = {{"table", {"0", "1", "1"}}};
    CHECK(starts_with(err(j), "/cost/table:"));
    j = minimal();
    j["cost"]["indicator"][1] = "1/0";
    CHECK(starts_with(err(j), "/cost/indicator/1:"));
    j = minimal();
    j["cost"]["table"] = Json::array();
    CHECK(starts_with(err(j), "/cost:"));
    j = minimal();
    j["horizon"] = {{"discounted", {{"alpha", "3/2"}}}};
    CHECK(starts_with(err(j), "/horizon/discounted/alpha:"));
    j = minimal();
    j["horizon"] = {{"finite", {{"T", 0}}}};
    CHECK(starts_with(err(j), "/horizon/finite/T:"));
    j = minimal();
    j["field"]["prime"] = 4;
    CHECK(starts_with(err(j), "/field/prime:"));
    j = minimal();
    j["decomposition"][0] = {{1}};
    CHECK(starts_with(err(j), "/decomposition/0/0:"));
    CHECK(err(minimal()).empty());
}

TEST_CASE("load validates the decomposition and the cost") {
    const auto h = Horizon::finite(1);
    Json j = minimal();
    j["decomposition"] = {{{1, 0}, {2, 0}}, {{0, 1}}};
    CHECK(starts_with(error_of([&] { io::load(io::parse_instance(j), h); }), "/decomposition/0:"));

    j = minimal();
    j["A"] = {{1, 1}, {0, 2}};
    CHECK_THROWS_AS(io::load(io::parse_instance(j), h), NotInvariant);

    j = minimal();
    j["cost"] = {{"table", {"0", "1", "1", "1", "0", "1", "1", "1", "1"}}};
    CHECK(starts_with(error_of([&] { io::load(io::parse_instance(j), h); }), "/cost:"));
    j["cost"]["semidefinite"] = true;
    CHECK_NOTHROW(io::load(io::parse_instance(j), h));

    InstanceOptions small;
    small.limits.max_states = 8;
    CHECK(starts_with(error_of([&] { io::load(io::parse_instance(minimal()), h, small); }), "/dims/n:"));
}

TEST_CASE("example files load as the worked examples") {
    const auto h = Horizon::finite(1);
    const auto e2 = io::load(io::read_instance_file(data("example2.json")), h);
    const auto want2 = ex2_instance(h);
    CHECK(e2.instance.A() == want2.A());
    CHECK(e2.instance.B() == want2.B());
    CHECK(e2.instance.cost().table() == want2.cost().table());
    CHECK(e2.decomposition.parts() == ex2_parts());
    CHECK_FALSE(e2.primary);

    const auto e3 = io::load(io::read_instance_file(data("example3.json")), h);
    CHECK(e3.instance.cost().table() == ex3_instance(h).cost().table());

    const auto p = io::load(io::read_instance_file(data("example2_primary.json")), h);
    REQUIRE(p.primary);
    CHECK(p.decomposition.size() == 2);
}

TEST_CASE("malformed JSON is reported with line and column") {
    const std::string path = "malformed_instance.json";
    {
        std::ofstream out(path);
        out << "{\n  \"field\": {\"prime\": 3},\n  \"dims\": {\"n\": 2,, \"m\": 1}\n}\n";
    }
    const auto msg = error_of([&] { io::read_instance_file(path); });
    CHECK(msg.find(path + ":3:") != std::string::npos);
}

TEST_CASE("reports read back and their witnesses re-verify") {
    for (auto suite : {Suite::invertible_A, Suite::unconstrained})
        for (std::uint64_t seed = 0; seed < 15; ++seed)
            for (auto h : {Horizon::finite(2), Horizon::discounted(Rational(1, 3))}) {
                const auto g = random_instance(suite, seed, h);
                const auto b = build_bundle(g.instance, g.decomposition);
                CheckOptions o;
                o.exec = Exec::serial;
                const auto rep = run_checks(b, o);
                const Json j = io::report_json(b, rep);
                const auto back = io::report_from_json(j);
                CHECK(back.finite == rep.finite);
                CHECK(back.def1->holds == rep.def1->holds);
                CHECK(back.def1->witness.has_value() == rep.def1->witness.has_value());
                CHECK(back.def2->witness.has_value() == rep.def2->witness.has_value());
                if (rep.def2->witness) CHECK(back.def2->witness->actions == rep.def2->witness->actions);
                CHECK(verify_witnesses(b, back).empty());
                CHECK(j["schema_version"] == io::kSchemaVersion);
            }
    CHECK_THROWS_AS(io::report_from_json(Json::object()), InvalidInput);
}

TEST_CASE("solution JSON lists every state") {
    const auto inst = ex2_instance(Horizon::finite(1));
    const auto sol = solve(inst);
    const Json j = io::solution_json(inst, sol, true, true);
    CHECK(j["J"].size() == 27);
    CHECK(j["states"][7] == Json({1, 2, 0}));
    CHECK(j["layers"].size() == 2);
    CHECK(j["argmin"][0].size() == 27);
    CHECK(j["inputs"].size() == 9);
}

TEST_CASE("LQR files") {
    const auto f = io::parse_lqr(io::read_json_file(data("lqr_blocks.json")));
    CHECK(f.A.rows() == 4);
    CHECK(f.B.cols() == 2);
    CHECK(f.parts.size() == 2);
    CHECK(f.parts[0].rows() == 4);
    CHECK(f.parts[0].cols() == 2);
    CHECK(f.x0->size() == 4);
    CHECK(f.T == 6);
    CHECK(starts_with(error_of([] { io::parse_lqr(Json::parse(R"({"A": [[1]], "B": [[1]], "P": [[1]], "T": 0})")); }), "/T:"));
    CHECK(starts_with(error_of([] { io::parse_lqr(Json::parse(R"({"A": [[1]], "B": [["a"]], "P": [[1]], "T": 1})")); }),
                      "/B/0/0:"));
}

TEST_CASE("a table cost needs no decomposition to load the instance") {
    Json j = minimal();
    j.erase("decomposition");
    j["A"] = {{1, 0}, {0, 1}};
    j["cost"] = {{"table", {"0", "1", "1", "1", "2", "1", "1", "1", "2"}}};
    const auto f = io::parse_instance(j);
    CHECK_THROWS_AS(io::load(f, Horizon::finite(1)), NotDecomposable);
    const auto inst = io::load_instance(f, Horizon::finite(1));
    CHECK(inst.cost().table() == io::load_instance(io::parse_instance(io::to_json(f)), Horizon::finite(1)).cost().table());
    j["cost"] = {{"indicator", {"1", "1"}}};
    CHECK_THROWS_AS(io::load_instance(io::parse_instance(j), Horizon::finite(1)), NotDecomposable);
}

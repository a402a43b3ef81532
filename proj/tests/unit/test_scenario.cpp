/*
 * Copyright 2026 The tvopt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <string>

#include "doctest.h"
#include "test_util.hpp"
#include "tvopt/errors.hpp"
#include "tvopt/scenario.hpp"

using namespace tvopt;
using tvopt::test::mat;
using tvopt::test::vecd;

namespace {

std::string config_path(const char* name) { return std::string(TVOPT_TEST_CONFIG_DIR) + "/" + name; }

const char* kMinimal = R"({"scenario": "quadratic", "A": [[0.5, 0, 0, 0, 0], [0, 0.6, 0, 0, 0],
    [0, 0, 0.7, 0, 0], [0, 0, 0, 0.8, 0], [0, 0, 0, 0, 0.9]],
    "z0": [1, 1, 1, 0, 1], "x0": [0, 0], "N0": 4, "N": 12})";

}  // namespace

TEST_CASE("built-in quadratic") {
    const ScenarioConfig c = builtin_scenario("quadratic");
    Matrix a = Matrix::Zero(5, 5);
    a(0, 1) = 1.0;
    a(1, 0) = -1.0;
    a(2, 2) = 0.98;
    a(3, 3) = 0.95;
    a(4, 4) = 0.981;
    CHECK(c.a == a);
    CHECK(c.z0 == vecd({-85.8, -77.9, 1047, 329, 669}));
    CHECK(c.x0(0) == doctest::Approx(std::sqrt(2.0) / 2.0));
    CHECK(c.x0(1) == c.x0(0));
    CHECK(c.n0 == 8);
    CHECK(c.n == 26);
    CHECK(c.eta == 1e-3);
    CHECK(c.tvgd.t_end == 150);
    CHECK(c.solver == SolverKind::ClosedForm);
    CHECK(c.transform_policy == TransformPolicy::Strict);
}

TEST_CASE("built-in polynomial3 and nonpoly") {
    const ScenarioConfig p = builtin_scenario("polynomial3");
    CHECK(p.a.rows() == 14);
    CHECK(p.a(0, 1) == 1.0);
    CHECK(p.a(1, 0) == -1.0);
    CHECK(p.a.diagonal().tail(12) ==
          vecd({0.98, 0.99, 0.99, 0.95, 0.88, 0.87, 0.87, 0.89, 0.87, 0.89, 0.89, 0.85}));
    CHECK(p.z0 == vecd({-63.7, 110.2, 2.23, 2.46, 2.46, 6.24, 0.5, 0.3, 0.3, 0.4, 0.3, 0.4, 0.4, 0.6}));
    CHECK(p.n0 == 18);
    CHECK(p.n == 60);
    CHECK(p.tvgd.beta == 1e-2);
    CHECK(p.tvgd.inner_steps == 500);
    CHECK(p.solver == SolverKind::Tvgd);

    const ScenarioConfig n = builtin_scenario("nonpoly");
    CHECK(n.a == Matrix(vecd({0.99, 0.97, 0.98}).asDiagonal()));
    CHECK(n.n0 == 6);
    CHECK(n.n == 30);
    CHECK(n.x0.size() == 1);

    CHECK(builtin_names().size() == 3);
    CHECK_THROWS_AS((void)builtin_scenario("cubic"), ConfigError);
}

TEST_CASE("block_diagonal") {
    const Matrix b = block_diagonal({mat(1, 1, {2}), mat(2, 2, {1, 2, 3, 4})});
    CHECK(b == mat(3, 3, {2, 0, 0, 0, 1, 2, 0, 3, 4}));
    CHECK_THROWS_AS((void)block_diagonal({mat(1, 2, {1, 2})}), ConfigError);
}

TEST_CASE("schedule") {
    const ScenarioConfig c = builtin_scenario("quadratic");
    const ProbeSchedule s = c.schedule();
    CHECK(s.n0 == 8);
    CHECK(s.n == 26);
    CHECK(s.x0 == c.x0);
    CHECK(s.rule.kind == ProbeKind::GradientDescent);
    CHECK(s.rule.eta == 1e-3);
}

TEST_CASE("parse_scenario") {
    SUBCASE("defaults") {
        const ScenarioConfig c = parse_scenario(kMinimal);
        CHECK(c.name == "quadratic");
        CHECK(c.model == "quadratic");
        CHECK(c.solver == SolverKind::ClosedForm);
        CHECK(c.probe == ProbeKind::GradientDescent);
        CHECK(c.transform_policy == TransformPolicy::Strict);
        CHECK(c.tol.relative == 1e-9);
        CHECK(c.eta == 1e-3);
        CHECK(c.tvgd.t_end == 150);
    }
    SUBCASE("file matches the built-in") {
        const ScenarioConfig f = load_scenario(config_path("quadratic.json"));
        const ScenarioConfig b = builtin_scenario("quadratic");
        CHECK(f.a == b.a);
        CHECK(f.z0 == b.z0);
        CHECK((f.x0 - b.x0).norm() < 1e-16);
        CHECK(f.n0 == b.n0);
        CHECK(f.n == b.n);
    }
    SUBCASE("optional keys") {
        const ScenarioConfig c = parse_scenario(R"({"scenario": "s", "model": "nonpoly",
            "A_blocks": [[0.9, 0.8, 0.7]], "z0": [1, 2, 3], "x0": [0.1], "N0": 3, "N": 9,
            "beta": 0.05, "D": 20, "T_end": 40, "probe_rule": "random", "probe_half_width": 0.5,
            "transform_policy": "minimum_norm", "rank_tol": 1e-12, "seed": 42, "output_dir": "o"})");
        CHECK(c.name == "s");
        CHECK(c.solver == SolverKind::Tvgd);
        CHECK(c.a == Matrix(vecd({0.9, 0.8, 0.7}).asDiagonal()));
        CHECK(c.tvgd.beta == 0.05);
        CHECK(c.tvgd.inner_steps == 20);
        CHECK(c.tvgd.t_end == 40);
        CHECK(c.probe == ProbeKind::Random);
        CHECK(c.probe_half_width == 0.5);
        CHECK(c.transform_policy == TransformPolicy::MinimumNorm);
        CHECK(c.tol.relative == 1e-12);
        CHECK(c.seed == 42);
        CHECK(c.output_dir == "o");
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS((void)load_scenario(config_path("malformed.json")), ConfigError);
        CHECK_THROWS_AS((void)load_scenario(config_path("unknown_key.json")), ConfigError);
        CHECK_THROWS_AS((void)load_scenario(config_path("missing.json")), ConfigError);
        CHECK_THROWS_AS((void)parse_scenario("[1, 2]"), ConfigError);
        CHECK_THROWS_AS((void)parse_scenario(R"({"scenario": "quadratic"})"), ConfigError);
        // Both A and A_blocks.
        CHECK_THROWS_AS((void)parse_scenario(R"({"scenario": "nonpoly", "A": [[1,0,0],[0,1,0],[0,0,1]],
            "A_blocks": [[1, 1, 1]], "z0": [1, 2, 3], "x0": [0.1], "N0": 3, "N": 9})"),
                        ConfigError);
        // Wrong dimensions for the model.
        CHECK_THROWS_AS((void)parse_scenario(R"({"scenario": "nonpoly", "A_blocks": [[1, 1]],
            "z0": [1, 2], "x0": [0.1], "N0": 3, "N": 9})"),
                        ConfigError);
        // N must exceed N0.
        CHECK_THROWS_AS((void)parse_scenario(R"({"scenario": "nonpoly", "A_blocks": [[0.9, 0.8, 0.7]],
            "z0": [1, 2, 3], "x0": [0.1], "N0": 9, "N": 9})"),
                        ConfigError);
        CHECK_THROWS_AS((void)parse_scenario(R"({"scenario": "nonpoly", "A_blocks": [[0.9, 0.8, 0.7]],
            "z0": [1, 2, 3], "x0": [0.1], "N0": 3, "N": 9, "solver": "closed_form"})"),
                        ConfigError);
        CHECK_THROWS_AS((void)parse_scenario(R"({"scenario": "nonpoly", "A_blocks": [[0.9, 0.8, 0.7]],
            "z0": [1, "two", 3], "x0": [0.1], "N0": 3, "N": 9})"),
                        ConfigError);
        CHECK_THROWS_AS((void)parse_scenario(R"({"scenario": "nonpoly", "A_blocks": [[0.9, 0.8, 0.7]],
            "z0": [1, 2, 3], "x0": [0.1], "N0": 3, "N": 9, "probe_rule": "walk"})"),
                        ConfigError);
        CHECK_THROWS_AS((void)parse_scenario(R"({"scenario": "cubic", "A_blocks": [[0.9]],
            "z0": [1], "x0": [0.1], "N0": 3, "N": 9})"),
                        ConfigError);
    }
}

TEST_CASE("to_string") {
    CHECK(to_string(TransformPolicy::Strict) == "strict");
    CHECK(to_string(TransformPolicy::MinimumNorm) == "minimum_norm");
    CHECK(to_string(SolverKind::ClosedForm) == "closed_form");
    CHECK(to_string(SolverKind::Tvgd) == "tvgd");
    CHECK(to_string(ProbeKind::GradientDescent) == "gradient_descent");
    CHECK(to_string(ProbeKind::Hold) == "hold");
    CHECK(to_string(ProbeKind::Random) == "random");
}

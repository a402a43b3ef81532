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

#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "tvopt/cost_model.hpp"
#include "tvopt/errors.hpp"
#include "tvopt/oracle.hpp"
#include "tvopt/scenario.hpp"
#include "tvopt/solvers.hpp"

using namespace tvopt;
using tvopt::test::vecd;

TEST_CASE("quadratic_argmin") {
    const CostModel model = make_quadratic_model();
    const Vector z = vecd({1, 0, 1, 0, 1});
    const Vector x = quadratic_argmin(z);
    CHECK(x(0) == doctest::Approx(-0.5));
    CHECK(x(1) == doctest::Approx(0.0));
    CHECK(cost_gradient(model, x, z).norm() < 1e-14);

    CHECK(quadratic_argmin(vecd({0, 0, 2, 0.5, 3})).norm() == 0.0);

    CHECK_THROWS_AS((void)quadratic_argmin(vecd({1, 0, 1, 0, -1})), NoMinimizerError);
    CHECK_THROWS_AS((void)quadratic_argmin(vecd({1, 0, 1, 1, 1})), NoMinimizerError);
    CHECK_THROWS_AS((void)quadratic_argmin(vecd({1, 0, 1})), ShapeError);

    const ScenarioConfig cfg = builtin_scenario("quadratic");
    const Vector xs = quadratic_argmin(cfg.z0);
    CHECK(cost_gradient(model, xs, cfg.z0).norm() < 1e-10);
}

TEST_CASE("quadratic_argmin is stationary along the quadratic trajectory") {
    const ScenarioConfig cfg = builtin_scenario("quadratic");
    const CostModel model = make_quadratic_model();
    const ParameterSystem sys(cfg.a, cfg.z0);
    for (long t = 0; t <= 150; t += 7) {
        const Vector z = parameter_at(sys, t);
        const Vector x = quadratic_argmin(z);
        INFO("t = " << t);
        CHECK(cost_gradient(model, x, z).norm() < 1e-9 * z.norm());
    }
}

TEST_CASE("static_gd_step") {
    CHECK(static_gd_step(vecd({1, 1}), vecd({1000, -1000}), 1e-3) == vecd({0, 2}));
    CHECK(static_gd_step(vecd({0.5}), vecd({0}), 1.0) == vecd({0.5}));
    CHECK_THROWS_AS((void)static_gd_step(vecd({1, 1}), vecd({1}), 1e-3), ShapeError);
}

TEST_CASE("tv_gradient_descent") {
    const CostModel model = make_quadratic_model();
    const Vector z = vecd({1, -2, 1, 0.2, 2});
    const ParameterSource frozen = [&](long) { return z; };

    SUBCASE("converges to the minimizer of a fixed cost") {
        const TvgdConfig cfg{1e-2, 2000, 3};
        const TvgdTrajectory traj = tv_gradient_descent(model, frozen, vecd({3, -3}), cfg, 1);
        REQUIRE(traj.x.size() == 3);
        CHECK(traj.t_start == 1);
        CHECK((traj.at(3) - quadratic_argmin(z)).norm() < 1e-10);
    }
    SUBCASE("zero parameters leave x unchanged") {
        const ParameterSource zero = [](long) { return Vector(Vector::Zero(5)); };
        const TvgdTrajectory traj = tv_gradient_descent(model, zero, vecd({0.3, 0.4}), TvgdConfig{1e-2, 10, 5}, 0);
        for (const auto& x : traj.x) CHECK(x == vecd({0.3, 0.4}));
    }
    SUBCASE("each inner step decreases the cost for small beta") {
        Vector x = vecd({2, 2});
        double prev = evaluate_cost(model, x, z);
        for (int d = 0; d < 50; ++d) {
            const TvgdTrajectory one = tv_gradient_descent(model, frozen, x, TvgdConfig{1e-2, 1, 0}, 0);
            x = one.at(0);
            const double cur = evaluate_cost(model, x, z);
            CHECK(cur <= prev);
            prev = cur;
        }
    }
    SUBCASE("divergence names t and d") {
        const ParameterSource bad = [](long) { return vecd({0, 0, -1, 0, -1}); };
        try {
            (void)tv_gradient_descent(model, bad, vecd({1, 1}), TvgdConfig{1.0, 500, 10}, 4);
            FAIL("expected DivergenceError");
        } catch (const DivergenceError& e) {
            CHECK(e.time() == 4);
            CHECK(e.inner_step() > 1);
            CHECK(e.inner_step() <= 500);
        }
    }
    SUBCASE("configuration is validated") {
        CHECK_THROWS_AS(TvgdConfig({0.0, 10, 5}).validate(0), ConfigError);
        CHECK_THROWS_AS(TvgdConfig({1e-2, 0, 5}).validate(0), ConfigError);
        CHECK_THROWS_AS(TvgdConfig({1e-2, 10, 5}).validate(6), ConfigError);
        CHECK_NOTHROW(TvgdConfig({1e-2, 10, 5}).validate(5));
        CHECK_THROWS_AS((void)tv_gradient_descent(model, frozen, vecd({1}), TvgdConfig{}, 0), ShapeError);
    }
}

TEST_CASE("reference_optimum") {
    const TvgdConfig cfg{};
    SUBCASE("quadratic delegates to the closed form") {
        const CostModel model = make_quadratic_model();
        const Vector z = vecd({1, 0, 1, 0, 1});
        const std::vector<Vector> seeds;
        CHECK(reference_optimum(model, z, cfg, seeds) == quadratic_argmin(z));
    }
    SUBCASE("nonpoly without a minimizer") {
        const CostModel model = make_nonpoly_model();
        const std::vector<Vector> seeds{vecd({0.0}), vecd({1.0})};
        CHECK_THROWS_AS((void)reference_optimum(model, vecd({1, 0, 0}), cfg, seeds), ReferenceUnavailableError);
    }
    SUBCASE("nonpoly scenario at t = 0") {
        const ScenarioConfig sc = builtin_scenario("nonpoly");
        const CostModel model = make_nonpoly_model();
        const std::vector<Vector> seeds{sc.x0};
        const Vector x = reference_optimum(model, sc.z0, sc.tvgd, seeds);
        CHECK(cost_gradient(model, x, sc.z0).norm() < kStationarityTolerance);
    }
    SUBCASE("polynomial scenario at t = 0 has no stationary point") {
        const ScenarioConfig sc = builtin_scenario("polynomial3");
        const CostModel model = make_polynomial_model();
        const std::vector<Vector> seeds{sc.x0, vecd({0, 0}), vecd({10, -10}), vecd({-30, 30})};
        CHECK_THROWS_AS((void)reference_optimum(model, sc.z0, sc.tvgd, seeds), ReferenceUnavailableError);
    }
    SUBCASE("invalid seeds are skipped") {
        const CostModel model = make_nonpoly_model();
        const ScenarioConfig sc = builtin_scenario("nonpoly");
        const std::vector<Vector> seeds{vecd({0, 0}), vecd({std::nan("")}), sc.x0};
        CHECK_NOTHROW((void)reference_optimum(model, sc.z0, sc.tvgd, seeds));
    }
}

TEST_CASE("static baseline lags the moving optimum") {
    const ScenarioConfig cfg = builtin_scenario("quadratic");
    const CostModel model = make_quadratic_model();
    const ParameterSystem sys(cfg.a, cfg.z0);
    // Static update only, from x0 through T.
    Vector x = cfg.x0;
    for (long t = 1; t <= 150; ++t) {
        x = static_gd_step(x, query_gradient(sys, model, x, t - 1), cfg.eta);
    }
    const double lag = (x - quadratic_argmin(parameter_at(sys, 150))).norm();
    CHECK(lag > 0.1);
}

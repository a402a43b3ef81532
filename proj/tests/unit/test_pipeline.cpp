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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "test_util.hpp"
#include "tvopt/errors.hpp"
#include "tvopt/pipeline.hpp"
#include "tvopt/report.hpp"
#include "tvopt/scenario.hpp"
#include "tvopt/solvers.hpp"

using namespace tvopt;
using nlohmann::json;

namespace {

const ExperimentReport& quadratic_report() {
    static const ExperimentReport r = run_scenario(builtin_scenario("quadratic"));
    return r;
}

std::string csv_of(const ExperimentReport& r) {
    std::ostringstream s;
    write_trajectory_csv(s, r);
    return s.str();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("quadratic experiment") {
    const ExperimentReport& r = quadratic_report();
    REQUIRE(r.rows.size() == 151);
    long constant = 0, probe = 0, predict = 0;
    for (const auto& row : r.rows) {
        if (row.phase == Phase::Constant) ++constant;
        if (row.phase == Phase::Probe) ++probe;
        if (row.phase == Phase::Predict) ++predict;
    }
    CHECK(constant == 9);
    CHECK(probe == 18);
    CHECK(predict == 124);
    CHECK(r.solver_ok);
    CHECK(r.solver_status == "ok");

    CHECK(r.summary.rank_r == 5);
    CHECK(r.summary.rank_m == 25);
    CHECK(r.summary.required_rank == 25);
    REQUIRE(r.summary.a_frobenius_error);
    CHECK(*r.summary.a_frobenius_error < 1e-6);
    CHECK(r.summary.thm1_necessary);
    REQUIRE(r.summary.thm2_sufficient);
    CHECK(*r.summary.thm2_sufficient);
    CHECK(r.summary.assumptions.a1);
    CHECK(r.summary.assumptions.a2);
    CHECK(r.summary.assumptions.a3);
    CHECK(r.z_prediction_error < 1e-6);
    CHECK(r.summary.reconstruction_error < 1e-8);

    for (long t = 27; t <= 150; ++t) {
        INFO("t = " << t);
        CHECK(r.row(t).err_pred < 1e-6);
        CHECK((r.row(t).xstar - quadratic_argmin(r.z_true[static_cast<std::size_t>(t)])).norm() == 0.0);
    }
    CHECK(r.row(150).err_gd > 0.1);
    // Probe rows replay the collected data.
    for (long t = 0; t <= 26; ++t) {
        CHECK(r.row(t).xhat == r.data.x[static_cast<std::size_t>(t)]);
        CHECK(r.row(t).xgd == r.data.x[static_cast<std::size_t>(t)]);
    }
}

TEST_CASE("reports are deterministic") {
    const ExperimentReport again = run_scenario(builtin_scenario("quadratic"));
    CHECK(csv_of(again) == csv_of(quadratic_report()));
    CHECK(summary_json(again) == summary_json(quadratic_report()));
}

TEST_CASE("trajectory csv") {
    const std::string csv = csv_of(quadratic_report());
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,phase,xhat_1,xhat_2,xstar_1,xstar_2,xgd_1,xgd_2,err_pred,err_gd");
    long lines = 0;
    std::string line;
    std::string first;
    while (std::getline(in, line)) {
        if (lines == 0) first = line;
        ++lines;
    }
    CHECK(lines == 151);
    CHECK(first.rfind("0,constant,", 0) == 0);

    ExperimentReport empty = quadratic_report();
    empty.rows.clear();
    CHECK(csv_of(empty) == header + "\n");
}

TEST_CASE("format_double") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(INFINITY) == "inf");
    CHECK(format_double(-INFINITY) == "-inf");
}

TEST_CASE("summary json") {
    const json s = json::parse(summary_json(quadratic_report()));
    for (const char* key : {"scenario", "rank_r", "residual", "A_frobenius_error", "thm1_necessary",
                            "thm2_sufficient", "a1", "a2", "a3"}) {
        CHECK_MESSAGE(s.contains(key), key);
    }
    CHECK(s["scenario"] == "quadratic");
    CHECK(s["rank_r"] == 5);
    CHECK(s["A_frobenius_error"].get<double>() < 1e-6);
    CHECK(s["thm1_necessary"] == true);
    CHECK(s["thm2_sufficient"] == true);
    CHECK(s["A_hat"].size() == 5);
}

TEST_CASE("emit_report") {
    const auto dir = std::filesystem::temp_directory_path() / "tvopt_test_pipeline_emit";
    std::filesystem::remove_all(dir);
    emit_report(quadratic_report(), dir, true);
    CHECK(std::filesystem::exists(dir / "trajectory.csv"));
    CHECK(std::filesystem::exists(dir / "summary.json"));
    CHECK(std::filesystem::exists(dir / "plots" / "err_pred.dat"));
    CHECK(std::filesystem::exists(dir / "plots" / "xhat_1.dat"));
    CHECK(slurp(dir / "trajectory.csv") == csv_of(quadratic_report()));

    const auto blocker = dir / "blocker";
    std::ofstream(blocker) << "x";
    CHECK_THROWS_AS(emit_report(quadratic_report(), blocker / "sub"), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("nonpoly experiment") {
    const ExperimentReport r = run_scenario(builtin_scenario("nonpoly"));
    CHECK(r.solver_ok);
    CHECK(r.summary.rank_r == 3);
    for (long t = 31; t <= 150; ++t) {
        REQUIRE(std::isfinite(r.row(t).err_pred));
        CHECK(r.row(t).err_pred < 1e-3);
    }
}

TEST_CASE("identification failures name the phase") {
    SUBCASE("zero parameters") {
        ScenarioConfig c = builtin_scenario("quadratic");
        c.z0.setZero();
        try {
            (void)run_scenario(c);
            FAIL("expected PipelineError");
        } catch (const PipelineError& e) {
            CHECK(e.phase() == "subspace identification");
        }
    }
    SUBCASE("held probe") {
        ScenarioConfig c = builtin_scenario("quadratic");
        c.probe = ProbeKind::Hold;
        try {
            (void)run_scenario(c);
            FAIL("expected PipelineError");
        } catch (const PipelineError& e) {
            CHECK(e.phase() == "transform recovery");
        }
    }
    SUBCASE("configuration errors pass through") {
        ScenarioConfig c = builtin_scenario("quadratic");
        c.n = c.n0;
        CHECK_THROWS_AS((void)run_scenario(c), ConfigError);
    }
}

TEST_CASE("check_scenario") {
    const CheckReport q = check_scenario(builtin_scenario("quadratic"));
    CHECK(q.assumptions.a1);
    CHECK(q.rank_r == 5);
    CHECK(q.thm1_necessary);
    REQUIRE(q.thm2_sufficient);
    CHECK(*q.thm2_sufficient);

    const json j = json::parse(check_report_json(q));
    CHECK(j["scenario"] == "quadratic");
    CHECK(j["a1"] == true);
    CHECK(j["rank_M"] == 25);

    const CheckReport p = check_scenario(builtin_scenario("polynomial3"));
    CHECK_FALSE(p.assumptions.a1);
    CHECK(p.rank_r < 14);
}

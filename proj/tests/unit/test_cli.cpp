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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using tvopt::cli::cli_main;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "tvopt");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Result r;
    r.code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string config_path(const char* name) { return std::string(TVOPT_TEST_CONFIG_DIR) + "/" + name; }

std::filesystem::path scratch(const char* name) {
    auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("run a built-in scenario") {
    const auto dir = scratch("tvopt_test_cli_run");
    const Result r = invoke({"run", "--builtin", "quadratic", "--out", dir.string(), "--plots"});
    INFO(r.err);
    CHECK(r.code == 0);
    CHECK(r.out.find("rank r = 5") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "trajectory.csv"));
    CHECK(std::filesystem::exists(dir / "plots" / "err_gd.dat"));
    std::ifstream in(dir / "summary.json");
    const auto s = nlohmann::json::parse(in);
    CHECK(s["rank_r"] == 5);
    std::filesystem::remove_all(dir);
}

TEST_CASE("run a config file") {
    const auto dir = scratch("tvopt_test_cli_file");
    const Result r = invoke({"run", config_path("quadratic.json"), "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(std::filesystem::exists(dir / "summary.json"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("check reports violated assumptions without failing") {
    const Result r = invoke({"check", config_path("repeated_eigs.json")});
    INFO(r.err);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["a1"] == false);
    CHECK(j["scenario"] == "repeated_eigs");
}

TEST_CASE("bad input exits with 2") {
    CHECK(invoke({"run", config_path("malformed.json")}).code == 2);
    CHECK(invoke({"check", config_path("unknown_key.json")}).code == 2);
    CHECK(invoke({"run", "--builtin", "cubic"}).code == 2);
    CHECK(invoke({"run"}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"props", "--trials", "0"}).code == 2);
    const Result r = invoke({"check", config_path("missing.json")});
    CHECK(r.code == 2);
    CHECK(r.err.find("missing.json") != std::string::npos);
}

TEST_CASE("help exits with 0") {
    const Result r = invoke({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("run") != std::string::npos);
}

TEST_CASE("props") {
    const Result r = invoke({"props", "--trials", "20", "--seed", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("0 property failures") != std::string::npos);
}

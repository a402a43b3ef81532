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

#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "tvopt/errors.hpp"
#include "tvopt/pipeline.hpp"
#include "tvopt/properties.hpp"
#include "tvopt/report.hpp"
#include "tvopt/scenario.hpp"

namespace tvopt::cli {

namespace {

struct Source {
    std::string config;
    std::string builtin;

    [[nodiscard]] ScenarioConfig load() const {
        if (config.empty() == builtin.empty()) {
            throw ConfigError("give either a config file or --builtin <name>");
        }
        return builtin.empty() ? load_scenario(config) : builtin_scenario(builtin);
    }
};

void add_source(CLI::App& cmd, Source& src) {
    cmd.add_option("config", src.config, "scenario file (JSON)");
    cmd.add_option("--builtin", src.builtin, "built-in scenario: quadratic, polynomial3 or nonpoly");
}

std::filesystem::path output_dir(const ScenarioConfig& cfg, const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("TVOPT_OUT_DIR"); env != nullptr && *env != '\0') {
        return std::filesystem::path(env) / cfg.name;
    }
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    return std::filesystem::path("out") / cfg.name;
}

double max_error_after(const ExperimentReport& rep, long t0) {
    double worst = 0.0;
    for (const ReportRow& row : rep.rows) {
        if (row.t <= t0) continue;
        if (!std::isfinite(row.err_pred)) return std::numeric_limits<double>::quiet_NaN();
        worst = std::max(worst, row.err_pred);
    }
    return worst;
}

int do_run(const Source& src, const std::string& out_flag, bool plots, std::ostream& out) {
    const ScenarioConfig cfg = src.load();
    const ExperimentReport rep = run_scenario(cfg);
    const std::filesystem::path dir = output_dir(cfg, out_flag);
    emit_report(rep, dir, plots);

    out << "scenario " << cfg.name << ": rank r = " << rep.summary.rank_r << ", rank M = "
        << rep.summary.rank_m << "/" << rep.summary.required_rank << '\n';
    if (rep.summary.a_frobenius_error) {
        out << "  A relative error      " << format_double(*rep.summary.a_frobenius_error) << '\n';
    }
    out << "  z relative error      " << format_double(rep.z_prediction_error) << '\n';
    out << "  max error for t > N   " << format_double(max_error_after(rep, cfg.n)) << '\n';
    out << "  baseline error at T   " << format_double(rep.rows.back().err_gd) << '\n';
    out << "  solver                " << rep.solver_status << '\n';
    out << "  wrote " << (dir / "trajectory.csv").string() << " and summary.json\n";
    return rep.solver_ok ? kExitOk : kExitFailure;
}

int do_check(const Source& src, std::ostream& out) {
    out << check_report_json(check_scenario(src.load())) << '\n';
    return kExitOk;
}

int do_props(long trials, std::uint64_t seed, std::ostream& out) {
    if (trials < 1) throw ConfigError("--trials must be positive");
    long failures = 0;
    for (const PropertyResult& r : run_property_suites(trials, seed)) {
        out << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.failures << "/" << r.trials
            << " failures, worst " << format_double(r.worst);
        if (!r.detail.empty()) out << " (" << r.detail << ")";
        out << '\n';
        failures += r.failures;
    }
    out << failures << " property failures\n";
    return failures == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Identify time-varying cost parameters from gradient samples and track the optimum"};
    app.require_subcommand(1);

    Source run_src;
    std::string out_flag;
    bool plots = false;
    CLI::App* run = app.add_subcommand("run", "run a scenario and write trajectory.csv and summary.json");
    add_source(*run, run_src);
    run->add_option("--out", out_flag, "output directory");
    run->add_flag("--plots", plots, "also write two-column plot data");

    Source check_src;
    CLI::App* check = app.add_subcommand("check", "report assumptions and rank certificates only");
    add_source(*check, check_src);

    long trials = 200;
    std::uint64_t seed = 7;
    CLI::App* props = app.add_subcommand("props", "run the randomized property suites");
    props->add_option("--trials", trials, "trials per suite");
    props->add_option("--seed", seed, "base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitBadConfig;
    }

    try {
        if (run->parsed()) return do_run(run_src, out_flag, plots, out);
        if (check->parsed()) return do_check(check_src, out);
        return do_props(trials, seed, out);
    } catch (const ConfigError& e) {
        err << "tvopt: bad config: " << e.what() << '\n';
        return kExitBadConfig;
    } catch (const Error& e) {
        err << "tvopt: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace tvopt::cli

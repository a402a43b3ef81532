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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tvopt/coordinate_recovery.hpp"
#include "tvopt/oracle.hpp"
#include "tvopt/scenario.hpp"
#include "tvopt/types.hpp"

namespace tvopt {

enum class Phase {
    Constant,  ///< t in [0, N0], probe held at x0
    Probe,     ///< t in (N0, N], probe moved by the static update
    Predict,   ///< t in (N, T_end], solution from predicted parameters
};

[[nodiscard]] std::string_view to_string(Phase phase);

/// One time index of the experiment. Errors are NaN when either side is
/// unavailable.
struct ReportRow {
    long t = 0;
    Phase phase = Phase::Constant;
    Vector xhat;
    Vector xstar;
    Vector xgd;
    double err_pred = 0.0;
    double err_gd = 0.0;
};

struct IdentificationSummary {
    Eigen::Index rank_r = 0;
    Eigen::Index rank_m = 0;
    Eigen::Index required_rank = 0;
    double residual = 0.0;
    std::optional<Matrix> a_hat;
    std::optional<double> a_frobenius_error;  ///< relative to |A_true|_F
    bool thm1_necessary = false;              ///< stacked C has full column rank
    std::optional<bool> thm2_sufficient;      ///< W certificate; empty if A-bar is defective
    AssumptionReport assumptions;
    Vector hankel_singular_values;
    double reconstruction_error = 0.0;        ///< relative |C(x) z-hat - y| over the dataset
};

struct ExperimentReport {
    ScenarioConfig config;
    Dataset data;
    IdentificationResult identification;
    IdentificationSummary summary;
    std::vector<ReportRow> rows;  ///< t = 0..T_end
    std::vector<Vector> z_true;   ///< t = 0..T_end
    std::vector<Vector> z_hat;    ///< t = 0..T_end
    double z_prediction_error = 0.0;  ///< max_t |z-hat(t) - z(t)| / |z(t)|
    bool solver_ok = true;
    std::string solver_status = "ok";

    [[nodiscard]] const ReportRow& row(long t) const { return rows.at(static_cast<std::size_t>(t)); }
};

/**
 * Runs one experiment end to end: data collection, subspace
 * identification, transform recovery, prediction and solution for
 * t > N, the static baseline and the reference optima.
 *
 * Identification failures are rethrown as PipelineError naming the
 * phase. A solver failure in the prediction phase does not throw; the
 * report keeps the rows computed so far, fills the rest with NaN and
 * clears solver_ok.
 */
[[nodiscard]] ExperimentReport run_scenario(const ScenarioConfig& cfg);

/// Assumption and certificate verdicts without solving anything.
struct CheckReport {
    std::string scenario;
    AssumptionReport assumptions;
    Eigen::Index rank_r = 0;
    Eigen::Index rank_m = 0;
    Eigen::Index required_rank = 0;
    bool thm1_necessary = false;
    std::optional<bool> thm2_sufficient;
    std::string note;  ///< why a verdict is missing, if one is
};

[[nodiscard]] CheckReport check_scenario(const ScenarioConfig& cfg);

[[nodiscard]] std::string check_report_json(const CheckReport& report);

}  // namespace tvopt

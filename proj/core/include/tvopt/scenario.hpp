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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tvopt/coordinate_recovery.hpp"
#include "tvopt/oracle.hpp"
#include "tvopt/solvers.hpp"
#include "tvopt/types.hpp"

namespace tvopt {

enum class SolverKind {
    ClosedForm,  ///< quadratic_argmin on the predicted parameters
    Tvgd,        ///< time-varying gradient descent on the predicted parameters
};

/// Everything needed to reproduce one experiment.
struct ScenarioConfig {
    std::string name;        ///< label; also the default output subdirectory
    std::string model;       ///< cost model name, see model_by_name()
    Matrix a;                ///< true parameter dynamics
    Vector z0;
    Vector x0;
    long n0 = 0;
    long n = 0;
    double eta = 1e-3;
    TvgdConfig tvgd{};
    SolverKind solver = SolverKind::Tvgd;
    ProbeKind probe = ProbeKind::GradientDescent;
    double probe_half_width = 1.0;
    TransformPolicy transform_policy = TransformPolicy::Strict;
    RankTolerance tol{};
    std::uint64_t seed = 0;
    std::string output_dir;  ///< empty: out/<name>

    /// Throws ConfigError on inconsistent dimensions or indices.
    void validate() const;

    [[nodiscard]] ProbeSchedule schedule() const;
};

/// Block-diagonal matrix from dense blocks.
[[nodiscard]] Matrix block_diagonal(const std::vector<Matrix>& blocks);

/// "quadratic", "polynomial3" or "nonpoly", with the published constants.
[[nodiscard]] ScenarioConfig builtin_scenario(std::string_view name);

[[nodiscard]] std::vector<std::string> builtin_names();

/**
 * Parses a scenario document (a flat JSON object).
 *
 * Keys: scenario, model, A or A_blocks, z0, x0, N0, N, eta, beta, D,
 * T_end, solver, probe_rule, probe_half_width, transform_policy,
 * rank_tol, seed, output_dir. In A_blocks a nested array is a dense
 * block and a flat array is a list of diagonal entries. Unknown keys are
 * rejected. Throws ConfigError.
 */
[[nodiscard]] ScenarioConfig parse_scenario(std::string_view text);

[[nodiscard]] ScenarioConfig load_scenario(const std::string& path);

[[nodiscard]] std::string_view to_string(TransformPolicy policy);
[[nodiscard]] std::string_view to_string(SolverKind solver);
[[nodiscard]] std::string_view to_string(ProbeKind probe);

}  // namespace tvopt

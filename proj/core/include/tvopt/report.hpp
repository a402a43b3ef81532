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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "tvopt/pipeline.hpp"

namespace tvopt {

/// `t,phase,xhat_1..,xstar_1..,xgd_1..,err_pred,err_gd`, 17 significant digits.
void write_trajectory_csv(std::ostream& out, const ExperimentReport& report);

/// Summary document with the identification metrics, as JSON text.
[[nodiscard]] std::string summary_json(const ExperimentReport& report);

/**
 * Writes trajectory.csv and summary.json into `dir` (created if needed)
 * and, when `plots` is set, one two-column file per plotted series under
 * dir/plots. Throws IoError naming the offending path.
 */
void emit_report(const ExperimentReport& report, const std::filesystem::path& dir, bool plots = false);

/// "%.17g", with non-finite values spelled nan, inf or -inf.
[[nodiscard]] std::string format_double(double v);

}  // namespace tvopt

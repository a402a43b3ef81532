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

#include <functional>
#include <span>
#include <vector>

#include "tvopt/cost_model.hpp"
#include "tvopt/types.hpp"

namespace tvopt {

/// Unique minimizer of x^T H x + b^T x for z = (b1, b2, h11, h12, h22),
/// i.e. x = -(2H)^{-1} b with H = [h11 h12; h12 h22]. Throws
/// NoMinimizerError unless both eigenvalues of H are positive.
[[nodiscard]] Vector quadratic_argmin(const Vector& z);

/// x_prev - eta * y_prev
[[nodiscard]] Vector static_gd_step(const Vector& x_prev, const Vector& y_prev, double eta);

struct TvgdConfig {
    double beta = 1e-2;     ///< inner step size
    long inner_steps = 500; ///< D
    long t_end = 150;       ///< last outer time index

    void validate(long t_start) const;
};

/// Parameter trajectory queried by time index: ground truth or a prediction.
using ParameterSource = std::function<Vector(long)>;

struct TvgdTrajectory {
    long t_start = 0;
    std::vector<Vector> x;  ///< x[k] is the inner-loop output for t_start + k

    [[nodiscard]] const Vector& at(long t) const { return x.at(static_cast<std::size_t>(t - t_start)); }
};

/// Iterate magnitude that aborts descent with a DivergenceError.
inline constexpr double kDivergenceBound = 1e9;

/**
 * Time-varying gradient descent.
 *
 * For each t in [t_start, t_end], runs `inner_steps` gradient steps
 * against the frozen cost f(., z(t)) starting from the previous step's
 * output (x_start for the first step), and records the final iterate.
 */
[[nodiscard]] TvgdTrajectory tv_gradient_descent(const CostModel& model, const ParameterSource& z_source,
                                                 const Vector& x_start, const TvgdConfig& cfg, long t_start);

/**
 * Ground-truth minimizer of f(., z).
 *
 * Delegates to quadratic_argmin for the quadratic model. Otherwise runs
 * fine-step gradient descent (beta / 10, up to 20 D iterations) from each
 * seed and returns the lowest-cost point whose gradient norm is below
 * 1e-9. Throws ReferenceUnavailableError when no seed gets there.
 */
[[nodiscard]] Vector reference_optimum(const CostModel& model, const Vector& z, const TvgdConfig& cfg,
                                       std::span<const Vector> seeds);

inline constexpr double kStationarityTolerance = 1e-9;

}  // namespace tvopt

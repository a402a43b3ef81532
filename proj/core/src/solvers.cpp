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

#include "tvopt/solvers.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tvopt/errors.hpp"

namespace tvopt {

Vector quadratic_argmin(const Vector& z) {
    if (z.size() != 5) {
        throw ShapeError("quadratic_argmin: expected z of length 5");
    }
    Eigen::Matrix2d h;
    h << z(2), z(3), z(3), z(4);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 0.0)) {
        throw NoMinimizerError("quadratic cost has no minimizer: H is not positive definite");
    }
    const Eigen::Vector2d b(z(0), z(1));
    const Eigen::Vector2d x = -(2.0 * h).ldlt().solve(b);
    return Vector(x);
}

Vector static_gd_step(const Vector& x_prev, const Vector& y_prev, double eta) {
    if (x_prev.size() != y_prev.size()) {
        throw ShapeError("static_gd_step: x and y lengths differ");
    }
    return x_prev - eta * y_prev;
}

void TvgdConfig::validate(long t_start) const {
    if (!(beta > 0.0)) throw ConfigError("time-varying descent: beta must be positive");
    if (inner_steps < 1) throw ConfigError("time-varying descent: D must be at least 1");
    if (t_end < t_start) {
        throw ConfigError("time-varying descent: T_end " + std::to_string(t_end) +
                          " precedes the start index " + std::to_string(t_start));
    }
}

TvgdTrajectory tv_gradient_descent(const CostModel& model, const ParameterSource& z_source,
                                   const Vector& x_start, const TvgdConfig& cfg, long t_start) {
    cfg.validate(t_start);
    if (x_start.size() != model.n()) {
        throw ShapeError("tv_gradient_descent: x_start has the wrong length");
    }
    TvgdTrajectory traj;
    traj.t_start = t_start;
    traj.x.reserve(static_cast<std::size_t>(cfg.t_end - t_start + 1));
    Vector x = x_start;
    for (long t = t_start; t <= cfg.t_end; ++t) {
        const Vector z = z_source(t);
        for (long d = 0; d < cfg.inner_steps; ++d) {
            x -= cfg.beta * (model.gradient_matrix(x) * z);
            const double norm = x.norm();
            if (!std::isfinite(norm) || norm > kDivergenceBound) {
                throw DivergenceError(t, d + 1, norm);
            }
        }
        traj.x.push_back(x);
    }
    return traj;
}

Vector reference_optimum(const CostModel& model, const Vector& z, const TvgdConfig& cfg,
                         std::span<const Vector> seeds) {
    if (model.name() == "quadratic") {
        return quadratic_argmin(z);
    }
    const double step = cfg.beta / 10.0;
    const long max_iter = 20 * cfg.inner_steps;

    bool found = false;
    Vector best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (const Vector& seed : seeds) {
        if (seed.size() != model.n() || !seed.allFinite()) {
            continue;
        }
        Vector x = seed;
        bool diverged = false;
        for (long k = 0; k < max_iter; ++k) {
            const Vector g = model.gradient_matrix(x) * z;
            if (g.norm() < 1e-3 * kStationarityTolerance) {
                break;
            }
            x -= step * g;
            if (!x.allFinite() || x.norm() > kDivergenceBound) {
                diverged = true;
                break;
            }
        }
        if (diverged || (model.gradient_matrix(x) * z).norm() >= kStationarityTolerance) {
            continue;
        }
        const double cost = evaluate_cost(model, x, z);
        if (cost < best_cost) {
            best_cost = cost;
            best = x;
            found = true;
        }
    }
    if (!found) {
        throw ReferenceUnavailableError("no stationary point with |grad| < 1e-9 reached from " +
                                        std::to_string(seeds.size()) + " seeds");
    }
    return best;
}

}  // namespace tvopt

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

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace tvopt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/**
 * Relative threshold for numerical rank decisions.
 *
 * A singular value counts as nonzero iff it exceeds
 * `relative * max(rows, cols) * sigma_max`. Every rank verdict in the
 * library (Hankel order, M and W full-rank checks, null spaces) goes
 * through this one rule so that verdicts computed on different matrices
 * are comparable.
 */
struct RankTolerance {
    double relative = 1e-9;

    [[nodiscard]] double threshold(Eigen::Index rows, Eigen::Index cols, double sigma_max) const {
        return relative * static_cast<double>(std::max(rows, cols)) * sigma_max;
    }
};

/// Throws ShapeError when any entry is NaN or infinite.
void require_finite(const Eigen::Ref<const Matrix>& m, std::string_view what);

}  // namespace tvopt

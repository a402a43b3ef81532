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
#include <string>
#include <string_view>
#include <vector>

#include "tvopt/types.hpp"

namespace tvopt {

/**
 * A cost linear in its parameters, f(x, z) = g(x)^T z.
 *
 * The gradient with respect to x is C(x) z, where C(x) is the n x p
 * transposed Jacobian of the feature map g. Both maps are closed-form and
 * total on R^n. The feature order fixes the meaning of every entry of z,
 * so it is part of the config-file contract for each named model.
 */
class CostModel {
public:
    using FeatureMap = std::function<Vector(const Vector&)>;
    using GradientMatrixMap = std::function<Matrix(const Vector&)>;

    CostModel(std::string name, Eigen::Index n, Eigen::Index p, FeatureMap features,
              GradientMatrixMap gradient_matrix);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] Eigen::Index n() const noexcept { return n_; }
    [[nodiscard]] Eigen::Index p() const noexcept { return p_; }

    [[nodiscard]] Vector features(const Vector& x) const;
    [[nodiscard]] Matrix gradient_matrix(const Vector& x) const;

private:
    void check_x(const Vector& x) const;

    std::string name_;
    Eigen::Index n_;
    Eigen::Index p_;
    FeatureMap features_;
    GradientMatrixMap gradient_matrix_;
};

/// f(x, z) = g(x) . z
[[nodiscard]] double evaluate_cost(const CostModel& model, const Vector& x, const Vector& z);

/// C(x), so that grad_x f(x, z) = C(x) z.
[[nodiscard]] Matrix gradient_matrix(const CostModel& model, const Vector& x);

/// C(x) z.
[[nodiscard]] Vector cost_gradient(const CostModel& model, const Vector& x, const Vector& z);

/// n = 2, p = 5; features (x1, x2, x1^2, 2 x1 x2, x2^2), z = (b1, b2, h11, h12, h22).
[[nodiscard]] CostModel make_quadratic_model();

/// n = 2, p = 14; features (x, x (x) x, x (x) x (x) x) in blocks of 2, 4 and 8.
[[nodiscard]] CostModel make_polynomial_model();

/// n = 1, p = 3; features (2 e^x, sin x, x).
[[nodiscard]] CostModel make_nonpoly_model();

/// n = 2, p = 6; features (x1, x1 x2, x1^2, x2^2, cos x1, sin x2).
[[nodiscard]] CostModel make_example1_model();

/// Looks up "quadratic", "polynomial3", "nonpoly" or "example1"; throws
/// ConfigError for anything else.
[[nodiscard]] CostModel model_by_name(std::string_view name);

[[nodiscard]] std::vector<std::string> model_names();

}  // namespace tvopt

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

#include "tvopt/cost_model.hpp"

#include <cmath>
#include <utility>

#include "tvopt/errors.hpp"
#include "tvopt/kron.hpp"

namespace tvopt {

CostModel::CostModel(std::string name, Eigen::Index n, Eigen::Index p, FeatureMap features,
                     GradientMatrixMap gradient_matrix)
    : name_(std::move(name)), n_(n), p_(p), features_(std::move(features)),
      gradient_matrix_(std::move(gradient_matrix)) {
    if (n_ < 1 || p_ < 1) {
        throw ShapeError("CostModel: dimensions must be positive");
    }
}

void CostModel::check_x(const Vector& x) const {
    if (x.size() != n_) {
        throw ShapeError("CostModel '" + name_ + "': expected x of length " + std::to_string(n_) +
                         ", got " + std::to_string(x.size()));
    }
}

Vector CostModel::features(const Vector& x) const {
    check_x(x);
    return features_(x);
}

Matrix CostModel::gradient_matrix(const Vector& x) const {
    check_x(x);
    return gradient_matrix_(x);
}

double evaluate_cost(const CostModel& model, const Vector& x, const Vector& z) {
    if (z.size() != model.p()) {
        throw ShapeError("evaluate_cost: expected z of length " + std::to_string(model.p()));
    }
    return model.features(x).dot(z);
}

Matrix gradient_matrix(const CostModel& model, const Vector& x) { return model.gradient_matrix(x); }

Vector cost_gradient(const CostModel& model, const Vector& x, const Vector& z) {
    if (z.size() != model.p()) {
        throw ShapeError("cost_gradient: expected z of length " + std::to_string(model.p()));
    }
    return model.gradient_matrix(x) * z;
}

CostModel make_quadratic_model() {
    auto g = [](const Vector& x) {
        Vector f(5);
        f << x(0), x(1), x(0) * x(0), 2.0 * x(0) * x(1), x(1) * x(1);
        return f;
    };
    auto c = [](const Vector& x) {
        Matrix m(2, 5);
        m << 1.0, 0.0, 2.0 * x(0), 2.0 * x(1), 0.0,
             0.0, 1.0, 0.0, 2.0 * x(0), 2.0 * x(1);
        return m;
    };
    return CostModel("quadratic", 2, 5, g, c);
}

CostModel make_polynomial_model() {
    auto g = [](const Vector& x) {
        const Matrix xr = x.transpose();
        const Matrix x2 = kron(xr, xr);
        const Matrix x3 = kron(x2, xr);
        Vector f(14);
        f << x, x2.transpose(), x3.transpose();
        return f;
    };
    auto c = [](const Vector& x) {
        const Matrix xr = x.transpose();
        const Matrix id = Matrix::Identity(2, 2);
        // d/dx of the r-fold product places I_2 in each of the r factor slots.
        const Matrix p2 = kron(xr, id) + kron(id, xr);
        const Matrix p3 = kron(kron(xr, xr), id) + kron(kron(xr, id), xr) + kron(kron(id, xr), xr);
        Matrix m(2, 14);
        m << id, p2, p3;
        return m;
    };
    return CostModel("polynomial3", 2, 14, g, c);
}

CostModel make_nonpoly_model() {
    auto g = [](const Vector& x) {
        Vector f(3);
        f << 2.0 * std::exp(x(0)), std::sin(x(0)), x(0);
        return f;
    };
    auto c = [](const Vector& x) {
        Matrix m(1, 3);
        m << 2.0 * std::exp(x(0)), std::cos(x(0)), 1.0;
        return m;
    };
    return CostModel("nonpoly", 1, 3, g, c);
}

CostModel make_example1_model() {
    auto g = [](const Vector& x) {
        Vector f(6);
        f << x(0), x(0) * x(1), x(0) * x(0), x(1) * x(1), std::cos(x(0)), std::sin(x(1));
        return f;
    };
    auto c = [](const Vector& x) {
        Matrix m(2, 6);
        m << 1.0, x(1), 2.0 * x(0), 0.0, -std::sin(x(0)), 0.0,
             0.0, x(0), 0.0, 2.0 * x(1), 0.0, std::cos(x(1));
        return m;
    };
    return CostModel("example1", 2, 6, g, c);
}

CostModel model_by_name(std::string_view name) {
    if (name == "quadratic") return make_quadratic_model();
    if (name == "polynomial3") return make_polynomial_model();
    if (name == "nonpoly") return make_nonpoly_model();
    if (name == "example1") return make_example1_model();
    throw ConfigError("unknown cost model '" + std::string(name) + "'");
}

std::vector<std::string> model_names() { return {"quadratic", "polynomial3", "nonpoly", "example1"}; }

}  // namespace tvopt

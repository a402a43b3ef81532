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

#include "tvopt/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <utility>

#include "tvopt/errors.hpp"
#include "tvopt/kron.hpp"

namespace tvopt {

ParameterSystem::ParameterSystem(Matrix a, Vector z0) : a_(std::move(a)), z0_(std::move(z0)) {
    if (a_.rows() != a_.cols()) {
        throw ShapeError("ParameterSystem: A must be square");
    }
    if (a_.rows() != z0_.size()) {
        throw ShapeError("ParameterSystem: z0 length must match A");
    }
    if (z0_.size() == 0) {
        throw ShapeError("ParameterSystem: empty parameter vector");
    }
    require_finite(a_, "ParameterSystem A");
    require_finite(z0_, "ParameterSystem z0");
}

Vector parameter_at(const ParameterSystem& sys, long t) {
    if (t < 0) {
        throw ShapeError("parameter_at: negative time index");
    }
    Vector z = sys.z0();
    for (long s = 0; s < t; ++s) {
        z = sys.a() * z;
    }
    return z;
}

Vector query_gradient(const ParameterSystem& sys, const CostModel& model, const Vector& x, long t) {
    if (model.p() != sys.p()) {
        throw ShapeError("query_gradient: model has p = " + std::to_string(model.p()) +
                         " but the parameter system has p = " + std::to_string(sys.p()));
    }
    return model.gradient_matrix(x) * parameter_at(sys, t);
}

Dataset collect_dataset(const ParameterSystem& sys, const CostModel& model,
                        const ProbeSchedule& schedule) {
    if (schedule.n0 < 1 || schedule.n <= schedule.n0) {
        throw ConfigError("invalid probe schedule: need N > N0 >= 1 (got N0 = " +
                          std::to_string(schedule.n0) + ", N = " + std::to_string(schedule.n) + ")");
    }
    if (schedule.x0.size() != model.n()) {
        throw ConfigError("invalid probe schedule: x0 has length " +
                          std::to_string(schedule.x0.size()) + ", model expects " +
                          std::to_string(model.n()));
    }
    if (model.p() != sys.p()) {
        throw ConfigError("model '" + model.name() + "' has p = " + std::to_string(model.p()) +
                          " but A is " + std::to_string(sys.p()) + "x" + std::to_string(sys.p()));
    }
    if (schedule.rule.kind == ProbeKind::GradientDescent && !(schedule.rule.eta > 0.0)) {
        throw ConfigError("invalid probe schedule: eta must be positive");
    }

    std::mt19937_64 rng(schedule.rule.seed);
    std::uniform_real_distribution<double> box(-schedule.rule.half_width, schedule.rule.half_width);

    Dataset data;
    data.n0 = schedule.n0;
    data.n = schedule.n;
    data.x.reserve(static_cast<std::size_t>(schedule.n + 1));
    data.y.reserve(static_cast<std::size_t>(schedule.n + 1));

    Vector z = sys.z0();
    for (long t = 0; t <= schedule.n; ++t) {
        Vector x;
        if (t <= schedule.n0) {
            x = schedule.x0;
        } else {
            switch (schedule.rule.kind) {
            case ProbeKind::GradientDescent:
                x = data.x.back() - schedule.rule.eta * data.y.back();
                break;
            case ProbeKind::Hold:
                x = schedule.x0;
                break;
            case ProbeKind::Random:
                x = schedule.x0;
                for (Eigen::Index i = 0; i < x.size(); ++i) {
                    x(i) += box(rng);
                }
                break;
            }
        }
        data.y.push_back(model.gradient_matrix(x) * z);
        data.x.push_back(std::move(x));
        z = sys.a() * z;
    }
    return data;
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
    const Eigen::Index n = data.x.empty() ? 0 : data.x.front().size();
    out << "t";
    for (Eigen::Index i = 1; i <= n; ++i) out << ",x_" << i;
    for (Eigen::Index i = 1; i <= n; ++i) out << ",y_" << i;
    out << ",phase\n";
    char buf[32];
    for (std::size_t t = 0; t < data.x.size(); ++t) {
        out << t;
        for (Eigen::Index i = 0; i < n; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", data.x[t](i));
            out << ',' << buf;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", data.y[t](i));
            out << ',' << buf;
        }
        out << ',' << (static_cast<long>(t) <= data.n0 ? "constant" : "probe") << '\n';
    }
}

Matrix controllability_matrix(const Matrix& a, const Vector& z0) {
    const Eigen::Index p = z0.size();
    Matrix k(p, p);
    Vector col = z0;
    for (Eigen::Index j = 0; j < p; ++j) {
        k.col(j) = col;
        col = a * col;
    }
    return k;
}

Matrix observability_matrix(const Matrix& a, const Matrix& c, Eigen::Index depth) {
    const Eigen::Index n = c.rows();
    Matrix o(n * depth, c.cols());
    Matrix block = c;
    for (Eigen::Index i = 0; i < depth; ++i) {
        o.middleRows(i * n, n) = block;
        block = block * a;
    }
    return o;
}

AssumptionReport check_assumptions(const ParameterSystem& sys, const CostModel& model,
                                   const Vector& x0, RankTolerance tol, double eigen_separation) {
    AssumptionReport report;
    const Eigen::Index p = sys.p();

    Eigen::EigenSolver<Matrix> es(sys.a(), false);
    if (es.info() == Eigen::Success) {
        const CVector lambda = es.eigenvalues();
        const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
        const double eps = eigen_separation * scale;
        bool ok = true;
        for (Eigen::Index i = 0; i < p && ok; ++i) {
            if (std::abs(lambda(i)) <= eps) ok = false;
            for (Eigen::Index j = i + 1; j < p && ok; ++j) {
                if (std::abs(lambda(i) - lambda(j)) <= eps) ok = false;
            }
        }
        report.a1 = ok;
    }

    report.a2 = numerical_rank(controllability_matrix(sys.a(), sys.z0()), tol) == p;

    if (x0.size() == model.n() && model.p() == p) {
        report.a3 = numerical_rank(observability_matrix(sys.a(), model.gradient_matrix(x0), p), tol) == p;
    }
    return report;
}

}  // namespace tvopt

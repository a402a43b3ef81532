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
#include <iosfwd>
#include <span>
#include <vector>

#include "tvopt/cost_model.hpp"
#include "tvopt/types.hpp"

namespace tvopt {

/// Ground-truth parameter dynamics z(t+1) = A z(t), z(0) = z0.
class ParameterSystem {
public:
    ParameterSystem(Matrix a, Vector z0);

    [[nodiscard]] const Matrix& a() const noexcept { return a_; }
    [[nodiscard]] const Vector& z0() const noexcept { return z0_; }
    [[nodiscard]] Eigen::Index p() const noexcept { return z0_.size(); }

private:
    Matrix a_;
    Vector z0_;
};

/// A^t z0 by repeated multiplication, matching what a streaming
/// simulation produces step by step.
[[nodiscard]] Vector parameter_at(const ParameterSystem& sys, long t);

/// The oracle's answer y(x, t) = C(x) z(t).
[[nodiscard]] Vector query_gradient(const ParameterSystem& sys, const CostModel& model,
                                    const Vector& x, long t);

enum class ProbeKind {
    GradientDescent,  ///< x(t) = x(t-1) - eta y(t-1), the static baseline update
    Hold,             ///< keep x0
    Random,           ///< uniform in the box x0 +/- half_width
};

struct ProbeRule {
    ProbeKind kind = ProbeKind::GradientDescent;
    double eta = 1e-3;
    double half_width = 1.0;
    std::uint64_t seed = 0;
};

struct ProbeSchedule {
    Vector x0;
    long n0 = 0;  ///< last time index of the constant-probe phase
    long n = 0;   ///< last time index of data collection
    ProbeRule rule;
};

/**
 * Probe points x(0..N) and gradient samples y(0..N).
 *
 * Indices 0..n0 form the constant-probe phase (x(t) = x0); indices
 * n0+1..n form the moving-probe phase.
 */
struct Dataset {
    std::vector<Vector> x;
    std::vector<Vector> y;
    long n0 = 0;
    long n = 0;

    [[nodiscard]] std::span<const Vector> constant_outputs() const {
        return std::span<const Vector>(y).first(static_cast<std::size_t>(n0 + 1));
    }
    [[nodiscard]] std::span<const Vector> moving_probes() const {
        return std::span<const Vector>(x).subspan(static_cast<std::size_t>(n0 + 1));
    }
    [[nodiscard]] std::span<const Vector> moving_outputs() const {
        return std::span<const Vector>(y).subspan(static_cast<std::size_t>(n0 + 1));
    }
};

/// Simulates the oracle over t = 0..N. Throws ConfigError when the
/// schedule violates N > N0 >= 1 or its dimensions do not match.
[[nodiscard]] Dataset collect_dataset(const ParameterSystem& sys, const CostModel& model,
                                      const ProbeSchedule& schedule);

/// CSV with columns t, x_1..x_n, y_1..y_n, phase.
void write_dataset_csv(std::ostream& out, const Dataset& data);

struct AssumptionReport {
    bool a1 = false;  ///< distinct, nonzero eigenvalues of A
    bool a2 = false;  ///< (A, z0) controllable
    bool a3 = false;  ///< (A, C(x0)) observable
};

/// Numerical checks of the standing assumptions. Never throws on a
/// violated assumption; a violation is reported, not enforced.
[[nodiscard]] AssumptionReport check_assumptions(const ParameterSystem& sys, const CostModel& model,
                                                 const Vector& x0, RankTolerance tol = {},
                                                 double eigen_separation = 1e-8);

/// [z0, A z0, ..., A^{p-1} z0]
[[nodiscard]] Matrix controllability_matrix(const Matrix& a, const Vector& z0);

/// [C; C A; ...; C A^{depth-1}]
[[nodiscard]] Matrix observability_matrix(const Matrix& a, const Matrix& c, Eigen::Index depth);

}  // namespace tvopt

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
#include <random>
#include <string>
#include <vector>

#include "tvopt/cost_model.hpp"
#include "tvopt/types.hpp"

namespace tvopt {

/// Outcome of one randomized suite.
struct PropertyResult {
    std::string name;
    long trials = 0;
    long failures = 0;
    double worst = 0.0;      ///< largest observed error metric of the suite
    std::string detail;      ///< first failing trial, if any

    [[nodiscard]] bool passed() const noexcept { return failures == 0 && trials > 0; }
};

/// Per-trial generator, independent of how many trials ran before.
[[nodiscard]] std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t suite, long trial);

[[nodiscard]] Matrix random_gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols);

/// Random rows x cols matrix of exact rank `rank`.
[[nodiscard]] Matrix random_rank_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols,
                                        Eigen::Index rank);

/**
 * Random diagonalizable p x p matrix with distinct eigenvalues, moduli in
 * [lo, hi] and pairwise separation at least `separation`. Complex
 * conjugate pairs appear with probability one half when p >= 2.
 */
[[nodiscard]] Matrix random_dynamics(std::mt19937_64& rng, Eigen::Index p, double lo = 0.4,
                                     double hi = 0.97, double separation = 0.08);

/// Cost model with features g_j(x) = a_j . x + sin(w_j . x + phi_j), so
/// that column j of C(x) is a_j + cos(w_j . x + phi_j) w_j.
[[nodiscard]] CostModel random_feature_model(std::mt19937_64& rng, Eigen::Index n, Eigen::Index p);

/// K (x) I_k spans Null(A (x) I_k) whenever K spans Null(A). A is at most
/// max_dim x max_dim, k <= 4.
[[nodiscard]] PropertyResult lifted_null_space_suite(long trials, std::uint64_t seed, Eigen::Index max_dim = 5);

/// Null(A (x) B) = Null(A (x) I) + Null(I (x) B).
[[nodiscard]] PropertyResult null_space_sum_suite(long trials, std::uint64_t seed);

/// A rank-deficient stacked C forces rank(M) < p r.
[[nodiscard]] PropertyResult rank_deficiency_suite(long trials, std::uint64_t seed);

/// Full column rank of W coincides with full column rank of M.
[[nodiscard]] PropertyResult w_certificate_suite(long trials, std::uint64_t seed);

/// End-to-end identification of random systems that pass every
/// AssumptionReport check, scored on A and on gradients at unseen probe
/// points and times.
[[nodiscard]] PropertyResult exact_recovery_suite(long trials, std::uint64_t seed);

/// Central-difference Jacobian of every built-in feature map against C(x).
[[nodiscard]] PropertyResult gradient_model_suite(long points_per_model, std::uint64_t seed);

/// Mixed-product rule and vec(A X B) = (B^T (x) A) vec(X).
[[nodiscard]] PropertyResult kron_identity_suite(long trials, std::uint64_t seed);

[[nodiscard]] std::vector<PropertyResult> run_property_suites(long trials, std::uint64_t seed);

/// Acceptance thresholds.
inline constexpr double kSubspaceTolerance = 1e-10;
inline constexpr double kRecoveryTolerance = 1e-6;
inline constexpr double kReconstructionTolerance = 1e-8;
inline constexpr double kJacobianTolerance = 1e-5;

}  // namespace tvopt

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

#include <span>

#include "tvopt/types.hpp"

namespace tvopt {

/// Block depth q of the largest square block-Hankel matrix that a
/// constant-probe phase of `samples` outputs supports: floor((L + 1) / 2).
[[nodiscard]] Eigen::Index hankel_depth(Eigen::Index samples);

/// nq x q block Hankel matrix whose block (i, j) is y(i + j). Needs at
/// least 2q - 1 samples, each of length n.
[[nodiscard]] Matrix build_hankel(std::span<const Vector> outputs, Eigen::Index n, Eigen::Index q);

/// SVD of the Hankel matrix truncated at its numerical rank.
struct HankelFactorization {
    Matrix hankel;            ///< Y_h, nq x q
    Matrix obar;              ///< leading r left singular vectors (estimated observability)
    Vector singular_values;   ///< all singular values of Y_h, decreasing
    Eigen::Index n = 0;       ///< output dimension (block height)
    Eigen::Index q = 0;       ///< block depth
    Eigen::Index rank = 0;    ///< r
};

/// Throws NotIdentifiableError when Y_h has numerical rank zero.
[[nodiscard]] HankelFactorization factorize(const Matrix& hankel, Eigen::Index n, RankTolerance tol = {});

/// A-bar = pinv(O1) O2, where O1 drops the last block row of O-bar and
/// O2 drops the first. Throws NotIdentifiableError when fewer than two
/// block rows exist or O1 loses column rank.
[[nodiscard]] Matrix shift_estimate(const HankelFactorization& fact, RankTolerance tol = {});

/// Z-bar(0) = pinv(O-bar) Y_h, the r x q transformed state sequence
/// z-bar(0..q-1).
[[nodiscard]] Matrix initial_states(const HankelFactorization& fact);

/// Dynamics and states identified up to an unknown change of coordinates.
struct SimilarRealization {
    Matrix abar;        ///< r x r
    Matrix zbar0;       ///< r x q
    Vector zbar_ref;    ///< last column of zbar0, i.e. z-bar(q - 1)
    Eigen::Index q = 0;

    [[nodiscard]] Eigen::Index rank() const noexcept { return abar.rows(); }
    [[nodiscard]] long reference_index() const noexcept { return static_cast<long>(q) - 1; }
};

struct SubspaceIdentification {
    HankelFactorization factorization;
    SimilarRealization realization;
};

/// Hankel assembly, factorization, shift estimate and initial states from
/// the constant-probe outputs y(0..N0), with q = hankel_depth(N0 + 1).
[[nodiscard]] SubspaceIdentification identify_similar(std::span<const Vector> constant_outputs,
                                                      Eigen::Index n, RankTolerance tol = {});

}  // namespace tvopt

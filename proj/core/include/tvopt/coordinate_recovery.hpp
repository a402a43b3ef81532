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

#include <optional>
#include <span>
#include <vector>

#include "tvopt/cost_model.hpp"
#include "tvopt/oracle.hpp"
#include "tvopt/subspace_id.hpp"
#include "tvopt/types.hpp"

namespace tvopt {

/// z-bar(t) = A-bar^(t - ref) z-bar_ref for t in [t_from, t_to], by
/// repeated multiplication. Requires t_from > ref.
[[nodiscard]] std::vector<Vector> propagate_zbar(const Matrix& abar, const Vector& zbar_ref,
                                                 long ref_index, long t_from, long t_to);

/// Linear system M vec(P) = Y_v relating the unknown map P = T^{-1} to the
/// moving-probe measurements. Row block k is z-bar(t_k)^T (x) C(t_k).
struct TransformSystem {
    Matrix m;
    Vector yv;
};

[[nodiscard]] TransformSystem build_M(std::span<const Vector> zbars, std::span<const Matrix> cs,
                                      std::span<const Vector> ys);

enum class TransformPolicy {
    Strict,       ///< refuse to solve when rank(M) falls short
    MinimumNorm,  ///< always take the minimum-norm least-squares solution
};

struct TransformOptions {
    TransformPolicy policy = TransformPolicy::Strict;
    RankTolerance tol{};
    /// Rank of the stacked C(t). Columns of P can only be recovered inside
    /// this row space, so the strict policy asks for rank(M) = r * visible_rank.
    /// Defaults to p.
    std::optional<Eigen::Index> visible_rank;
};

struct TransformSolution {
    Matrix p;                        ///< recovered T^{-1}, p x r
    std::optional<Matrix> t;         ///< present iff r = p and P is invertible
    std::optional<Matrix> a_hat;     ///< P A-bar P^{-1}, same condition
    double residual = 0.0;           ///< |M vec(P) - Y_v|
    Eigen::Index rank_m = 0;
    Eigen::Index required_rank = 0;
};

/// vec(P) = pinv(M) Y_v, P = invvec(vec(P), p, r); when r = p also
/// T = P^{-1} and A = T^{-1} A-bar T. Under the strict policy throws
/// UnderdeterminedTransformError (rank short) or SingularTransformError.
[[nodiscard]] TransformSolution solve_transform(const Matrix& m, const Vector& yv, Eigen::Index p,
                                                const Matrix& abar, const TransformOptions& options = {});

/// [C(t_1); ...; C(t_k)]
[[nodiscard]] Matrix stack_rows(std::span<const Matrix> cs);

/// Necessary condition for a full-column-rank M: the stacked C(t) has
/// full column rank p.
[[nodiscard]] bool check_necessary(std::span<const Matrix> cs, RankTolerance tol = {});

/**
 * Rank certificate equivalent to full column rank of M.
 *
 * With A-bar = U D U^{-1}, Lambda = D (x) I_p and F(t) = 1^T (x) C(t), the
 * certificate stacks F(t_k) Lambda^k over the moving-probe samples. It is
 * computed in complex arithmetic because D may hold conjugate pairs.
 */
struct WCertificate {
    CMatrix w;
    CMatrix lambda;
    std::vector<Matrix> f_blocks;
    CVector eigenvalues;
    Eigen::Index rank = 0;
    bool full_rank = false;
    double min_singular_value = 0.0;
    double max_singular_value = 0.0;
};

/// Throws CertificateUnavailableError when A-bar is (numerically) defective.
[[nodiscard]] WCertificate check_sufficient_W(const Matrix& abar, std::span<const Matrix> cs,
                                              Eigen::Index p, RankTolerance tol = {});

/// Everything known after both identification stages.
struct IdentificationResult {
    SimilarRealization realization;
    Matrix p;
    std::optional<Matrix> t;
    std::optional<Matrix> a_hat;
    double residual = 0.0;
    Eigen::Index rank_m = 0;
    Eigen::Index required_rank = 0;

    [[nodiscard]] Eigen::Index rank_r() const noexcept { return realization.rank(); }
    [[nodiscard]] long reference_index() const noexcept { return realization.reference_index(); }
    [[nodiscard]] bool determined() const noexcept { return rank_m >= required_rank; }
};

/// z-bar(t): a column of Z-bar(0) for t <= ref, propagated beyond it.
[[nodiscard]] Vector transformed_state(const IdentificationResult& result, long t);

/// z-hat(t) = P z-bar(t).
[[nodiscard]] Vector predict_parameters(const IdentificationResult& result, long t);

/// Intermediate quantities of transform recovery, retained for reports
/// and certificate checks.
struct RecoveryData {
    std::vector<Vector> zbars;
    std::vector<Matrix> cs;
    TransformSystem system;
};

[[nodiscard]] RecoveryData assemble_recovery(const SimilarRealization& realization, const Dataset& data,
                                             const CostModel& model);

/// Full pipeline from a dataset: subspace identification on the constant
/// phase, then transform recovery on the moving phase.
[[nodiscard]] IdentificationResult identify(const Dataset& data, const CostModel& model,
                                            TransformOptions options = {});

}  // namespace tvopt

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

#include "tvopt/coordinate_recovery.hpp"

#include <string>

#include "tvopt/errors.hpp"
#include "tvopt/kron.hpp"

namespace tvopt {

namespace {

// Condition number beyond which the eigenvector matrix of A-bar is
// treated as singular (defective A-bar).
constexpr double kMaxEigenvectorCondition = 1e12;

}  // namespace

std::vector<Vector> propagate_zbar(const Matrix& abar, const Vector& zbar_ref, long ref_index,
                                   long t_from, long t_to) {
    if (t_from <= ref_index) {
        throw ShapeError("propagate_zbar: t_from must exceed the reference index " +
                         std::to_string(ref_index));
    }
    std::vector<Vector> out;
    if (t_to < t_from) {
        return out;
    }
    out.reserve(static_cast<std::size_t>(t_to - t_from + 1));
    Vector z = zbar_ref;
    for (long t = ref_index + 1; t <= t_to; ++t) {
        z = abar * z;
        if (t >= t_from) {
            out.push_back(z);
        }
    }
    return out;
}

TransformSystem build_M(std::span<const Vector> zbars, std::span<const Matrix> cs,
                        std::span<const Vector> ys) {
    if (zbars.empty() || zbars.size() != cs.size() || cs.size() != ys.size()) {
        throw ShapeError("build_M: need equal, nonzero numbers of states, output matrices and samples");
    }
    const Eigen::Index r = zbars.front().size();
    const Eigen::Index p = cs.front().cols();
    Eigen::Index rows = 0;
    for (std::size_t k = 0; k < cs.size(); ++k) {
        if (zbars[k].size() != r || cs[k].cols() != p || ys[k].size() != cs[k].rows()) {
            throw ShapeError("build_M: inconsistent dimensions at block " + std::to_string(k));
        }
        rows += cs[k].rows();
    }
    TransformSystem sys{Matrix(rows, p * r), Vector(rows)};
    Eigen::Index row = 0;
    for (std::size_t k = 0; k < cs.size(); ++k) {
        const Eigen::Index n = cs[k].rows();
        sys.m.middleRows(row, n) = kron(Matrix(zbars[k].transpose()), cs[k]);
        sys.yv.segment(row, n) = ys[k];
        row += n;
    }
    return sys;
}

TransformSolution solve_transform(const Matrix& m, const Vector& yv, Eigen::Index p, const Matrix& abar,
                                  const TransformOptions& options) {
    const Eigen::Index r = abar.rows();
    if (abar.cols() != r || m.cols() != p * r || m.rows() != yv.size()) {
        throw ShapeError("solve_transform: M must be (sum n) x (p r) with p = " + std::to_string(p) +
                         ", r = " + std::to_string(r));
    }
    TransformSolution sol;
    sol.rank_m = numerical_rank(m, options.tol);
    sol.required_rank = r * options.visible_rank.value_or(p);
    if (options.policy == TransformPolicy::Strict && sol.rank_m < sol.required_rank) {
        throw UnderdeterminedTransformError(sol.rank_m, sol.required_rank);
    }

    const Vector vec_p = pseudo_inverse(m, options.tol) * yv;
    sol.p = invvec(vec_p, p, r);
    sol.residual = (m * vec_p - yv).norm();

    if (r == p) {
        if (numerical_rank(sol.p, options.tol) < p) {
            if (options.policy == TransformPolicy::Strict) {
                throw SingularTransformError("recovered T^{-1} is singular");
            }
            return sol;
        }
        Eigen::FullPivLU<Matrix> lu(sol.p);
        sol.t = lu.inverse();
        sol.a_hat = sol.p * abar * *sol.t;
    }
    return sol;
}

Matrix stack_rows(std::span<const Matrix> cs) {
    if (cs.empty()) {
        return Matrix{};
    }
    Eigen::Index rows = 0;
    for (const auto& c : cs) rows += c.rows();
    Matrix out(rows, cs.front().cols());
    Eigen::Index row = 0;
    for (const auto& c : cs) {
        if (c.cols() != out.cols()) {
            throw ShapeError("stack_rows: column counts differ");
        }
        out.middleRows(row, c.rows()) = c;
        row += c.rows();
    }
    return out;
}

bool check_necessary(std::span<const Matrix> cs, RankTolerance tol) {
    if (cs.empty()) {
        throw ShapeError("check_necessary: empty list of output matrices");
    }
    const Matrix stacked = stack_rows(cs);
    return numerical_rank(stacked, tol) == stacked.cols();
}

WCertificate check_sufficient_W(const Matrix& abar, std::span<const Matrix> cs, Eigen::Index p,
                                RankTolerance tol) {
    const Eigen::Index r = abar.rows();
    if (cs.empty()) {
        throw ShapeError("check_sufficient_W: empty list of output matrices");
    }
    Eigen::EigenSolver<Matrix> es(abar);
    if (es.info() != Eigen::Success) {
        throw CertificateUnavailableError("eigendecomposition of A-bar failed");
    }
    const CMatrix u = es.eigenvectors();
    const Vector su = singular_values(u);
    if (su.size() == 0 || su(su.size() - 1) * kMaxEigenvectorCondition <= su(0)) {
        throw CertificateUnavailableError("A-bar is numerically defective; no diagonal form");
    }

    WCertificate cert;
    cert.eigenvalues = es.eigenvalues();
    cert.lambda = kron(CMatrix(cert.eigenvalues.asDiagonal()), CMatrix(CMatrix::Identity(p, p)));

    const Matrix ones = Matrix::Ones(1, r);
    Eigen::Index rows = 0;
    for (const auto& c : cs) {
        if (c.cols() != p) {
            throw ShapeError("check_sufficient_W: C(t) must have p columns");
        }
        cert.f_blocks.push_back(kron(ones, c));
        rows += c.rows();
    }

    // Lambda is diagonal, so Lambda^k is carried as its diagonal.
    cert.w.resize(rows, r * p);
    CVector lambda_pow = CVector::Ones(r * p);
    const CVector lambda_diag = cert.lambda.diagonal();
    Eigen::Index row = 0;
    for (const auto& f : cert.f_blocks) {
        cert.w.middleRows(row, f.rows()) = f.cast<Complex>() * lambda_pow.asDiagonal();
        row += f.rows();
        lambda_pow = lambda_pow.cwiseProduct(lambda_diag);
    }

    const Vector s = singular_values(cert.w);
    cert.rank = numerical_rank(cert.w, tol);
    cert.full_rank = cert.rank == cert.w.cols();
    cert.max_singular_value = s.size() > 0 ? s(0) : 0.0;
    cert.min_singular_value = (cert.w.rows() >= cert.w.cols() && s.size() > 0) ? s(s.size() - 1) : 0.0;
    return cert;
}

Vector transformed_state(const IdentificationResult& result, long t) {
    const long ref = result.reference_index();
    if (t < 0) {
        throw ShapeError("transformed_state: negative time index");
    }
    if (t <= ref) {
        return result.realization.zbar0.col(t);
    }
    Vector z = result.realization.zbar_ref;
    for (long s = ref; s < t; ++s) {
        z = result.realization.abar * z;
    }
    return z;
}

Vector predict_parameters(const IdentificationResult& result, long t) {
    return result.p * transformed_state(result, t);
}

RecoveryData assemble_recovery(const SimilarRealization& realization, const Dataset& data,
                               const CostModel& model) {
    RecoveryData out;
    out.zbars = propagate_zbar(realization.abar, realization.zbar_ref, realization.reference_index(),
                               data.n0 + 1, data.n);
    for (const auto& x : data.moving_probes()) {
        out.cs.push_back(model.gradient_matrix(x));
    }
    out.system = build_M(out.zbars, out.cs, data.moving_outputs());
    return out;
}

IdentificationResult identify(const Dataset& data, const CostModel& model, TransformOptions options) {
    const Eigen::Index n = model.n();
    const SubspaceIdentification sub = identify_similar(data.constant_outputs(), n, options.tol);
    const RecoveryData rec = assemble_recovery(sub.realization, data, model);
    if (!options.visible_rank) {
        options.visible_rank = numerical_rank(stack_rows(rec.cs), options.tol);
    }
    const TransformSolution sol =
        solve_transform(rec.system.m, rec.system.yv, model.p(), sub.realization.abar, options);

    IdentificationResult result;
    result.realization = sub.realization;
    result.p = sol.p;
    result.t = sol.t;
    result.a_hat = sol.a_hat;
    result.residual = sol.residual;
    result.rank_m = sol.rank_m;
    result.required_rank = sol.required_rank;
    return result;
}

}  // namespace tvopt

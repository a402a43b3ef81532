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

#include "tvopt/kron.hpp"

#include <cmath>
#include <string>

namespace tvopt {

void require_finite(const Eigen::Ref<const Matrix>& m, std::string_view what) {
    if (!m.allFinite()) {
        throw ShapeError(std::string(what) + ": entries must be finite");
    }
}

Matrix null_space_basis(const Eigen::Ref<const Matrix>& a, RankTolerance tol) {
    const Eigen::Index n = a.cols();
    if (a.rows() == 0 || a.isZero(0.0)) {
        return Matrix::Identity(n, n);
    }
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
    const Eigen::Index r = numerical_rank(a, tol);
    return svd.matrixV().rightCols(n - r);
}

Matrix column_space_basis(const Eigen::Ref<const Matrix>& a, RankTolerance tol) {
    if (a.cols() == 0 || a.isZero(0.0)) {
        return Matrix(a.rows(), 0);
    }
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
    const Eigen::Index r = numerical_rank(a, tol);
    return svd.matrixU().leftCols(r);
}

Matrix lifted_null_basis(const Eigen::Ref<const Matrix>& k_basis, Eigen::Index k) {
    if (k < 1) {
        throw ShapeError("lifted_null_basis: k must be positive");
    }
    return kron(k_basis, Matrix::Identity(k, k));
}

Matrix pseudo_inverse(const Eigen::Ref<const Matrix>& a, RankTolerance tol) {
    if (a.size() == 0) {
        return Matrix::Zero(a.cols(), a.rows());
    }
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& s = svd.singularValues();
    if (s(0) == 0.0) {
        return Matrix::Zero(a.cols(), a.rows());
    }
    const double thr = tol.threshold(a.rows(), a.cols(), s(0));
    Vector inv = Vector::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > thr) {
            inv(i) = 1.0 / s(i);
        }
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Matrix projector(const Eigen::Ref<const Matrix>& orthonormal_basis) {
    return orthonormal_basis * orthonormal_basis.transpose();
}

double subspace_distance(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Matrix>& b,
                         RankTolerance tol) {
    if (a.rows() != b.rows()) {
        throw ShapeError("subspace_distance: ambient dimensions differ");
    }
    const Matrix diff = projector(column_space_basis(a, tol)) - projector(column_space_basis(b, tol));
    if (diff.size() == 0) {
        return 0.0;
    }
    return singular_values(diff)(0);
}

}  // namespace tvopt

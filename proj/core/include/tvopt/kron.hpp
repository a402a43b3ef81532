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

#include <type_traits>

#include "tvopt/errors.hpp"
#include "tvopt/types.hpp"

namespace tvopt {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Kronecker product: block (i, j) of the result is a(i, j) * b.
template <typename DA, typename DB>
[[nodiscard]] DenseMatrix<typename DA::Scalar> kron(const Eigen::MatrixBase<DA>& a,
                                                    const Eigen::MatrixBase<DB>& b) {
    static_assert(std::is_same_v<typename DA::Scalar, typename DB::Scalar>,
                  "kron operands must share a scalar type");
    const Eigen::Index br = b.rows();
    const Eigen::Index bc = b.cols();
    DenseMatrix<typename DA::Scalar> out(a.rows() * br, a.cols() * bc);
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            out.block(i * br, j * bc, br, bc) = a(i, j) * b;
        }
    }
    return out;
}

/// Column-major stacking.
template <typename D>
[[nodiscard]] DenseVector<typename D::Scalar> vec(const Eigen::MatrixBase<D>& a) {
    DenseVector<typename D::Scalar> out(a.size());
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            out(k++) = a(i, j);
        }
    }
    return out;
}

/// Inverse of vec(): refills an m x n matrix column by column.
template <typename D>
[[nodiscard]] DenseMatrix<typename D::Scalar> invvec(const Eigen::MatrixBase<D>& v, Eigen::Index m,
                                                     Eigen::Index n) {
    if (v.cols() != 1 || m < 0 || n < 0 || v.rows() != m * n) {
        throw ShapeError("invvec: vector of length " + std::to_string(v.size()) +
                         " cannot be reshaped to " + std::to_string(m) + "x" + std::to_string(n));
    }
    DenseMatrix<typename D::Scalar> out(m, n);
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < m; ++i) {
            out(i, j) = v(k++);
        }
    }
    return out;
}

/// Singular values in decreasing order (real or complex input).
template <typename D>
[[nodiscard]] Vector singular_values(const Eigen::MatrixBase<D>& a) {
    if (a.size() == 0) {
        return Vector{};
    }
    Eigen::JacobiSVD<DenseMatrix<typename D::Scalar>> svd(a.derived());
    return svd.singularValues();
}

/// Numerical rank under the shared tolerance rule.
template <typename D>
[[nodiscard]] Eigen::Index numerical_rank(const Eigen::MatrixBase<D>& a, RankTolerance tol = {}) {
    const Vector s = singular_values(a);
    if (s.size() == 0 || s(0) == 0.0) {
        return 0;
    }
    const double thr = tol.threshold(a.rows(), a.cols(), s(0));
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > thr) {
        ++r;
    }
    return r;
}

/// Orthonormal basis of Null(a) from the trailing right singular vectors.
[[nodiscard]] Matrix null_space_basis(const Eigen::Ref<const Matrix>& a, RankTolerance tol = {});

/// Orthonormal basis of Col(a) from the leading left singular vectors.
[[nodiscard]] Matrix column_space_basis(const Eigen::Ref<const Matrix>& a, RankTolerance tol = {});

/// K (x) I_k. Spans Null(A (x) I_k) whenever the columns of K span Null(A).
[[nodiscard]] Matrix lifted_null_basis(const Eigen::Ref<const Matrix>& k_basis, Eigen::Index k);

/// Moore-Penrose pseudoinverse with singular values at or below the
/// tolerance treated as zero.
[[nodiscard]] Matrix pseudo_inverse(const Eigen::Ref<const Matrix>& a, RankTolerance tol = {});

/// Orthogonal projector onto the span of the columns of an orthonormal basis.
[[nodiscard]] Matrix projector(const Eigen::Ref<const Matrix>& orthonormal_basis);

/// Spectral-norm distance between the orthogonal projectors onto Col(a)
/// and Col(b). Zero iff the two column spaces coincide.
[[nodiscard]] double subspace_distance(const Eigen::Ref<const Matrix>& a,
                                       const Eigen::Ref<const Matrix>& b, RankTolerance tol = {});

}  // namespace tvopt

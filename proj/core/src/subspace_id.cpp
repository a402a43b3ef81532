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

#include "tvopt/subspace_id.hpp"

#include <string>

#include "tvopt/errors.hpp"
#include "tvopt/kron.hpp"

namespace tvopt {

Eigen::Index hankel_depth(Eigen::Index samples) { return (samples + 1) / 2; }

Matrix build_hankel(std::span<const Vector> outputs, Eigen::Index n, Eigen::Index q) {
    if (q < 1) {
        throw ShapeError("build_hankel: depth must be positive");
    }
    const auto needed = static_cast<std::size_t>(2 * q - 1);
    if (outputs.size() < needed) {
        throw ShapeError("build_hankel: depth " + std::to_string(q) + " needs " +
                         std::to_string(needed) + " samples, got " + std::to_string(outputs.size()));
    }
    Matrix yh(n * q, q);
    for (Eigen::Index i = 0; i < q; ++i) {
        for (Eigen::Index j = 0; j < q; ++j) {
            const Vector& y = outputs[static_cast<std::size_t>(i + j)];
            if (y.size() != n) {
                throw ShapeError("build_hankel: sample " + std::to_string(i + j) + " has length " +
                                 std::to_string(y.size()) + ", expected " + std::to_string(n));
            }
            yh.block(i * n, j, n, 1) = y;
        }
    }
    return yh;
}

HankelFactorization factorize(const Matrix& hankel, Eigen::Index n, RankTolerance tol) {
    if (n < 1 || hankel.rows() % n != 0) {
        throw ShapeError("factorize: Hankel height is not a multiple of the block size");
    }
    Eigen::JacobiSVD<Matrix> svd(hankel, Eigen::ComputeThinU);
    HankelFactorization f;
    f.hankel = hankel;
    f.n = n;
    f.q = hankel.rows() / n;
    f.singular_values = svd.singularValues();
    f.rank = numerical_rank(hankel, tol);
    if (f.rank == 0) {
        throw NotIdentifiableError("Hankel matrix has numerical rank 0; nothing to identify");
    }
    f.obar = svd.matrixU().leftCols(f.rank);
    return f;
}

Matrix shift_estimate(const HankelFactorization& fact, RankTolerance tol) {
    if (fact.q < 2) {
        throw NotIdentifiableError("shift estimate needs at least two block rows");
    }
    const Eigen::Index rows = fact.n * (fact.q - 1);
    const Matrix o1 = fact.obar.topRows(rows);
    const Matrix o2 = fact.obar.bottomRows(rows);
    const Eigen::Index r1 = numerical_rank(o1, tol);
    if (r1 < fact.rank) {
        throw NotIdentifiableError("shifted observability block has rank " + std::to_string(r1) +
                                   " < " + std::to_string(fact.rank));
    }
    return pseudo_inverse(o1, tol) * o2;
}

Matrix initial_states(const HankelFactorization& fact) {
    // obar has orthonormal columns, so its pseudoinverse is its transpose.
    return fact.obar.transpose() * fact.hankel;
}

SubspaceIdentification identify_similar(std::span<const Vector> constant_outputs, Eigen::Index n,
                                        RankTolerance tol) {
    const Eigen::Index q = hankel_depth(static_cast<Eigen::Index>(constant_outputs.size()));
    SubspaceIdentification out;
    out.factorization = factorize(build_hankel(constant_outputs, n, q), n, tol);
    out.realization.abar = shift_estimate(out.factorization, tol);
    out.realization.zbar0 = initial_states(out.factorization);
    out.realization.zbar_ref = out.realization.zbar0.col(q - 1);
    out.realization.q = q;
    return out;
}

}  // namespace tvopt

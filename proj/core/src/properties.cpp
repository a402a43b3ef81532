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

#include "tvopt/properties.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "tvopt/coordinate_recovery.hpp"
#include "tvopt/errors.hpp"
#include "tvopt/kron.hpp"
#include "tvopt/oracle.hpp"
#include "tvopt/subspace_id.hpp"

namespace tvopt {

namespace {

enum SuiteId : std::uint64_t {
    kLiftedNullSpace = 1,
    kNullSpaceSum,
    kRankDeficiency,
    kWCertificate,
    kExactRecovery,
    kGradientModel,
    kKronIdentity,
};

long uniform_int(std::mt19937_64& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Vector random_vector(std::mt19937_64& rng, Eigen::Index n) { return random_gaussian(rng, n, 1); }

void record_failure(PropertyResult& r, long trial, const std::string& what) {
    if (r.failures++ == 0) {
        r.detail = "trial " + std::to_string(trial) + ": " + what;
    }
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

/// Moving-probe data of a synthetic instance: z-bar(t_k) = A-bar^k z-bar_0.
std::vector<Vector> orbit(const Matrix& abar, const Vector& z0, long count) {
    std::vector<Vector> out;
    Vector z = z0;
    for (long k = 0; k < count; ++k) {
        out.push_back(z);
        z = abar * z;
    }
    return out;
}

std::vector<Vector> outputs_of(std::span<const Matrix> cs, std::span<const Vector> zs, const Matrix& p) {
    std::vector<Vector> ys;
    for (std::size_t k = 0; k < cs.size(); ++k) ys.push_back(cs[k] * (p * zs[k]));
    return ys;
}

}  // namespace

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t suite, long trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(suite), static_cast<std::uint32_t>(trial)};
    return std::mt19937_64(seq);
}

Matrix random_gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> normal;
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
    }
    return m;
}

Matrix random_rank_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, Eigen::Index rank) {
    if (rank == 0) return Matrix::Zero(rows, cols);
    return random_gaussian(rng, rows, rank) * random_gaussian(rng, rank, cols);
}

Matrix random_dynamics(std::mt19937_64& rng, Eigen::Index p, double lo, double hi, double separation) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Complex> eig;
        Matrix d = Matrix::Zero(p, p);
        Eigen::Index i = 0;
        while (i < p) {
            const double rho = uniform(rng, lo, hi);
            if (i + 1 < p && uniform(rng, 0.0, 1.0) < 0.5) {
                const double phi = uniform(rng, 0.3, 2.8);
                const double a = rho * std::cos(phi);
                const double b = rho * std::sin(phi);
                d(i, i) = a;
                d(i, i + 1) = b;
                d(i + 1, i) = -b;
                d(i + 1, i + 1) = a;
                eig.emplace_back(a, b);
                eig.emplace_back(a, -b);
                i += 2;
            } else {
                const double v = uniform(rng, 0.0, 1.0) < 0.5 ? -rho : rho;
                d(i, i) = v;
                eig.emplace_back(v, 0.0);
                i += 1;
            }
        }
        bool separated = true;
        for (std::size_t a = 0; a < eig.size() && separated; ++a) {
            for (std::size_t b = a + 1; b < eig.size(); ++b) {
                if (std::abs(eig[a] - eig[b]) < separation) {
                    separated = false;
                    break;
                }
            }
        }
        if (!separated) continue;
        const Matrix s = random_gaussian(rng, p, p);
        const Vector sv = singular_values(s);
        if (sv(sv.size() - 1) * 20.0 < sv(0)) continue;
        return s * d * s.inverse();
    }
    throw Error("random_dynamics: no admissible spectrum found");
}

CostModel random_feature_model(std::mt19937_64& rng, Eigen::Index n, Eigen::Index p) {
    const Matrix a = random_gaussian(rng, n, p);
    Matrix w = random_gaussian(rng, n, p);
    Vector phase(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        w.col(j) *= uniform(rng, 0.5, 2.0) / w.col(j).norm();
        phase(j) = uniform(rng, 0.0, 6.283185307179586);
    }
    auto features = [a, w, phase](const Vector& x) {
        Vector g(a.cols());
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            g(j) = a.col(j).dot(x) + std::sin(w.col(j).dot(x) + phase(j));
        }
        return g;
    };
    auto jac = [a, w, phase](const Vector& x) {
        Matrix c(a.rows(), a.cols());
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            c.col(j) = a.col(j) + std::cos(w.col(j).dot(x) + phase(j)) * w.col(j);
        }
        return c;
    };
    return CostModel("random_features", n, p, features, jac);
}

PropertyResult lifted_null_space_suite(long trials, std::uint64_t seed, Eigen::Index max_dim) {
    PropertyResult r{"lifted_null_space", trials, 0, 0.0, {}};
    for (long t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, kLiftedNullSpace, t);
        const Eigen::Index rows = uniform_int(rng, 1, max_dim);
        const Eigen::Index cols = uniform_int(rng, 1, max_dim);
        const Eigen::Index rank = uniform_int(rng, 0, std::min(rows, cols));
        const Eigen::Index k = uniform_int(rng, 1, 4);
        const Matrix a = random_rank_matrix(rng, rows, cols, rank);
        const Matrix lifted = lifted_null_basis(null_space_basis(a), k);
        const Matrix direct = null_space_basis(kron(a, Matrix::Identity(k, k)));
        const double dist = subspace_distance(lifted, direct);
        r.worst = std::max(r.worst, dist);
        if (!(dist < kSubspaceTolerance)) {
            record_failure(r, t, "projector distance " + fmt(dist));
        }
    }
    return r;
}

PropertyResult null_space_sum_suite(long trials, std::uint64_t seed) {
    PropertyResult r{"null_space_sum", trials, 0, 0.0, {}};
    for (long t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, kNullSpaceSum, t);
        const Eigen::Index ar = uniform_int(rng, 1, 4);
        const Eigen::Index m = uniform_int(rng, 1, 4);
        const Eigen::Index br = uniform_int(rng, 1, 4);
        const Eigen::Index k = uniform_int(rng, 1, 4);
        const Matrix a = random_rank_matrix(rng, ar, m, uniform_int(rng, 0, std::min(ar, m)));
        const Matrix b = random_rank_matrix(rng, br, k, uniform_int(rng, 0, std::min(br, k)));
        const Matrix n1 = null_space_basis(kron(a, Matrix::Identity(k, k)));
        const Matrix n2 = null_space_basis(kron(Matrix::Identity(m, m), b));
        Matrix sum(m * k, n1.cols() + n2.cols());
        sum << n1, n2;
        const double dist = subspace_distance(sum, null_space_basis(kron(a, b)));
        r.worst = std::max(r.worst, dist);
        if (!(dist < kSubspaceTolerance)) {
            record_failure(r, t, "projector distance " + fmt(dist));
        }
    }
    return r;
}

PropertyResult rank_deficiency_suite(long trials, std::uint64_t seed) {
    PropertyResult r{"rank_deficient_C", trials, 0, 0.0, {}};
    for (long t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, kRankDeficiency, t);
        const Eigen::Index p = uniform_int(rng, 2, 4);
        const Eigen::Index n = uniform_int(rng, 1, 3);
        const long count = (p * p + n - 1) / n + uniform_int(rng, 0, 3);
        const Matrix abar = random_dynamics(rng, p);
        Vector v = random_vector(rng, p);
        v.normalize();
        const Matrix proj = Matrix::Identity(p, p) - v * v.transpose();
        std::vector<Matrix> cs;
        for (long k = 0; k < count; ++k) cs.push_back(random_gaussian(rng, n, p) * proj);
        const auto zs = orbit(abar, random_vector(rng, p), count);
        const auto ys = outputs_of(cs, zs, random_gaussian(rng, p, p));
        const TransformSystem sys = build_M(zs, cs, ys);
        const Eigen::Index rank_c = numerical_rank(stack_rows(cs));
        const Eigen::Index rank_m = numerical_rank(sys.m);
        if (rank_c >= p) {
            record_failure(r, t, "stacked C unexpectedly has full column rank");
        } else if (rank_m >= p * p) {
            record_failure(r, t, "rank(M) = " + std::to_string(rank_m) + " with rank(C) = " +
                                     std::to_string(rank_c));
        }
    }
    return r;
}

PropertyResult w_certificate_suite(long trials, std::uint64_t seed) {
    PropertyResult r{"W_M_equivalence", trials, 0, 0.0, {}};
    long full = 0;
    for (long t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, kWCertificate, t);
        const Eigen::Index p = uniform_int(rng, 1, 4);
        const Eigen::Index n = uniform_int(rng, 1, 3);
        const Matrix abar = random_dynamics(rng, p, 0.6, 1.2, 0.08);
        Vector z0 = random_vector(rng, p);
        if (numerical_rank(controllability_matrix(abar, z0)) < p) z0 = random_vector(rng, p);

        const long k_min = (p * p + n - 1) / n;
        const int kind = static_cast<int>(t % 4);
        const long count = kind == 3 ? std::max(1L, k_min - 1) : k_min + uniform_int(rng, 0, 2);
        std::vector<Matrix> cs;
        const Matrix fixed = random_gaussian(rng, n, p);
        Vector v = random_vector(rng, p);
        v.normalize();
        const Matrix proj = Matrix::Identity(p, p) - v * v.transpose();
        for (long k = 0; k < count; ++k) {
            switch (kind) {
            case 1: cs.push_back(fixed); break;
            case 2: cs.push_back(random_gaussian(rng, n, p) * proj); break;
            default: cs.push_back(random_gaussian(rng, n, p)); break;
            }
        }
        const auto zs = orbit(abar, z0, count);
        const TransformSystem sys = build_M(zs, cs, outputs_of(cs, zs, random_gaussian(rng, p, p)));
        const bool m_full = numerical_rank(sys.m) == p * p;
        try {
            const WCertificate cert = check_sufficient_W(abar, cs, p);
            full += m_full ? 1 : 0;
            if (cert.full_rank != m_full) {
                record_failure(r, t, std::string("W says ") + (cert.full_rank ? "full" : "deficient") +
                                         ", M says " + (m_full ? "full" : "deficient"));
            }
        } catch (const CertificateUnavailableError& e) {
            record_failure(r, t, e.what());
        }
    }
    if (r.failures == 0) {
        r.detail = std::to_string(full) + " of " + std::to_string(trials) + " instances full rank";
    }
    return r;
}

PropertyResult exact_recovery_suite(long trials, std::uint64_t seed) {
    PropertyResult r{"exact_recovery", trials, 0, 0.0, {}};
    for (long t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, kExactRecovery, t);
        const Eigen::Index p = uniform_int(rng, 1, 6);
        const Eigen::Index n = uniform_int(rng, std::min<long>(3, (p + 1) / 2), 3);

        Matrix a;
        Vector z0;
        Vector x0;
        std::optional<CostModel> model;
        bool admissible = false;
        for (int attempt = 0; attempt < 20 && !admissible; ++attempt) {
            a = random_dynamics(rng, p, 0.8, 1.0, 0.08);
            z0 = random_vector(rng, p);
            x0 = random_vector(rng, n);
            model.emplace(random_feature_model(rng, n, p));
            const AssumptionReport ar = check_assumptions(ParameterSystem(a, z0), *model, x0);
            admissible = ar.a1 && ar.a2 && ar.a3;
        }
        if (!admissible) {
            record_failure(r, t, "could not draw a system passing the assumption checks");
            continue;
        }

        const ParameterSystem sys(a, z0);
        ProbeSchedule schedule;
        schedule.x0 = x0;
        schedule.n0 = 2 * static_cast<long>(p);
        schedule.n = schedule.n0 + 2 * ((p * p + n - 1) / n) + 4;
        schedule.rule.kind = ProbeKind::Random;
        schedule.rule.half_width = 1.0;
        schedule.rule.seed = rng();
        try {
            const Dataset data = collect_dataset(sys, *model, schedule);
            const IdentificationResult id = identify(data, *model);
            if (!id.a_hat) {
                record_failure(r, t, "no A estimate");
                continue;
            }
            const double a_err = (*id.a_hat - a).norm() / a.norm();

            double num = 0.0;
            double den = 0.0;
            for (long s = schedule.n + 1; s <= schedule.n + 10; ++s) {
                const Vector x = x0 + random_vector(rng, n);
                const Matrix c = model->gradient_matrix(x);
                const Vector y = c * parameter_at(sys, s);
                num += (c * predict_parameters(id, s) - y).squaredNorm();
                den += y.squaredNorm();
            }
            const double g_err = std::sqrt(num / den);
            r.worst = std::max({r.worst, a_err, g_err});
            if (!(a_err < kRecoveryTolerance) || !(g_err < kReconstructionTolerance)) {
                record_failure(r, t, "p = " + std::to_string(p) + ", n = " + std::to_string(n) +
                                         ": A error " + fmt(a_err) + ", gradient error " + fmt(g_err));
            }
        } catch (const Error& e) {
            record_failure(r, t, std::string("p = ") + std::to_string(p) + ": " + e.what());
        }
    }
    return r;
}

PropertyResult gradient_model_suite(long points_per_model, std::uint64_t seed) {
    const auto names = model_names();
    PropertyResult r{"gradient_models_fd", points_per_model * static_cast<long>(names.size()), 0, 0.0, {}};
    long trial = 0;
    for (const auto& name : names) {
        const CostModel model = model_by_name(name);
        for (long k = 0; k < points_per_model; ++k, ++trial) {
            auto rng = trial_rng(seed, kGradientModel, trial);
            Vector x(model.n());
            for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = uniform(rng, -2.0, 2.0);
            const Matrix c = model.gradient_matrix(x);
            double err = 0.0;
            for (Eigen::Index i = 0; i < model.n(); ++i) {
                const double h = 1e-6 * (1.0 + std::abs(x(i)));
                Vector xp = x;
                Vector xm = x;
                xp(i) += h;
                xm(i) -= h;
                const Vector fd = (model.features(xp) - model.features(xm)) / (2.0 * h);
                for (Eigen::Index j = 0; j < model.p(); ++j) {
                    err = std::max(err, std::abs(fd(j) - c(i, j)) / std::max(1.0, std::abs(c(i, j))));
                }
            }
            r.worst = std::max(r.worst, err);
            if (!(err < kJacobianTolerance)) {
                record_failure(r, trial, name + ": Jacobian error " + fmt(err));
            }
        }
    }
    return r;
}

PropertyResult kron_identity_suite(long trials, std::uint64_t seed) {
    PropertyResult r{"kron_identities", trials, 0, 0.0, {}};
    for (long t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, kKronIdentity, t);
        auto dim = [&] { return static_cast<Eigen::Index>(uniform_int(rng, 1, 4)); };
        const Eigen::Index m = dim(), n = dim(), k = dim(), l = dim(), s = dim(), u = dim();
        const Matrix a = random_gaussian(rng, m, n);
        const Matrix b = random_gaussian(rng, k, l);
        const Matrix c = random_gaussian(rng, n, s);
        const Matrix d = random_gaussian(rng, l, u);
        const Matrix lhs = kron(a, b) * kron(c, d);
        const Matrix rhs = kron(Matrix(a * c), Matrix(b * d));
        const double e1 = (lhs - rhs).norm() / std::max(1.0, rhs.norm());

        const Matrix x = random_gaussian(rng, n, s);
        const Matrix bb = random_gaussian(rng, s, u);
        const Vector v1 = vec(Matrix(a * x * bb));
        const Vector v2 = kron(Matrix(bb.transpose()), a) * vec(x);
        const double e2 = (v1 - v2).norm() / std::max(1.0, v1.norm());
        const double e3 = (invvec(vec(x), n, s) - x).norm();
        const double err = std::max({e1, e2, e3});
        r.worst = std::max(r.worst, err);
        if (!(err < 1e-12)) {
            record_failure(r, t, "identity error " + fmt(err));
        }
    }
    return r;
}

std::vector<PropertyResult> run_property_suites(long trials, std::uint64_t seed) {
    return {
        kron_identity_suite(trials, seed),
        lifted_null_space_suite(trials, seed),
        null_space_sum_suite(trials, seed),
        rank_deficiency_suite(trials, seed),
        w_certificate_suite(trials, seed),
        exact_recovery_suite(trials, seed),
        gradient_model_suite(std::max(1L, trials / 4), seed),
    };
}

}  // namespace tvopt

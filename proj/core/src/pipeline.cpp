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

#include "tvopt/pipeline.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"
#include "tvopt/cost_model.hpp"
#include "tvopt/errors.hpp"
#include "tvopt/kron.hpp"
#include "tvopt/solvers.hpp"
#include "tvopt/subspace_id.hpp"

namespace tvopt {

std::string_view to_string(Phase phase) {
    switch (phase) {
    case Phase::Constant: return "constant";
    case Phase::Probe: return "probe";
    case Phase::Predict: return "predict";
    }
    return "constant";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Vector nan_vector(Eigen::Index n) { return Vector::Constant(n, kNaN); }

double distance(const Vector& a, const Vector& b) {
    if (!a.allFinite() || !b.allFinite()) return kNaN;
    return (a - b).norm();
}

template <typename F>
auto in_phase(const char* phase, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw PipelineError(phase, e.what());
    }
}

struct Identified {
    SubspaceIdentification sub;
    RecoveryData recovery;
    Eigen::Index visible_rank = 0;
};

Identified identify_stages(const ScenarioConfig& cfg, const Dataset& data, const CostModel& model) {
    Identified out{
        in_phase("subspace identification",
                 [&] { return identify_similar(data.constant_outputs(), model.n(), cfg.tol); }),
        {},
        0};
    out.recovery = in_phase("transform recovery",
                            [&] { return assemble_recovery(out.sub.realization, data, model); });
    out.visible_rank = numerical_rank(stack_rows(out.recovery.cs), cfg.tol);
    return out;
}

std::optional<bool> sufficient_verdict(const Identified& id, Eigen::Index p, const RankTolerance& tol,
                                       std::string* note) {
    try {
        return check_sufficient_W(id.sub.realization.abar, id.recovery.cs, p, tol).full_rank;
    } catch (const CertificateUnavailableError& e) {
        if (note) *note = e.what();
        return std::nullopt;
    }
}

}  // namespace

ExperimentReport run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    const CostModel model = model_by_name(cfg.model);
    const ParameterSystem sys(cfg.a, cfg.z0);
    const Eigen::Index n = model.n();
    const long t_end = cfg.tvgd.t_end;

    ExperimentReport rep;
    rep.config = cfg;
    rep.data = in_phase("data collection", [&] { return collect_dataset(sys, model, cfg.schedule()); });

    const Identified id = identify_stages(cfg, rep.data, model);
    TransformOptions options;
    options.policy = cfg.transform_policy;
    options.tol = cfg.tol;
    options.visible_rank = id.visible_rank;
    const TransformSolution sol = in_phase("transform recovery", [&] {
        return solve_transform(id.recovery.system.m, id.recovery.system.yv, model.p(),
                               id.sub.realization.abar, options);
    });

    IdentificationResult& res = rep.identification;
    res.realization = id.sub.realization;
    res.p = sol.p;
    res.t = sol.t;
    res.a_hat = sol.a_hat;
    res.residual = sol.residual;
    res.rank_m = sol.rank_m;
    res.required_rank = sol.required_rank;

    IdentificationSummary& s = rep.summary;
    s.rank_r = res.rank_r();
    s.rank_m = res.rank_m;
    s.required_rank = res.required_rank;
    s.residual = res.residual;
    s.a_hat = res.a_hat;
    if (res.a_hat) {
        s.a_frobenius_error = (*res.a_hat - cfg.a).norm() / cfg.a.norm();
    }
    s.thm1_necessary = check_necessary(id.recovery.cs, cfg.tol);
    s.thm2_sufficient = sufficient_verdict(id, model.p(), cfg.tol, nullptr);
    s.assumptions = check_assumptions(sys, model, cfg.x0, cfg.tol);
    s.hankel_singular_values = id.sub.factorization.singular_values;

    // Parameter trajectories over the whole horizon.
    rep.z_true.reserve(static_cast<std::size_t>(t_end + 1));
    rep.z_hat.reserve(static_cast<std::size_t>(t_end + 1));
    Vector z = cfg.z0;
    for (long t = 0; t <= t_end; ++t) {
        rep.z_true.push_back(z);
        rep.z_hat.push_back(predict_parameters(res, t));
        z = cfg.a * z;
    }
    for (long t = 0; t <= t_end; ++t) {
        const auto k = static_cast<std::size_t>(t);
        const double rel = (rep.z_hat[k] - rep.z_true[k]).norm() / rep.z_true[k].norm();
        rep.z_prediction_error = std::max(rep.z_prediction_error, rel);
    }
    {
        double num = 0.0;
        double den = 0.0;
        for (long t = 0; t <= cfg.n; ++t) {
            const auto k = static_cast<std::size_t>(t);
            const Vector& y = rep.data.y[k];
            num += (model.gradient_matrix(rep.data.x[k]) * rep.z_hat[k] - y).squaredNorm();
            den += y.squaredNorm();
        }
        s.reconstruction_error = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    }

    // Predicted solution.
    std::vector<Vector> xhat(static_cast<std::size_t>(t_end + 1), nan_vector(n));
    for (long t = 0; t <= cfg.n; ++t) {
        xhat[static_cast<std::size_t>(t)] = rep.data.x[static_cast<std::size_t>(t)];
    }
    Vector x = rep.data.x.back();
    for (long t = cfg.n + 1; t <= t_end && rep.solver_ok; ++t) {
        const Vector& zt = rep.z_hat[static_cast<std::size_t>(t)];
        try {
            if (cfg.solver == SolverKind::ClosedForm) {
                x = quadratic_argmin(zt);
            } else {
                TvgdConfig step = cfg.tvgd;
                step.t_end = t;
                x = tv_gradient_descent(model, [&](long) { return zt; }, x, step, t).x.front();
            }
            xhat[static_cast<std::size_t>(t)] = x;
        } catch (const NoMinimizerError& e) {
            rep.solver_ok = false;
            rep.solver_status = "no minimizer at t = " + std::to_string(t) + ": " + e.what();
        } catch (const DivergenceError& e) {
            rep.solver_ok = false;
            rep.solver_status = e.what();
        }
    }

    // Static baseline: the probe path up to N, then the same update with
    // true gradients until it leaves the divergence bound.
    std::vector<Vector> xgd(static_cast<std::size_t>(t_end + 1), nan_vector(n));
    Vector g = rep.data.x.back();
    for (long t = 0; t <= t_end; ++t) {
        if (t <= cfg.n) {
            g = rep.data.x[static_cast<std::size_t>(t)];
        } else {
            g = static_gd_step(g, query_gradient(sys, model, g, t - 1), cfg.eta);
            if (!g.allFinite() || g.norm() > kDivergenceBound) break;
        }
        xgd[static_cast<std::size_t>(t)] = g;
    }

    // Reference optima from the true parameters.
    std::vector<Vector> xstar(static_cast<std::size_t>(t_end + 1), nan_vector(n));
    Vector prev = cfg.x0;
    for (long t = 0; t <= t_end; ++t) {
        const auto k = static_cast<std::size_t>(t);
        std::vector<Vector> seeds{prev, cfg.x0};
        if (xhat[k].allFinite()) seeds.insert(seeds.begin() + 1, xhat[k]);
        try {
            xstar[k] = reference_optimum(model, rep.z_true[k], cfg.tvgd, seeds);
            prev = xstar[k];
        } catch (const NoMinimizerError&) {
        } catch (const ReferenceUnavailableError&) {
        }
    }

    rep.rows.reserve(static_cast<std::size_t>(t_end + 1));
    for (long t = 0; t <= t_end; ++t) {
        const auto k = static_cast<std::size_t>(t);
        ReportRow row;
        row.t = t;
        row.phase = t <= cfg.n0 ? Phase::Constant : (t <= cfg.n ? Phase::Probe : Phase::Predict);
        row.xhat = xhat[k];
        row.xstar = xstar[k];
        row.xgd = xgd[k];
        row.err_pred = distance(row.xhat, row.xstar);
        row.err_gd = distance(row.xgd, row.xstar);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

CheckReport check_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    const CostModel model = model_by_name(cfg.model);
    const ParameterSystem sys(cfg.a, cfg.z0);

    CheckReport out;
    out.scenario = cfg.name;
    out.assumptions = check_assumptions(sys, model, cfg.x0, cfg.tol);
    const Dataset data = in_phase("data collection", [&] { return collect_dataset(sys, model, cfg.schedule()); });
    const Identified id = identify_stages(cfg, data, model);
    out.rank_r = id.sub.realization.rank();
    out.rank_m = numerical_rank(id.recovery.system.m, cfg.tol);
    out.required_rank = out.rank_r * id.visible_rank;
    out.thm1_necessary = check_necessary(id.recovery.cs, cfg.tol);
    out.thm2_sufficient = sufficient_verdict(id, model.p(), cfg.tol, &out.note);
    return out;
}

std::string check_report_json(const CheckReport& report) {
    nlohmann::ordered_json j;
    j["scenario"] = report.scenario;
    j["a1"] = report.assumptions.a1;
    j["a2"] = report.assumptions.a2;
    j["a3"] = report.assumptions.a3;
    j["rank_r"] = report.rank_r;
    j["rank_M"] = report.rank_m;
    j["required_rank"] = report.required_rank;
    j["thm1_necessary"] = report.thm1_necessary;
    j["thm2_sufficient"] = report.thm2_sufficient ? nlohmann::ordered_json(*report.thm2_sufficient)
                                                  : nlohmann::ordered_json(nullptr);
    if (!report.note.empty()) j["note"] = report.note;
    return j.dump(2);
}

}  // namespace tvopt

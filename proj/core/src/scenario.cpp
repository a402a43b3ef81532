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

#include "tvopt/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tvopt/cost_model.hpp"
#include "tvopt/errors.hpp"

namespace tvopt {

using json = nlohmann::json;

void ScenarioConfig::validate() const {
    const CostModel m = model_by_name(model);
    if (a.rows() != m.p() || a.cols() != m.p()) {
        throw ConfigError("A must be " + std::to_string(m.p()) + "x" + std::to_string(m.p()) +
                          " for model '" + model + "'");
    }
    if (z0.size() != m.p()) {
        throw ConfigError("z0 must have length " + std::to_string(m.p()));
    }
    if (x0.size() != m.n()) {
        throw ConfigError("x0 must have length " + std::to_string(m.n()));
    }
    if (!a.allFinite() || !z0.allFinite() || !x0.allFinite()) {
        throw ConfigError("A, z0 and x0 must be finite");
    }
    if (n0 < 1 || n <= n0) {
        throw ConfigError("need N > N0 >= 1");
    }
    if (!(eta > 0.0)) {
        throw ConfigError("eta must be positive");
    }
    if (!(tol.relative > 0.0)) {
        throw ConfigError("rank_tol must be positive");
    }
    if (solver == SolverKind::ClosedForm && model != "quadratic") {
        throw ConfigError("the closed-form solver only applies to the quadratic model");
    }
    if (tvgd.t_end < n) {
        throw ConfigError("T_end must be at least N");
    }
    tvgd.validate(n);
}

ProbeSchedule ScenarioConfig::schedule() const {
    ProbeSchedule s;
    s.x0 = x0;
    s.n0 = n0;
    s.n = n;
    s.rule.kind = probe;
    s.rule.eta = eta;
    s.rule.half_width = probe_half_width;
    s.rule.seed = seed;
    return s;
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
    Eigen::Index dim = 0;
    for (const auto& b : blocks) {
        if (b.rows() != b.cols()) {
            throw ConfigError("block_diagonal: blocks must be square");
        }
        dim += b.rows();
    }
    Matrix out = Matrix::Zero(dim, dim);
    Eigen::Index k = 0;
    for (const auto& b : blocks) {
        out.block(k, k, b.rows(), b.cols()) = b;
        k += b.rows();
    }
    return out;
}

namespace {

Matrix rotation_block() {
    Matrix e(2, 2);
    e << 0.0, 1.0, -1.0, 0.0;
    return e;
}

Matrix diag(std::initializer_list<double> entries) {
    Vector d(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (double v : entries) d(i++) = v;
    return d.asDiagonal();
}

Vector vec_of(std::initializer_list<double> entries) {
    Vector v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (double e : entries) v(i++) = e;
    return v;
}

}  // namespace

ScenarioConfig builtin_scenario(std::string_view name) {
    const double s = std::sqrt(2.0) / 2.0;
    ScenarioConfig c;
    c.name = std::string(name);
    if (name == "quadratic") {
        c.model = "quadratic";
        c.a = block_diagonal({rotation_block(), diag({0.98, 0.95, 0.981})});
        c.z0 = vec_of({-85.8, -77.9, 1047.0, 329.0, 669.0});
        c.x0 = vec_of({s, s});
        c.n0 = 8;
        c.n = 26;
        c.eta = 1e-3;
        c.solver = SolverKind::ClosedForm;
        c.tvgd = TvgdConfig{1e-2, 500, 150};
    } else if (name == "polynomial3") {
        c.model = "polynomial3";
        c.a = block_diagonal({rotation_block(), diag({0.98, 0.99, 0.99, 0.95}),
                              diag({0.88, 0.87, 0.87, 0.89, 0.87, 0.89, 0.89, 0.85})});
        c.z0 = vec_of({-63.7, 110.2, 2.23, 2.46, 2.46, 6.24, 0.5, 0.3, 0.3, 0.4, 0.3, 0.4, 0.4, 0.6});
        c.x0 = vec_of({s, s});
        c.n0 = 18;
        c.n = 60;
        c.eta = 1e-3;
        c.solver = SolverKind::Tvgd;
        c.tvgd = TvgdConfig{1e-2, 500, 150};
        // A violates distinct eigenvalues and the redundant Kronecker
        // features hide directions of z from every C(x).
        c.transform_policy = TransformPolicy::MinimumNorm;
    } else if (name == "nonpoly") {
        c.model = "nonpoly";
        c.a = diag({0.99, 0.97, 0.98});
        // Not published. f(., z(t)) keeps a unique minimizer over the
        // horizon, and the probe phase moves far enough for M to reach
        // full numerical rank.
        c.z0 = vec_of({20.0, 60.0, -250.0});
        c.x0 = vec_of({0.7});
        c.n0 = 6;
        c.n = 30;
        c.eta = 1e-3;
        c.solver = SolverKind::Tvgd;
        c.tvgd = TvgdConfig{1e-2, 500, 150};
        // Eigenvalues 0.97/0.98/0.99 and a smooth probe path leave M with
        // a condition number near 1e14.
        c.tol.relative = 1e-15;
        c.transform_policy = TransformPolicy::MinimumNorm;
    } else {
        throw ConfigError("unknown built-in scenario '" + std::string(name) + "'");
    }
    c.validate();
    return c;
}

std::vector<std::string> builtin_names() { return {"quadratic", "polynomial3", "nonpoly"}; }

namespace {

Vector parse_vector(const json& j, const char* key) {
    if (!j.is_array()) {
        throw ConfigError(std::string(key) + ": expected an array of numbers");
    }
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) {
            throw ConfigError(std::string(key) + ": entry " + std::to_string(i) + " is not a number");
        }
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return v;
}

Matrix parse_matrix(const json& j, const char* key) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw ConfigError(std::string(key) + ": expected an array of rows");
    }
    const std::size_t cols = j[0].size();
    Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Vector row = parse_vector(j[i], key);
        if (static_cast<std::size_t>(row.size()) != cols) {
            throw ConfigError(std::string(key) + ": ragged rows");
        }
        m.row(static_cast<Eigen::Index>(i)) = row.transpose();
    }
    return m;
}

template <typename T>
T get_as(const json& j, const char* key) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string(key) + ": wrong value type");
    }
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed scenario document: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("scenario document must be an object");
    }
    static const std::set<std::string> known = {
        "scenario", "model", "A", "A_blocks", "z0", "x0", "N0", "N", "eta", "beta", "D", "T_end",
        "solver", "probe_rule", "probe_half_width", "transform_policy", "rank_tol", "seed", "output_dir"};
    for (const auto& [key, value] : doc.items()) {
        if (!known.contains(key)) {
            throw ConfigError("unknown key '" + key + "'");
        }
    }
    for (const char* key : {"scenario", "z0", "x0", "N0", "N"}) {
        if (!doc.contains(key)) {
            throw ConfigError(std::string("missing required key '") + key + "'");
        }
    }

    ScenarioConfig c;
    c.name = get_as<std::string>(doc["scenario"], "scenario");
    c.model = doc.contains("model") ? get_as<std::string>(doc["model"], "model") : c.name;
    (void)model_by_name(c.model);

    if (doc.contains("A") == doc.contains("A_blocks")) {
        throw ConfigError("give exactly one of 'A' and 'A_blocks'");
    }
    if (doc.contains("A")) {
        c.a = parse_matrix(doc["A"], "A");
    } else {
        const json& blocks = doc["A_blocks"];
        if (!blocks.is_array() || blocks.empty()) {
            throw ConfigError("A_blocks: expected a nonempty array of blocks");
        }
        std::vector<Matrix> parts;
        for (const json& b : blocks) {
            if (b.is_array() && !b.empty() && b[0].is_array()) {
                parts.push_back(parse_matrix(b, "A_blocks"));
            } else {
                parts.push_back(parse_vector(b, "A_blocks").asDiagonal());
            }
        }
        c.a = block_diagonal(parts);
    }
    c.z0 = parse_vector(doc["z0"], "z0");
    c.x0 = parse_vector(doc["x0"], "x0");
    c.n0 = get_as<long>(doc["N0"], "N0");
    c.n = get_as<long>(doc["N"], "N");
    if (doc.contains("eta")) c.eta = get_as<double>(doc["eta"], "eta");
    if (doc.contains("beta")) c.tvgd.beta = get_as<double>(doc["beta"], "beta");
    if (doc.contains("D")) c.tvgd.inner_steps = get_as<long>(doc["D"], "D");
    if (doc.contains("T_end")) c.tvgd.t_end = get_as<long>(doc["T_end"], "T_end");
    if (doc.contains("rank_tol")) c.tol.relative = get_as<double>(doc["rank_tol"], "rank_tol");
    if (doc.contains("seed")) c.seed = get_as<std::uint64_t>(doc["seed"], "seed");
    if (doc.contains("output_dir")) c.output_dir = get_as<std::string>(doc["output_dir"], "output_dir");
    if (doc.contains("probe_half_width")) {
        c.probe_half_width = get_as<double>(doc["probe_half_width"], "probe_half_width");
    }

    c.solver = c.model == "quadratic" ? SolverKind::ClosedForm : SolverKind::Tvgd;
    if (doc.contains("solver")) {
        const auto s = get_as<std::string>(doc["solver"], "solver");
        if (s == "closed_form") c.solver = SolverKind::ClosedForm;
        else if (s == "tvgd") c.solver = SolverKind::Tvgd;
        else throw ConfigError("solver: expected 'closed_form' or 'tvgd'");
    }
    if (doc.contains("probe_rule")) {
        const auto s = get_as<std::string>(doc["probe_rule"], "probe_rule");
        if (s == "gradient_descent") c.probe = ProbeKind::GradientDescent;
        else if (s == "hold") c.probe = ProbeKind::Hold;
        else if (s == "random") c.probe = ProbeKind::Random;
        else throw ConfigError("probe_rule: expected 'gradient_descent', 'hold' or 'random'");
    }
    if (doc.contains("transform_policy")) {
        const auto s = get_as<std::string>(doc["transform_policy"], "transform_policy");
        if (s == "strict") c.transform_policy = TransformPolicy::Strict;
        else if (s == "minimum_norm") c.transform_policy = TransformPolicy::MinimumNorm;
        else throw ConfigError("transform_policy: expected 'strict' or 'minimum_norm'");
    }
    c.validate();
    return c;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open scenario file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string_view to_string(TransformPolicy policy) {
    return policy == TransformPolicy::Strict ? "strict" : "minimum_norm";
}

std::string_view to_string(SolverKind solver) {
    return solver == SolverKind::ClosedForm ? "closed_form" : "tvgd";
}

std::string_view to_string(ProbeKind probe) {
    switch (probe) {
    case ProbeKind::GradientDescent: return "gradient_descent";
    case ProbeKind::Hold: return "hold";
    case ProbeKind::Random: return "random";
    }
    return "gradient_descent";
}

}  // namespace tvopt

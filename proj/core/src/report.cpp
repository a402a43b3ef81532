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

#include "tvopt/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <system_error>

#include "json.hpp"
#include "tvopt/errors.hpp"

namespace tvopt {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trajectory_csv(std::ostream& out, const ExperimentReport& report) {
    const Eigen::Index n = report.config.x0.size();
    out << "t,phase";
    for (const char* col : {"xhat", "xstar", "xgd"}) {
        for (Eigen::Index i = 1; i <= n; ++i) out << ',' << col << '_' << i;
    }
    out << ",err_pred,err_gd\n";
    for (const ReportRow& row : report.rows) {
        out << row.t << ',' << to_string(row.phase);
        for (const Vector* v : {&row.xhat, &row.xstar, &row.xgd}) {
            for (Eigen::Index i = 0; i < v->size(); ++i) out << ',' << format_double((*v)(i));
        }
        out << ',' << format_double(row.err_pred) << ',' << format_double(row.err_gd) << '\n';
    }
}

namespace {

ojson number(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson matrix_json(const Matrix& m) {
    ojson rows = ojson::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ojson vector_json(const Vector& v) {
    ojson out = ojson::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
    return out;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path.string(), "cannot open for writing");
    out << text;
    out.close();
    if (!out) throw IoError(path.string(), "write failed");
}

}  // namespace

std::string summary_json(const ExperimentReport& report) {
    const IdentificationSummary& s = report.summary;
    ojson j;
    j["scenario"] = report.config.name;
    j["rank_r"] = s.rank_r;
    j["residual"] = number(s.residual);
    j["A_frobenius_error"] = s.a_frobenius_error ? number(*s.a_frobenius_error) : ojson(nullptr);
    j["thm1_necessary"] = s.thm1_necessary;
    j["thm2_sufficient"] = s.thm2_sufficient ? ojson(*s.thm2_sufficient) : ojson(nullptr);
    j["a1"] = s.assumptions.a1;
    j["a2"] = s.assumptions.a2;
    j["a3"] = s.assumptions.a3;
    j["model"] = report.config.model;
    j["rank_M"] = s.rank_m;
    j["required_rank"] = s.required_rank;
    j["transform_policy"] = std::string(to_string(report.config.transform_policy));
    j["solver"] = std::string(to_string(report.config.solver));
    j["solver_status"] = report.solver_status;
    j["z_prediction_error"] = number(report.z_prediction_error);
    j["reconstruction_error"] = number(s.reconstruction_error);
    j["A_hat"] = s.a_hat ? matrix_json(*s.a_hat) : ojson(nullptr);
    j["hankel_singular_values"] = vector_json(s.hankel_singular_values);
    return j.dump(2) + "\n";
}

void emit_report(const ExperimentReport& report, const fs::path& dir, bool plots) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(dir.string(), ec.message());

    {
        const fs::path path = dir / "trajectory.csv";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError(path.string(), "cannot open for writing");
        write_trajectory_csv(out, report);
        out.close();
        if (!out) throw IoError(path.string(), "write failed");
    }
    write_file(dir / "summary.json", summary_json(report));

    if (!plots) return;
    const fs::path pdir = dir / "plots";
    fs::create_directories(pdir, ec);
    if (ec) throw IoError(pdir.string(), ec.message());

    const Eigen::Index n = report.config.x0.size();
    auto series = [&](const std::string& name, auto value) {
        std::string text;
        for (const ReportRow& row : report.rows) {
            text += std::to_string(row.t) + ' ' + format_double(value(row)) + '\n';
        }
        write_file(pdir / (name + ".dat"), text);
    };
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::string k = std::to_string(i + 1);
        series("xhat_" + k, [i](const ReportRow& r) { return r.xhat(i); });
        series("xstar_" + k, [i](const ReportRow& r) { return r.xstar(i); });
    }
    series("err_pred", [](const ReportRow& r) { return r.err_pred; });
    series("err_gd", [](const ReportRow& r) { return r.err_gd; });
}

}  // namespace tvopt

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

#include <benchmark/benchmark.h>

#include "tvopt/coordinate_recovery.hpp"
#include "tvopt/cost_model.hpp"
#include "tvopt/oracle.hpp"
#include "tvopt/pipeline.hpp"
#include "tvopt/scenario.hpp"
#include "tvopt/subspace_id.hpp"

namespace {

using namespace tvopt;

struct Fixture {
    ScenarioConfig cfg = builtin_scenario("quadratic");
    CostModel model = model_by_name("quadratic");
    Dataset data = collect_dataset(ParameterSystem(cfg.a, cfg.z0), model, cfg.schedule());
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

void BM_HankelFactorize(benchmark::State& state) {
    const auto& f = fixture();
    for (auto _ : state) {
        auto sub = identify_similar(f.data.constant_outputs(), f.model.n());
        benchmark::DoNotOptimize(sub.realization.abar.data());
    }
}
BENCHMARK(BM_HankelFactorize);

void BM_TransformRecovery(benchmark::State& state) {
    const auto& f = fixture();
    const auto sub = identify_similar(f.data.constant_outputs(), f.model.n());
    for (auto _ : state) {
        const RecoveryData rec = assemble_recovery(sub.realization, f.data, f.model);
        auto sol = solve_transform(rec.system.m, rec.system.yv, f.model.p(), sub.realization.abar);
        benchmark::DoNotOptimize(sol.p.data());
    }
}
BENCHMARK(BM_TransformRecovery);

void BM_WCertificate(benchmark::State& state) {
    const auto& f = fixture();
    const auto sub = identify_similar(f.data.constant_outputs(), f.model.n());
    const RecoveryData rec = assemble_recovery(sub.realization, f.data, f.model);
    for (auto _ : state) {
        auto cert = check_sufficient_W(sub.realization.abar, rec.cs, f.model.p());
        benchmark::DoNotOptimize(cert.rank);
    }
}
BENCHMARK(BM_WCertificate);

void BM_RunScenario(benchmark::State& state, const char* name) {
    const ScenarioConfig cfg = builtin_scenario(name);
    for (auto _ : state) {
        auto rep = run_scenario(cfg);
        benchmark::DoNotOptimize(rep.rows.data());
    }
}
BENCHMARK_CAPTURE(BM_RunScenario, quadratic, "quadratic")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunScenario, nonpoly, "nonpoly")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

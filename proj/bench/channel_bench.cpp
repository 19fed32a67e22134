// SPDX-License-Identifier: Apache-2.0
//
// polsim - link-level simulator for dual-polarized RIS polarization shift keying
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Measures the fast composite-channel path against the per-element
// reference it is tested against, and the OpenMP Monte Carlo loop
// against its single-thread run.

#include <benchmark/benchmark.h>

#include <random>

#include "polsim/experiments.hpp"
#include "polsim/riscontrol.hpp"

namespace {

polsim::LinkBudget bench_budget(std::size_t m)
{
    std::mt19937 gen(12345);
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    polsim::LinkBudget b;
    b.eta = 1e-7;
    b.mu1.resize(m);
    b.mu2.resize(m);
    b.psi.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        b.mu1[i] = phase(gen);
        b.mu2[i] = phase(gen);
        b.psi[i] = b.mu1[i] + b.mu2[i];
    }
    return b;
}

void BM_ComposeBruteforce(benchmark::State &state)
{
    const auto m = static_cast<std::size_t>(state.range(0));
    const polsim::LinkBudget budget = bench_budget(m);
    const polsim::PhaseProfile p = polsim::scheme1_profile(budget.psi, true);
    for (auto _ : state) {
        auto h = polsim::compose_channel_bruteforce(p, budget, {0.3});
        benchmark::DoNotOptimize(h);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ComposeFast(benchmark::State &state)
{
    const auto m = static_cast<std::size_t>(state.range(0));
    const polsim::LinkBudget budget = bench_budget(m);
    const polsim::PhaseProfile p = polsim::scheme1_profile(budget.psi, true);
    for (auto _ : state) {
        auto h = polsim::compose_channel_fast(p, budget, {0.3});
        benchmark::DoNotOptimize(h);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

polsim::SimConfig bench_config()
{
    polsim::SimConfig cfg;
    cfg.scheme = polsim::Scheme::Scheme2;
    cfg.beta_deg = 10.0;
    cfg.sigma_e_deg = 4.0; // per-trial precoder rebuild, the expensive path
    cfg.area_m2 = 0.8;
    cfg.trials = 20000;
    return cfg;
}

void BM_MonteCarloSerial(benchmark::State &state)
{
    const polsim::SimConfig cfg = bench_config();
    const polsim::TrialPlan plan(cfg);
    for (auto _ : state) {
        auto est = polsim::estimate_ber(plan, cfg.trials, cfg.master_seed, 1);
        benchmark::DoNotOptimize(est);
    }
    state.SetItemsProcessed(state.iterations() * cfg.trials);
}

void BM_MonteCarloParallel(benchmark::State &state)
{
    const polsim::SimConfig cfg = bench_config();
    const polsim::TrialPlan plan(cfg);
    for (auto _ : state) {
        auto est = polsim::estimate_ber(plan, cfg.trials, cfg.master_seed, 0);
        benchmark::DoNotOptimize(est);
    }
    state.SetItemsProcessed(state.iterations() * cfg.trials);
}

BENCHMARK(BM_ComposeBruteforce)->Arg(64)->Arg(400);
BENCHMARK(BM_ComposeFast)->Arg(64)->Arg(400);
BENCHMARK(BM_MonteCarloSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

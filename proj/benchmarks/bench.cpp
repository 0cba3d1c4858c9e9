#include <benchmark/benchmark.h>

#include "nsrl/agent.hpp"
#include "nsrl/evi.hpp"
#include "nsrl/generators.hpp"
#include "nsrl/run.hpp"
#include "nsrl/solve.hpp"

using namespace nsrl;

namespace {

ConfidenceModel midrun_confidence(int S) {
    // Boxes as they look a few thousand steps into a chain run.
    auto m = chain_testbed(S, 1.0);
    SufficientStats stats(S, 2);
    RngStream rng(7);
    int s = 0;
    for (int t = 0; t < 5000; ++t) {
        const int a = static_cast<int>(rng.below(2));
        auto smp = sample_step(m, s, a, rng);
        stats.record(s, a, smp.reward, smp.next_state);
        s = smp.next_state;
    }
    stats.fold_episode();
    return build_confidence(stats, 0.1, 0.0, 0.0, 1.0);
}

void BM_InnerMax(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    RngStream rng(3);
    std::vector<double> lo(n), hi(n), v(n), out(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        lo[i] = 0.0;
        hi[i] = 1.0;
        v[i] = rng.uniform01();
        sum += v[i];
    }
    auto order = descending_value_order(v);
    for (auto _ : state) {
        inner_max_transition(lo, hi, order, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_InnerMax)->Arg(6)->Arg(20)->Arg(100);

void BM_ExtendedValueIteration(benchmark::State& state) {
    const int S = static_cast<int>(state.range(0));
    auto conf = midrun_confidence(S);
    const double eps = 1e-4;
    for (auto _ : state) {
        auto res = extended_value_iteration(conf, eps, 0.9, 0);
        benchmark::DoNotOptimize(res.gain);
    }
}
BENCHMARK(BM_ExtendedValueIteration)->Arg(6)->Arg(12);

void BM_OptimalGain(benchmark::State& state) {
    auto m = chain_testbed(static_cast<int>(state.range(0)), 1.0);
    for (auto _ : state) {
        auto res = optimal_gain(m, 1e-6);
        benchmark::DoNotOptimize(res.gain);
    }
}
BENCHMARK(BM_OptimalGain)->Arg(6)->Arg(12);

void BM_FiniteHorizonBackwardDP(benchmark::State& state) {
    auto env = NonStationaryEnv::stationary(chain_testbed(6, 1.0), state.range(0), 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(finite_horizon_value(env));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FiniteHorizonBackwardDP)->Arg(4096)->Arg(65536);

void BM_AgentRun(benchmark::State& state) {
    const long long T = state.range(0);
    auto env = NonStationaryEnv::stationary(chain_testbed(6, 1.0), T, 0);
    auto cfg = baseline_config("vb-ucrl", 0.1, 1.0, 6, 2);
    cfg.v_hat_r = 0.0;
    cfg.v_hat_p = 0.0;
    RunOptions opts;
    opts.record_steps = false;
    for (auto _ : state) {
        auto rec = run_episode_loop(env, cfg, 1, -1, opts);
        benchmark::DoNotOptimize(rec.regret);
    }
    state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_AgentRun)->Arg(2048)->Arg(16384)->Unit(benchmark::kMillisecond);

} // namespace

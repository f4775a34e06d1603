#include <benchmark/benchmark.h>

#include "svol/density.hpp"
#include "svol/gh.hpp"
#include "svol/gig.hpp"
#include "svol/heston.hpp"
#include "svol/rng.hpp"
#include "svol/simulate.hpp"

namespace {

const svol::HestonParams kBase(0.0, 2.0, 0.04, 0.3, -0.7);

void BM_ZigguratNormal(benchmark::State& state) {
    svol::SplitRng rng(42, 0);
    double acc = 0.0;
    for (auto _ : state) acc += rng.normal();
    benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_ZigguratNormal);

void BM_HestonEuler(benchmark::State& state) {
    svol::SimConfig cfg;
    cfg.n_paths = static_cast<std::size_t>(state.range(0));
    cfg.steps_per_year = 2016;
    cfg.horizon = svol::Horizon(1.0);
    cfg.seed = 7;
    for (auto _ : state) {
        svol::PathBundle b = svol::simulate_heston(kBase, svol::V0Spec::from_stationary(), cfg);
        benchmark::DoNotOptimize(b.x.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * cfg.total_steps());
}
BENCHMARK(BM_HestonEuler)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_MarginalDensity(benchmark::State& state) {
    svol::Horizon t = svol::Horizon::days(5.0);
    std::vector<double> grid = svol::density_grid(kBase, t);
    for (auto _ : state) {
        svol::DensityCurve c = svol::marginal_density(kBase, t, grid);
        benchmark::DoNotOptimize(c.values.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}
BENCHMARK(BM_MarginalDensity)->Unit(benchmark::kMillisecond);

void BM_GigSampler(benchmark::State& state) {
    svol::GIGParams g(-0.5, 1.0, 2.0);
    for (auto _ : state) {
        std::vector<double> v = svol::gig_sample(g, 10000, 11);
        benchmark::DoNotOptimize(v.data());
    }
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_GigSampler)->Unit(benchmark::kMillisecond);

void BM_GhFitLikelihood(benchmark::State& state) {
    svol::GHParams h(-0.5, 50.0, -5.0, 0.02, 0.0);
    std::vector<double> xs = svol::gh_sample(h, 10000, 3);
    for (auto _ : state) {
        double acc = 0.0;
        for (double x : xs) acc += svol::gh_log_pdf(h, x);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}
BENCHMARK(BM_GhFitLikelihood)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

// Serial reference vs OpenMP batch kernels.

#include <benchmark/benchmark.h>

#include <vector>

#include "presliding/sweep.hpp"

using namespace presliding;

namespace {

std::vector<double> force_grid(int n) {
    std::vector<double> f;
    for (int k = 1; k <= n; ++k) {
        f.push_back(-static_cast<double>(k) / n);
    }
    return f;
}

std::vector<double> ratio_grid(int n) {
    std::vector<double> r;
    for (int k = 0; k < n; ++k) {
        r.push_back(1.0 + 10.0 * k);
    }
    return r;
}

std::vector<sweep::AuditPoint> audit_points(int n) {
    std::vector<sweep::AuditPoint> points;
    for (int k = 1; k <= n; ++k) {
        points.push_back({1.0, 1.0 + 0.1 * (k % 80), -static_cast<double>(k) / n});
    }
    return points;
}

std::vector<SimConfig> sim_configs(int n) {
    std::vector<SimConfig> configs;
    for (int k = 0; k < n; ++k) {
        SimConfig cfg;
        cfg.params.sigma = 10.0 * (1 + k % 10);
        cfg.max_reversals = 20;
        configs.push_back(cfg);
    }
    return configs;
}

std::vector<sweep::ChainJob> chain_jobs(int n) {
    std::vector<sweep::ChainJob> jobs;
    for (int k = 0; k < n; ++k) {
        sweep::ChainJob job;
        job.f_0 = -1.0 + 0.9 * k / n;
        job.params.sigma = 10.0 + k;
        job.n_steps = 200;
        jobs.push_back(job);
    }
    return jobs;
}

void BM_PotentialEnergyGridSerial(benchmark::State& state) {
    const auto f = force_grid(static_cast<int>(state.range(0)));
    const auto r = ratio_grid(64);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep::potential_energy_grid_serial(f, r, 1.0));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.size() * r.size()));
}

void BM_PotentialEnergyGridOmp(benchmark::State& state) {
    const auto f = force_grid(static_cast<int>(state.range(0)));
    const auto r = ratio_grid(64);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep::potential_energy_grid_omp(f, r, 1.0));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.size() * r.size()));
}

void BM_PredictorAuditSerial(benchmark::State& state) {
    const auto points = audit_points(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep::predictor_audit_serial(points));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PredictorAuditOmp(benchmark::State& state) {
    const auto points = audit_points(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep::predictor_audit_omp(points));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SimulateBatchSerial(benchmark::State& state) {
    const auto configs = sim_configs(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep::simulate_batch_serial(configs));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SimulateBatchOmp(benchmark::State& state) {
    const auto configs = sim_configs(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep::simulate_batch_omp(configs));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ChainBatchSerial(benchmark::State& state) {
    const auto jobs = chain_jobs(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep::chain_batch_serial(jobs));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ChainBatchOmp(benchmark::State& state) {
    const auto jobs = chain_jobs(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep::chain_batch_omp(jobs));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_PotentialEnergyGridSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PotentialEnergyGridOmp)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_PredictorAuditSerial)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PredictorAuditOmp)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SimulateBatchSerial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateBatchOmp)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ChainBatchSerial)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChainBatchOmp)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "barypoly/kernels.hpp"

namespace {

using namespace barypoly::kernels;

struct StepInput {
    std::vector<double> coords, t, c, out;
    std::size_t dim = 3;

    explicit StepInput(std::size_t count) : coords(count * 3), t(count), c(count), out(count * 3) {
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(0.01, 0.99);
        for (auto& x : coords) x = u(rng);
        for (std::size_t k = 0; k < count; ++k) t[k] = u(rng), c[k] = 1.0 - t[k];
    }
};

template <auto Step>
void BM_step(benchmark::State& state) {
    StepInput in(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        Step(FamilyView{in.coords, in.dim}, in.t, in.c, in.out);
        benchmark::DoNotOptimize(in.out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Scan>
void BM_fixed_point_scan(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(Scan(static_cast<std::size_t>(state.range(0)), 1e-3));
}

template <auto Scan>
void BM_h_sign_scan(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(Scan(8, static_cast<std::size_t>(state.range(0))));
}

template <auto Grid>
void BM_km_cm_grid(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(Grid(0.05, 0.95, static_cast<std::size_t>(state.range(0))));
}

template <auto Batch>
void BM_convergence_batch(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.2, 0.8);
    std::vector<ConvergenceJob> jobs;
    for (int j = 0; j < state.range(0); ++j) {
        const std::size_t p = 2 + j % 7;
        ConvergenceJob job{std::vector<double>(p * 2), 2, std::vector<double>(p), 400};
        for (auto& x : job.coords) x = u(rng);
        for (auto& x : job.t) x = u(rng);
        jobs.push_back(std::move(job));
    }
    for (auto _ : state) benchmark::DoNotOptimize(Batch(jobs));
}

}  // namespace

BENCHMARK(BM_step<serial::barypolygon_step>)->Name("step/serial")->Range(1 << 10, 1 << 20);
BENCHMARK(BM_step<parallel::barypolygon_step>)->Name("step/parallel")->Range(1 << 10, 1 << 20);
BENCHMARK(BM_fixed_point_scan<serial::fixed_point_scan3>)->Name("fixed_point_scan3/serial")->Arg(100)->Arg(200);
BENCHMARK(BM_fixed_point_scan<parallel::fixed_point_scan3>)->Name("fixed_point_scan3/parallel")->Arg(100)->Arg(200);
BENCHMARK(BM_h_sign_scan<serial::h_sign_scan>)->Name("h_sign_scan/serial")->Arg(10000)->Arg(1000000);
BENCHMARK(BM_h_sign_scan<parallel::h_sign_scan>)->Name("h_sign_scan/parallel")->Arg(10000)->Arg(1000000);
BENCHMARK(BM_km_cm_grid<serial::km_cm_grid_residual>)->Name("km_cm_grid/serial")->Arg(9)->Arg(99);
BENCHMARK(BM_km_cm_grid<parallel::km_cm_grid_residual>)->Name("km_cm_grid/parallel")->Arg(9)->Arg(99);
BENCHMARK(BM_convergence_batch<serial::run_convergence_batch>)->Name("convergence_batch/serial")->Arg(50)->Arg(500);
BENCHMARK(BM_convergence_batch<parallel::run_convergence_batch>)->Name("convergence_batch/parallel")->Arg(50)->Arg(500);

BENCHMARK_MAIN();

// Serial reference vs OpenMP kernels on the operators that dominate a time step.
// Every benchmark takes (n, exec) with exec 0 = serial, 1 = OpenMP.

#include <benchmark/benchmark.h>

#include "hallmhd/evolution.hpp"
#include "hallmhd/kernels.hpp"
#include "hallmhd/norms.hpp"
#include "hallmhd/operators.hpp"
#include "hallmhd/random_fields.hpp"

using namespace hallmhd;

namespace {

struct ExecScope {
    explicit ExecScope(const benchmark::State& state) : before(kernels::default_exec()) {
        kernels::set_default_exec(state.range(1) == 0 ? kernels::Exec::Serial : kernels::Exec::Parallel);
    }
    ~ExecScope() { kernels::set_default_exec(before); }
    kernels::Exec before;
};

GridSpec grid_for(const benchmark::State& state) { return make_grid(static_cast<int>(state.range(0)), 2.0 * kPi); }

void label(benchmark::State& state) {
    state.SetLabel(state.range(1) == 0 ? "serial" : "openmp x" + std::to_string(kernels::max_threads()));
}

void BM_RawModeSum(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto f = [](int i1, int i2, int i3, std::size_t) { return 1.0 / (1.0 + i1 + i2 * i2 + i3 * i3 * i3); };
    for (auto _ : state) {
        const double s = state.range(1) == 0 ? kernels::serial::sum_modes(n, f) : kernels::parallel::sum_modes(n, f);
        benchmark::DoNotOptimize(s);
    }
    label(state);
}

void BM_LerayProject(benchmark::State& state) {
    ExecScope scope(state);
    const SpectralVectorField w = random_vector_field(grid_for(state), 1);
    for (auto _ : state) benchmark::DoNotOptimize(leray_project(w));
    label(state);
}

void BM_Curl(benchmark::State& state) {
    ExecScope scope(state);
    const SpectralVectorField w = random_vector_field(grid_for(state), 2);
    for (auto _ : state) benchmark::DoNotOptimize(curl(w));
    label(state);
}

void BM_SobolevNorm(benchmark::State& state) {
    ExecScope scope(state);
    const SpectralVectorField w = random_vector_field(grid_for(state), 3);
    for (auto _ : state) benchmark::DoNotOptimize(sobolev_norm(w, 3.0));
    label(state);
}

void BM_Advect(benchmark::State& state) {
    ExecScope scope(state);
    const GridSpec g = grid_for(state);
    const SpectralVectorField u = random_solenoidal_field(g, 4), w = random_solenoidal_field(g, 5);
    for (auto _ : state) benchmark::DoNotOptimize(advect(u, w));
    label(state);
}

void BM_RhsFull(benchmark::State& state) {
    ExecScope scope(state);
    const GridSpec g = grid_for(state);
    const SpectralVectorField u = random_solenoidal_field(g, 6), b = random_solenoidal_field(g, 7);
    const PhysicalParams params{1.0, 1.0, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(rhs_full(u, b, params));
    label(state);
}

void sizes(benchmark::internal::Benchmark* b) {
    for (int n : {32, 64})
        for (int exec : {0, 1}) b->Args({n, exec});
    b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_RawModeSum)->Apply(sizes);
BENCHMARK(BM_LerayProject)->Apply(sizes);
BENCHMARK(BM_Curl)->Apply(sizes);
BENCHMARK(BM_SobolevNorm)->Apply(sizes);
BENCHMARK(BM_Advect)->Apply(sizes);
BENCHMARK(BM_RhsFull)->Apply(sizes);

BENCHMARK_MAIN();

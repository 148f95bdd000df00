#include <benchmark/benchmark.h>

#include "signorini/blowup.hpp"
#include "signorini/exact_solutions.hpp"
#include "signorini/frequency.hpp"
#include "signorini/solver.hpp"

using namespace signorini;

namespace {

ScalarField profile_field(int dim, int m) {
    const Direction axis = Direction::axis(dim - 2, dim);
    auto g = make_grid(dim, m, 1.0);
    return sample(g, [&](const Vec& p) { return regular_profile(p, axis); }, true);
}

void BM_Interpolate3D(benchmark::State& state) {
    const auto u = profile_field(3, 65);
    double x = -0.9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(interpolate(u, {x, 0.3, 0.2}));
        x += 1e-4;
        if (x > 0.9) x = -0.9;
    }
}
BENCHMARK(BM_Interpolate3D);

void BM_Gradient3D(benchmark::State& state) {
    const auto u = profile_field(3, 65);
    double x = -0.9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gradient(u, {x, 0.3, 0.2}));
        x += 1e-4;
        if (x > 0.9) x = -0.9;
    }
}
BENCHMARK(BM_Gradient3D);

void BM_SolveSweeps2D(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const Direction axis = Direction::axis(0, 2);
    ProblemSpec spec;
    spec.dim = 2;
    spec.m = m;
    spec.max_sweeps = 50;  // fixed sweep count; convergence is not the point here
    spec.boundary = [&](const Vec& p) { return regular_profile(p, axis); };
    for (auto _ : state) benchmark::DoNotOptimize(solve(spec).sweeps);
    state.SetItemsProcessed(state.iterations() * 50 * (m * std::int64_t(m) / 2));
}
BENCHMARK(BM_SolveSweeps2D)->Arg(65)->Arg(129);

void BM_SolveSweeps3D(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    ProblemSpec spec;
    spec.dim = 3;
    spec.m = m;
    spec.max_sweeps = 10;
    spec.boundary = [](const Vec& p) { return p[1]; };
    for (auto _ : state) benchmark::DoNotOptimize(solve(spec).sweeps);
    state.SetItemsProcessed(state.iterations() * 10 * (m * std::int64_t(m) * m / 2));
}
BENCHMARK(BM_SolveSweeps3D)->Arg(33)->Arg(65);

void BM_BallIntegrals(benchmark::State& state) {
    const auto u = profile_field(3, 65);
    for (auto _ : state) benchmark::DoNotOptimize(ball_integrals(u, Vec{}, 0.5).V);
}
BENCHMARK(BM_BallIntegrals);

void BM_FrequencyProfile2D(benchmark::State& state) {
    const auto u = profile_field(2, 129);
    const auto radii = default_radii(u.grid(), Vec{});
    for (auto _ : state)
        benchmark::DoNotOptimize(frequency_profile(u, Vec{}, radii).samples.size());
}
BENCHMARK(BM_FrequencyProfile2D);

void BM_FitProfile(benchmark::State& state) {
    const auto u = profile_field(2, 129);
    const BlowupField v = rescale(u, Vec{}, 0.25, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(fit_profile(v).mu);
}
BENCHMARK(BM_FitProfile);

}  // namespace

BENCHMARK_MAIN();

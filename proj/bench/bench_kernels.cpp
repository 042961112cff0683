// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>
#include <vector>

#include "droneroute/kernels.hpp"
#include "droneroute/simulator.hpp"

using namespace droneroute;

namespace {

const HomePoint kHome{4.60122, -74.0658};

std::vector<GeoPoint> cloud(std::size_t n) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-0.05, 0.05);
    std::vector<GeoPoint> v(n);
    for (auto& g : v) g = {kHome.latitude_deg + d(rng), kHome.longitude_deg + d(rng)};
    return v;
}

template <auto Kernel>
void BM_project(benchmark::State& state) {
    LocalFrame frame(kHome, GeodesyMode::Corrected);
    auto in = cloud(static_cast<std::size_t>(state.range(0)));
    std::vector<LocalCoord> out(in.size());
    for (auto _ : state) {
        Kernel(frame, in, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void BM_axis_errors(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<LocalCoord> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = {double(i), -double(i)}, b[i] = {double(i) * 0.5, 1.0};
    std::vector<double> ex(n), ez(n);
    for (auto _ : state) {
        Kernel(a, b, ex, ez);
        benchmark::DoNotOptimize(ex.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

Path square_route() {
    LocalFrame frame(kHome, GeodesyMode::Corrected);
    Path p;
    p.route_id = "PATH-1";
    const double pts[][2] = {{0, 0}, {40, 0}, {40, 40}, {0, 40}, {0, 0}};
    int id = 0;
    for (auto [x, z] : pts) {
        auto g = frame.from_local({x, z});
        PathPoint pt;
        pt.id = id++;
        pt.latitude_deg = g.latitude_deg;
        pt.longitude_deg = g.longitude_deg;
        pt.altitude_m = 10.0;
        pt.task = CameraTask::Interval;
        p.points.push_back(pt);
    }
    return p;
}

template <auto Sweep>
void BM_seed_sweep(benchmark::State& state) {
    auto path = square_route();
    SimConfig c;
    c.noise_sigma_m = 0.15;
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(state.range(0)));
    std::iota(seeds.begin(), seeds.end(), 1);
    for (auto _ : state) benchmark::DoNotOptimize(Sweep(path, kHome, c, GeodesyMode::Corrected, seeds));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_project<kernels::project_serial>)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_project<kernels::project_parallel>)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_axis_errors<kernels::axis_errors_serial>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_axis_errors<kernels::axis_errors_parallel>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_seed_sweep<simulate_seeds_serial>)->Arg(64);
BENCHMARK(BM_seed_sweep<simulate_seeds_parallel>)->Arg(64);

BENCHMARK_MAIN();

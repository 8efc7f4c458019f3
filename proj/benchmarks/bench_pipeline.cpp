#include "generators.hpp"

#include <wtopo/encodings.hpp>
#include <wtopo/persistence.hpp>

#include <benchmark/benchmark.h>

using namespace wtopo;
using namespace wtopo::testing;

namespace {

Graph synthetic(std::size_t n) {
    Rng rng(42);
    return random_connected_graph(rng, n, n + 1);
}

void BM_GlobalEncoding(benchmark::State& state) {
    const auto g = synthetic(static_cast<std::size_t>(state.range(0)));
    const auto cfg = default_pi_config(g);
    for (auto _ : state) benchmark::DoNotOptimize(global_encoding(g, 0.05, cfg));
    state.SetLabel(std::to_string(g.num_edges()) + " edges");
}
BENCHMARK(BM_GlobalEncoding)->Arg(500)->Arg(2500)->Unit(benchmark::kMillisecond);

void BM_LocalEncoding(benchmark::State& state) {
    const auto g = synthetic(static_cast<std::size_t>(state.range(0)));
    const auto cfg = default_pi_config(g);
    for (auto _ : state) benchmark::DoNotOptimize(local_encoding(g, 0.05, cfg));
}
BENCHMARK(BM_LocalEncoding)->Arg(500)->Arg(2500)->Unit(benchmark::kMillisecond);

Filtration h0_filtration(std::size_t n) {
    Rng rng(7);
    return flag_filtration(random_edge_scales(rng, n, 0.3, 50), 1, kUnreachable, ComplexKind::VietorisRips);
}

void BM_H0Reduction(benchmark::State& state) {
    const auto f = h0_filtration(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(compute_persistence(f, PersistenceAlgorithm::Reduction, 0));
}
BENCHMARK(BM_H0Reduction)->Arg(50)->Arg(125)->Arg(250);

void BM_H0UnionFind(benchmark::State& state) {
    const auto f = h0_filtration(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(compute_persistence(f, PersistenceAlgorithm::UnionFind, 0));
}
BENCHMARK(BM_H0UnionFind)->Arg(50)->Arg(125)->Arg(250);

void BM_H1Reduction(benchmark::State& state) {
    Rng rng(8);
    const auto f = flag_filtration(random_edge_scales(rng, static_cast<std::size_t>(state.range(0)), 0.5, 20), 2,
                                   kUnreachable, ComplexKind::VietorisRips);
    for (auto _ : state) benchmark::DoNotOptimize(compute_persistence(f, PersistenceAlgorithm::Reduction, 1));
    state.SetLabel(std::to_string(f.size()) + " simplices");
}
BENCHMARK(BM_H1Reduction)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Bottleneck(benchmark::State& state) {
    Rng rng(9);
    const auto n = static_cast<std::size_t>(state.range(0));
    auto make = [&] {
        std::vector<DiagramPoint> pts;
        for (std::size_t i = 0; i < n; ++i) {
            const double b = uniform_real(rng, 0, 10);
            pts.push_back({b, b + uniform_real(rng, 0.01, 5), 0});
        }
        return PersistenceDiagram(pts);
    };
    const auto a = make(), b = make();
    for (auto _ : state) benchmark::DoNotOptimize(diagram_distance(a, b, DistanceMode::bottleneck(), 0));
}
BENCHMARK(BM_Bottleneck)->Arg(25)->Arg(100)->Arg(200);

void BM_Wasserstein(benchmark::State& state) {
    Rng rng(10);
    const auto n = static_cast<std::size_t>(state.range(0));
    auto make = [&] {
        std::vector<DiagramPoint> pts;
        for (std::size_t i = 0; i < n; ++i) {
            const double b = uniform_real(rng, 0, 10);
            pts.push_back({b, b + uniform_real(rng, 0.01, 5), 0});
        }
        return PersistenceDiagram(pts);
    };
    const auto a = make(), b = make();
    for (auto _ : state) benchmark::DoNotOptimize(diagram_distance(a, b, DistanceMode::wasserstein(1), 0));
}
BENCHMARK(BM_Wasserstein)->Arg(25)->Arg(100)->Arg(200);

} // namespace

BENCHMARK_MAIN();

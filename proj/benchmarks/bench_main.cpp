#include <benchmark/benchmark.h>

#include <random>

#include "chaosmark/chaos_analysis.hpp"
#include "chaosmark/modulation.hpp"
#include "chaosmark/phase_space.hpp"

using namespace chaosmark;

namespace {

VectorN random_vector(std::mt19937_64& gen, std::size_t nv, double bound) {
    std::uniform_real_distribution<double> dist(-bound, bound);
    std::vector<double> c(nv);
    for (double& v : c) v = dist(gen);
    return VectorN(std::move(c));
}

PhasePoint random_point(std::mt19937_64& gen, std::size_t nv, double bound, std::size_t prefix, std::size_t period) {
    std::vector<VectorN> p, t;
    for (std::size_t k = 0; k < prefix; ++k) p.push_back(random_vector(gen, nv, bound));
    for (std::size_t k = 0; k < period; ++k) t.push_back(random_vector(gen, nv, bound));
    return PhasePoint(Strategy::with_periodic_tail(std::move(p), std::move(t)), random_vector(gen, nv, bound));
}

SpaceConfig space_for(std::size_t nv, double n) {
    SpaceConfig s;
    s.nv = nv;
    s.bound_n = n;
    return s;
}

void BM_IterateG(benchmark::State& state) {
    std::mt19937_64 gen(1);
    const auto nv = static_cast<std::size_t>(state.range(0));
    const PhasePoint x = random_point(gen, nv, 10.0, 16, 4);
    for (auto _ : state) benchmark::DoNotOptimize(iterate_g(x, 64));
}
BENCHMARK(BM_IterateG)->Arg(8)->Arg(256)->Arg(4096);

void BM_DStrategyClosedForm(benchmark::State& state) {
    std::mt19937_64 gen(2);
    const PhasePoint a = random_point(gen, 8, 10.0, 8, 3);
    const PhasePoint b = random_point(gen, 8, 10.0, 5, 4);
    const auto space = space_for(8, 10.0);
    for (auto _ : state) benchmark::DoNotOptimize(d_strategy(a.strategy(), b.strategy(), space));
}
BENCHMARK(BM_DStrategyClosedForm);

void BM_DStrategyTruncated(benchmark::State& state) {
    std::mt19937_64 gen(3);
    const PhasePoint a = random_point(gen, 8, 10.0, 8, 127);
    const PhasePoint b = random_point(gen, 8, 10.0, 5, 128);
    const auto space = space_for(8, 10.0);
    for (auto _ : state) benchmark::DoNotOptimize(d_strategy(a.strategy(), b.strategy(), space));
}
BENCHMARK(BM_DStrategyTruncated);

void BM_Embed(benchmark::State& state) {
    const auto scheme = static_cast<Scheme>(state.range(0));
    SchemeConfig cfg;
    cfg.nv = 1024;
    cfg.nc = 32;
    cfg.key = 99;
    const CarrierSet carriers = generate_carriers(cfg);
    std::mt19937_64 gen(4);
    const VectorN x = random_vector(gen, cfg.nv, 100.0);
    Message m;
    for (std::size_t i = 0; i < cfg.nc; ++i) m.bits.push_back(static_cast<std::uint8_t>(i & 1));
    for (auto _ : state) benchmark::DoNotOptimize(embed(x, m, carriers, cfg, scheme));
    state.SetLabel(std::string(to_string(scheme)));
}
BENCHMARK(BM_Embed)->DenseRange(0, 2);

void BM_GenerateCarriers(benchmark::State& state) {
    SchemeConfig cfg;
    cfg.nv = 1024;
    cfg.nc = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(generate_carriers(cfg));
}
BENCHMARK(BM_GenerateCarriers)->Arg(16)->Arg(64);

void BM_WitnessSensitivity(benchmark::State& state) {
    std::mt19937_64 gen(5);
    const PhasePoint x = random_point(gen, 8, 10.0, 6, 2);
    const auto space = space_for(8, 10.0);
    for (auto _ : state) benchmark::DoNotOptimize(witness_sensitivity(x, 1e-6, space));
}
BENCHMARK(BM_WitnessSensitivity);

void BM_WitnessTransitivity(benchmark::State& state) {
    std::mt19937_64 gen(6);
    const PhasePoint a = random_point(gen, 8, 10.0, 6, 2);
    const PhasePoint b = random_point(gen, 8, 10.0, 3, 3);
    const auto space = space_for(8, 10.0);
    for (auto _ : state) benchmark::DoNotOptimize(witness_strong_transitivity(a, 1e-4, b, space));
}
BENCHMARK(BM_WitnessTransitivity);

void BM_SensitivityScan(benchmark::State& state) {
    std::mt19937_64 gen(7);
    const PhasePoint x = random_point(gen, 4, 10.0, 6, 2);
    const auto space = space_for(4, 10.0);
    for (auto _ : state) benchmark::DoNotOptimize(empirical_sensitivity_scan(x, 1e-3, 100, 20, 1, space));
}
BENCHMARK(BM_SensitivityScan);

}  // namespace
BENCHMARK_MAIN();

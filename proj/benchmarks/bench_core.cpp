#include <benchmark/benchmark.h>

#include <cmath>

#include "pdestab/certificate.hpp"
#include "pdestab/solver.hpp"
#include "pdestab/transform.hpp"

using namespace pdestab;

namespace {

const double kGain = std::pow(5.0, 0.25) * std::pow(7.0 / 3.0, 0.75);

void BM_KernelMake(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(Kernel::make(KernelFamily::sinh, 1.5, n));
}
BENCHMARK(BM_KernelMake)->Arg(201)->Arg(801);

void BM_CertificateSearch(benchmark::State& state) {
    const auto k = Kernel::linear(201);
    const auto f = ReactionTerm::cubic(11, 1);
    for (auto _ : state) benchmark::DoNotOptimize(build_certificate(k, kGain, 1.0, f));
}
BENCHMARK(BM_CertificateSearch);

void BM_TransformRoundTrip(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto k = Kernel::make(KernelFamily::sin, 2.0, n);
    const VolterraTransform K(k, kGain);
    const auto u = GridFunction::sample(n, [](double x) { return std::sin(3 * x) + x * x; });
    for (auto _ : state) benchmark::DoNotOptimize(K.apply_K_inverse(K.apply_K(u)));
}
BENCHMARK(BM_TransformRoundTrip)->Arg(201)->Arg(801);

SolverConfig short_run(std::size_t n) {
    SolverConfig cfg;
    cfg.n_points = n;
    cfg.dt = 1e-4;
    cfg.t_end = 0.01;
    return cfg;
}

void BM_SimulateFd(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto k = Kernel::linear(n);
    const auto f = ReactionTerm::cubic(11, 1);
    const auto u0 = InitialCondition::corrected(bump_profile(n, 0.5, 0.1, 0.1), k, kGain);
    const auto cfg = short_run(n);
    for (auto _ : state) benchmark::DoNotOptimize(simulate_fd(cfg, k, kGain, 1.0, f, u0));
    state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_SimulateFd)->Arg(101)->Arg(201)->Arg(401);

void BM_SimulateSpectral(benchmark::State& state) {
    const std::size_t n = 201;
    const auto k = Kernel::linear(n);
    const auto f = ReactionTerm::cubic(11, 1);
    const auto u0 = InitialCondition::corrected(bump_profile(n, 0.5, 0.1, 0.1), k, kGain);
    auto cfg = short_run(n);
    cfg.n_modes = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(simulate_spectral(cfg, k, kGain, 1.0, f, u0));
    state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_SimulateSpectral)->Arg(24)->Arg(48);

}  // namespace

BENCHMARK_MAIN();

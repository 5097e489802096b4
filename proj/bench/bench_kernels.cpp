// Serial reference kernels against their OpenMP counterparts.
#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "qfermi/fock.hpp"
#include "qfermi/kernels.hpp"
#include "qfermi/thermo.hpp"

using namespace qfermi;

namespace {

kernels::Exec exec_of(const benchmark::State& state) {
    return state.range(0) == 0 ? kernels::Exec::serial : kernels::Exec::parallel;
}

std::vector<double> grid(std::size_t n) {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = -5.0 + 10.0 * static_cast<double>(i) / static_cast<double>(n) + 1e-7;
    return xs;
}

void distribution_sweep(benchmark::State& state) {
    const auto xs = grid(static_cast<std::size_t>(state.range(1)));
    const Deformation q(0.5);
    for (auto _ : state) {
        auto out = kernels::map(xs, [&](double eta) { return thermo::vpjc_distribution(eta, q); }, exec_of(state));
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

void gibbs(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(1));
    std::vector<double> levels(n), observable(n);
    for (std::size_t k = 0; k < n; ++k) {
        levels[k] = static_cast<double>(k);
        observable[k] = std::sqrt(static_cast<double>(k));
    }
    for (auto _ : state) {
        auto avg = kernels::gibbs_average(levels, observable, 1e-3, exec_of(state));
        benchmark::DoNotOptimize(avg.mean);
    }
}

void fn_relations(benchmark::State& state) {
    const auto ops = fock::build_fn_multimode(static_cast<int>(state.range(1)), Deformation(0.7));
    for (auto _ : state) {
        auto report = fock::check_algebra(ops, exec_of(state));
        benchmark::DoNotOptimize(report.relation_residuals.data());
    }
}

}  // namespace

BENCHMARK(distribution_sweep)->ArgNames({"parallel", "points"})->ArgsProduct({{0, 1}, {1 << 12, 1 << 16}});
BENCHMARK(gibbs)->ArgNames({"parallel", "levels"})->ArgsProduct({{0, 1}, {1 << 12, 1 << 18}});
BENCHMARK(fn_relations)->ArgNames({"parallel", "modes"})->ArgsProduct({{0, 1}, {6, 8}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

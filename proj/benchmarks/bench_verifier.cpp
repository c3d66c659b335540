#include <benchmark/benchmark.h>

#include "qsg/catalog.hpp"
#include "qsg/scenario.hpp"
#include "qsg/spectra.hpp"
#include "qsg/verifier.hpp"

using namespace qsg;

namespace {

void BM_identity_right(benchmark::State& state) {
    const QuasiSemigroup q(
        QuasiSemigroup::Constant{random_normal_matrix(static_cast<std::size_t>(state.range(0)), 5)});
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_identity_right(q, Complex{1.0, 0.5}, 0.5, 1.0));
    }
}
BENCHMARK(BM_identity_right)->Arg(2)->Arg(4)->Arg(8);

void BM_spectrum_regular(benchmark::State& state) {
    const QuasiSemigroup q(
        QuasiSemigroup::Constant{random_general_matrix(static_cast<std::size_t>(state.range(0)), 9)});
    const FiniteOperator gen = q.generator(0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectrum(gen, SpectrumKind::Regular));
    }
}
BENCHMARK(BM_spectrum_regular)->Arg(4)->Arg(8)->Arg(16);

void BM_scenario_small(benchmark::State& state) {
    const ScenarioConfig config = parse_scenario_config(R"({
      "scenario_id": "bench",
      "backend": "constant-diagonal",
      "grid": {"t": [0, 1], "s": [0.5, 1], "r": [0.5]},
      "claims": ["thm2.1.1", "thm2.4.1", "thm2.5"]
    })");
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_scenario(config));
    }
}
BENCHMARK(BM_scenario_small);

}  // namespace

#include <benchmark/benchmark.h>

#include "qsg/catalog.hpp"
#include "qsg/numkernel.hpp"

using namespace qsg;

namespace {

void BM_expm(benchmark::State& state) {
    const CMatrix a = random_general_matrix(static_cast<std::size_t>(state.range(0)),
                                            static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(expm(a));
    }
}
BENCHMARK(BM_expm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_eig(benchmark::State& state) {
    const CMatrix a = random_general_matrix(static_cast<std::size_t>(state.range(0)),
                                            static_cast<std::uint64_t>(state.range(0)) + 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eig(a));
    }
}
BENCHMARK(BM_eig)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_svd(benchmark::State& state) {
    const CMatrix a = random_general_matrix(static_cast<std::size_t>(state.range(0)),
                                            static_cast<std::uint64_t>(state.range(0)) + 13);
    for (auto _ : state) {
        benchmark::DoNotOptimize(svd(a));
    }
}
BENCHMARK(BM_svd)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_quad_operator(benchmark::State& state) {
    const CMatrix a = random_general_matrix(4, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(quad_operator(
            [&](double h) { return expm(Complex{h, 0.0} * a); }, 0.0, 1.0, 1e-10));
    }
}
BENCHMARK(BM_quad_operator);

}  // namespace

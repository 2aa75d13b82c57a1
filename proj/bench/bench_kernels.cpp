// Serial reference against the OpenMP path for the Monte Carlo kernels.
// Both paths must return identical bits; the first run of each pair checks it.
#include <benchmark/benchmark.h>

#include <cstdlib>
#include <iostream>

#include "alloy/averaging.hpp"
#include "alloy/moments.hpp"
#include "alloy/rng.hpp"
#include "alloy/spectra.hpp"

using namespace alloy;

namespace {

ModelConfig chain_model() {
    ModelConfig m;
    m.d = 1;
    m.lambda = 50;
    m.u = SingleSitePotential::chain({1, -0.5});
    m.rho = Density::uniform(0, 1);
    return m;
}

ModelConfig wegner_model() {
    ModelConfig m;
    m.d = 1;
    m.lambda = 1;
    m.u = SingleSitePotential::exponential(1, 1.0, 1.0, 30);
    m.rho = Density::uniform(0, 1);
    return m;
}

Box chain(int n) {
    std::vector<Site> s;
    for (int i = 0; i < n; ++i) s.push_back({i});
    return Box(1, s);
}

void require_same(double a, double b, const char* what) {
    if (a != b) {
        std::cerr << what << ": serial and parallel results differ\n";
        std::abort();
    }
}

void BM_moment(benchmark::State& state, Exec exec) {
    ModelConfig m = chain_model();
    Box g = chain(static_cast<int>(state.range(0)));
    static bool checked = false;
    if (!checked) {
        auto a = estimate_moment(m, g, cplx(0, 0.5), 0.25, {0}, {10}, 200, 3, Exec::serial);
        auto b = estimate_moment(m, g, cplx(0, 0.5), 0.25, {0}, {10}, 200, 3, Exec::parallel);
        require_same(a.mean, b.mean, "moment");
        require_same(a.std_error, b.std_error, "moment");
        checked = true;
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_moment(m, g, cplx(0, 0.5), 0.25, {0}, {10}, 500, 7, exec).mean);
    state.SetItemsProcessed(state.iterations() * 500);
}

void BM_wegner(benchmark::State& state, Exec exec) {
    ModelConfig m = wegner_model();
    static bool checked = false;
    if (!checked) {
        auto a = wegner_mc(m, 6, 0.5, 1.5, 200, 3, false, Exec::serial);
        auto b = wegner_mc(m, 6, 0.5, 1.5, 200, 3, false, Exec::parallel);
        require_same(a.mean, b.mean, "wegner");
        checked = true;
    }
    for (auto _ : state) benchmark::DoNotOptimize(wegner_mc(m, 6, 0.5, 1.5, 500, 7, false, exec).mean);
    state.SetItemsProcessed(state.iterations() * 500);
}

void BM_multi_determinant(benchmark::State& state, Exec exec) {
    Stream st(5);
    auto rnd = [&] {
        Eigen::MatrixXcd m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = cplx(st.uniform(-1, 1), st.uniform(-1, 1));
        return m;
    };
    Eigen::MatrixXcd a = rnd();
    std::vector<Eigen::MatrixXcd> v{rnd(), rnd()};
    Density rho = Density::uniform(0, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(multi_determinant_check(a, v, {1.0, 0.5}, rho, 0.5, 20000, 9, exec).integral);
    state.SetItemsProcessed(state.iterations() * 20000);
}

}  // namespace

BENCHMARK_CAPTURE(BM_moment, serial, Exec::serial)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_moment, parallel, Exec::parallel)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_wegner, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_wegner, parallel, Exec::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_multi_determinant, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_multi_determinant, parallel, Exec::parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

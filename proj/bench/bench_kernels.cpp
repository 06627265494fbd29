#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dosq/kernels.hpp"
#include "dosq/stencil.hpp"

using namespace dosq;

namespace {

kernels::PsiRow sample_row() {
    kernels::PsiRow row;
    row.qa = 0.05L;
    row.qb = 0.3L;
    row.inv_sqrt_phi3 = 0.9L;
    row.b3 = 0.1L;
    row.argxi = 0.7;
    row.amp = 0.95;
    return row;
}

std::vector<double> x_axis(int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = -12.0 + 24.0 * i / (n - 1);
    return x;
}

FieldGrid random_grid(int nx, int nt) {
    std::mt19937 rng(42);
    std::normal_distribution<double> d;
    FieldGrid g(UniformAxis{-10.0, 20.0 / (nx - 1), nx}, UniformAxis{0.0, 0.01, nt});
    for (auto& v : g.values()) v = cplx(d(rng), d(rng));
    return g;
}

template <bool Parallel>
void BM_psi_row_multi(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0)), mmax = 32;
    auto x = x_axis(n);
    auto row = sample_row();
    std::vector<cplx> out(std::size_t(mmax + 1) * n);
    for (auto _ : state) {
        if constexpr (Parallel)
            kernels::parallel::psi_row_multi(row, mmax, x.data(), n, out.data());
        else
            kernels::serial::psi_row_multi(row, mmax, x.data(), n, out.data());
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}

template <bool Parallel>
void BM_residual_sums(benchmark::State& state) {
    const int nx = static_cast<int>(state.range(0)), nt = 9;
    auto g = random_grid(nx, nt);
    kernels::RowCoefficients c;
    c.d2 = 1.0;
    c.a = cplx(0, 2);
    c.c2 = -1.0;
    std::vector<int> rows{4};
    std::vector<kernels::RowCoefficients> coeff{c};
    auto dx = central_stencil(1, 8, g.x().step), dxx = central_stencil(2, 8, g.x().step);
    std::vector<Stencil> dt{central_stencil(1, 8, 0.01)};
    for (auto _ : state) {
        auto s = Parallel ? kernels::parallel::residual_sums(g, rows, coeff, dx, dxx, dt, 4, nx - 4)
                          : kernels::serial::residual_sums(g, rows, coeff, dx, dxx, dt, 4, nx - 4);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations() * nx);
}

template <bool Parallel>
void BM_sum_abs2(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto g = random_grid(n, 1);
    for (auto _ : state) {
        double s = Parallel ? kernels::parallel::sum_abs2(g.row(0), n) : kernels::serial::sum_abs2(g.row(0), n);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations() * n);
}

}  // namespace

BENCHMARK(BM_psi_row_multi<false>)->Name("psi_row_multi/serial")->Arg(4096)->Arg(65536);
BENCHMARK(BM_psi_row_multi<true>)->Name("psi_row_multi/parallel")->Arg(4096)->Arg(65536)->UseRealTime();
BENCHMARK(BM_residual_sums<false>)->Name("residual_sums/serial")->Arg(65536)->Arg(1 << 20);
BENCHMARK(BM_residual_sums<true>)->Name("residual_sums/parallel")->Arg(65536)->Arg(1 << 20)->UseRealTime();
BENCHMARK(BM_sum_abs2<false>)->Name("sum_abs2/serial")->Arg(1 << 20);
BENCHMARK(BM_sum_abs2<true>)->Name("sum_abs2/parallel")->Arg(1 << 20)->UseRealTime();

BENCHMARK_MAIN();

#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dosq/kernels.hpp"
#include "dosq/states.hpp"

using namespace dosq;

namespace {

FieldGrid random_field(int nx, int nt, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> n;
    FieldGrid g(UniformAxis{-1.0, 0.01, nx}, UniformAxis{0.0, 0.01, nt});
    for (auto& v : g.values()) v = cplx(n(rng), n(rng));
    return g;
}

// Explicit-sum Hermite polynomial in long double, normalized into a Hermite function.
double hermite_function_oracle(int m, double u) {
    long double h = 0, fact_m = std::tgamma(m + 1.0L);
    for (int k = 0; 2 * k <= m; ++k)
        h += ((k % 2) ? -1.0L : 1.0L) * std::pow(2.0L * u, m - 2 * k) /
             (std::tgamma(k + 1.0L) * std::tgamma(m - 2 * k + 1.0L));
    h *= fact_m;
    long double norm = std::sqrt(std::pow(2.0L, m) * fact_m * std::sqrt(std::numbers::pi_v<long double>));
    return static_cast<double>(h * std::exp(-0.5L * u * u) / norm);
}

}  // namespace

// The serial reference sums left to right and the parallel one sums blocks, so
// reductions agree to round-off while pointwise kernels agree exactly.
TEST_CASE("serial and parallel reductions agree to round-off") {
    auto g = random_field(20011, 1, 7);
    const auto* v = g.row(0);
    CHECK(kernels::serial::sum_abs2(v, g.nx()) == doctest::Approx(kernels::parallel::sum_abs2(v, g.nx())).epsilon(1e-13));
    cplx a = kernels::serial::inner(v, v + 1, g.nx() - 1), b = kernels::parallel::inner(v, v + 1, g.nx() - 1);
    CHECK(std::abs(a - b) < 1e-13 * std::abs(b));
}

TEST_CASE("parallel results do not depend on the thread count") {
    auto g = random_field(50000, 1, 11);
    omp_set_num_threads(1);
    double one = kernels::parallel::sum_abs2(g.row(0), g.nx());
    omp_set_num_threads(4);
    double four = kernels::parallel::sum_abs2(g.row(0), g.nx());
    omp_set_num_threads(omp_get_num_procs());
    CHECK(one == four);
}

TEST_CASE("row operator application: serial equals parallel") {
    auto g = random_field(400, 7, 3);
    kernels::RowCoefficients c;
    c.d2 = 1.0;
    c.a = cplx(0, 2);
    c.b1 = 0.3;
    c.b0 = cplx(0.1, -0.2);
    c.c2 = -0.5;
    c.c1 = 0.25;
    c.c0 = cplx(0.0, 1.0);
    std::vector<int> rows{2, 3, 4};
    std::vector<kernels::RowCoefficients> coeff(3, c);
    auto dx = central_stencil(1, 4, 0.01), dxx = central_stencil(2, 4, 0.01);
    std::vector<Stencil> dt(3, central_stencil(1, 4, 0.01));
    FieldGrid a(g.x(), g.tau()), b(g.x(), g.tau());
    kernels::serial::apply_rows(g, rows, coeff, dx, dxx, dt, 2, 398, a);
    kernels::parallel::apply_rows(g, rows, coeff, dx, dxx, dt, 2, 398, b);
    CHECK(a.values() == b.values());
    auto rs = kernels::serial::residual_sums(g, rows, coeff, dx, dxx, dt, 2, 398);
    auto rp = kernels::parallel::residual_sums(g, rows, coeff, dx, dxx, dt, 2, 398);
    CHECK(rs.residual_sq == doctest::Approx(rp.residual_sq).epsilon(1e-13));
    CHECK(rs.field_sq == doctest::Approx(rp.field_sq).epsilon(1e-13));
}

TEST_CASE("Hermite functions match the explicit polynomial sum") {
    for (int m = 0; m <= 20; ++m)
        for (double u : {-4.5, -1.3, 0.0, 0.7, 2.2, 5.0}) {
            INFO("m = " << m << ", u = " << u);
            CHECK(std::fabs(hermite_function(m, u) - hermite_function_oracle(m, u)) < 1e-13);
        }
}

TEST_CASE("Hermite functions stay finite and normalized at large index") {
    for (int m : {100, 500, 1000}) {
        const double L = std::sqrt(2.0 * m + 1) + 12, h = 0.01;
        double sum = 0;
        for (double u = -L; u <= L; u += h) {
            double v = hermite_function(m, u);
            REQUIRE(std::isfinite(v));
            sum += v * v * h;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-8));
    }
    CHECK(std::isfinite(hermite_function(1000, 60.0)));
}

TEST_CASE("multi-state rows equal single-state rows") {
    kernels::PsiRow row;
    row.qa = 0.3L;
    row.qb = -0.7L;
    row.qc = 1.1L;
    row.inv_sqrt_phi3 = 0.8L;
    row.b3 = 0.2L;
    row.argxi = 0.4;
    row.amp = 0.9;
    std::vector<double> x{-3.0, -0.5, 0.0, 1.25, 4.0};
    const int mmax = 6, n = static_cast<int>(x.size());
    std::vector<cplx> multi((mmax + 1) * n);
    kernels::parallel::psi_row_multi(row, mmax, x.data(), n, multi.data());
    for (int m = 0; m <= mmax; ++m) {
        std::vector<cplx> w(m + 1, 0.0), single(n);
        w[m] = 1.0;
        kernels::serial::psi_row(row, w.data(), m + 1, x.data(), n, single.data());
        for (int i = 0; i < n; ++i) CHECK(std::abs(single[i] - multi[m * n + i]) < 1e-15);
    }
}

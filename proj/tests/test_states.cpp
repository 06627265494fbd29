#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dosq/errors.hpp"
#include "dosq/states.hpp"

using namespace dosq;

namespace {

AuxiliaryBundle bundle_for(const PotentialSpec& spec, double tau_max, InitialData init) {
    return build_bundle(solve_basis(spec, init, tau_max), spec);
}

// Oscillator eigenfunctions by the textbook recurrence, independent of the library.
double oscillator_eigenfunction(int m, double x) {
    double prev = 0, cur = std::pow(std::numbers::pi, -0.25) * std::exp(-x * x / 2);
    for (int k = 0; k < m; ++k) {
        double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(double(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace

TEST_CASE("Hermite polynomials") {
    CHECK(hermite(0, 0.7) == 1.0);
    CHECK(hermite(1, 0.7) == doctest::Approx(1.4));
    for (double u : {-1.5, 0.2, 2.0}) CHECK(hermite(3, u) == doctest::Approx(8 * u * u * u - 12 * u));
    CHECK(hermite(4, 1.0) == doctest::Approx(16 - 48 + 12));
    CHECK_THROWS_AS(hermite(600, 0.1), CapacityError);
    CHECK_NOTHROW(hermite(600, 0.1, 700));
    CHECK_THROWS_AS(NumberState(number_state_capacity + 1, bundle_for(PotentialSpec::free_particle(), 1, {})),
                    CapacityError);
    CHECK_THROWS_AS(NumberState(-1, bundle_for(PotentialSpec::free_particle(), 1, {})), ConfigError);
}

TEST_CASE("oscillator number states are stationary eigenfunctions") {
    auto b = bundle_for(PotentialSpec::harmonic(1.0), 10.0, InitialData{});
    for (int m : {0, 1, 2, 5}) {
        NumberState s(m, b);
        for (double t : {0.0, 1.7, 9.0})
            for (double x : {-2.5, -0.3, 0.0, 1.1, 3.0}) {
                cplx expected = oscillator_eigenfunction(m, x) * std::exp(cplx(0, -(m + 0.5) * t));
                CHECK(std::abs(psi_m(s, x, t) - expected) < 1e-13);
            }
    }
}

TEST_CASE("row constants reduce to the Gaussian exponent and drift") {
    auto spec = PotentialSpec::driven(1.0, 0.5);
    spec.c_zero = cplx(0.3, 0.1);
    auto b = bundle_for(spec, 5.0, InitialData{1, 0.3, 0, 1});
    for (double t : {0.0, 1.2, 4.4}) {
        auto a = b.at(t);
        auto row = psi_row_parameters(b, t);
        CHECK(double(row.qa) == doctest::Approx(a.phi3_dot / (4 * a.phi3)).epsilon(1e-12));
        CHECK(double(row.qb) == doctest::Approx(a.E3 / a.phi3).epsilon(1e-12).scale(1e-14));
        CHECK(double(row.b3) == doctest::Approx(a.b3).epsilon(1e-14));
    }
}

TEST_CASE("first excited state has its node at the drift centre") {
    auto b = bundle_for(PotentialSpec::linear(1.0), 4.0, InitialData{});
    for (double t : {0.5, 3.0}) {
        auto a = b.at(t);
        double centre = std::sqrt(a.phi3) * a.b3;
        CHECK(std::abs(psi_m(NumberState(1, b), centre, t)) < 1e-14);
        CHECK(std::abs(psi_m(NumberState(1, b), centre + 0.3, t)) > 1e-3);
    }
}

TEST_CASE("separable coordinates") {
    auto b = bundle_for(PotentialSpec::linear(1.0), 4.0, InitialData{});
    auto a = b.at(2.0);
    auto c = separable_coords(b, 1.5, 2.0);
    CHECK(c.zeta == doctest::Approx(1.5 / std::sqrt(a.phi3) - a.B3));
    CHECK(c.eta == 2.0);
}

TEST_CASE("number states are orthonormal") {
    for (auto spec : {PotentialSpec::free_particle(), PotentialSpec::repulsive(1.0), PotentialSpec::driven(1.0, 0.5)}) {
        auto b = bundle_for(spec, 5.0, default_initial_data(spec));
        for (double t : {0.0, 2.0, 5.0}) {
            auto q = number_state_quality(b, 8, t);
            CHECK(q.max_norm_error < 1e-10);
            CHECK(q.max_overlap < 1e-10);
        }
    }
}

TEST_CASE("number states solve the Schroedinger equation") {
    auto free = bundle_for(PotentialSpec::free_particle(), 4.0, InitialData{});
    auto r = number_state_residuals(free, 0, 2.0, default_residual_plan(free, 2.0));
    CHECK(r[0] < 1e-6);
    auto osc = bundle_for(PotentialSpec::harmonic(1.0), 4.0, InitialData{});
    auto ro = number_state_residuals(osc, 2, 1.0, default_residual_plan(osc, 1.0));
    for (double v : ro) CHECK(v < 1e-6);
}

TEST_CASE("grid superposition and moments") {
    auto b = bundle_for(PotentialSpec::harmonic(1.0), 2.0, InitialData{});
    std::vector<double> x;
    for (int i = 0; i <= 2000; ++i) x.push_back(-10 + 0.01 * i);
    auto g = psi_m_grid(NumberState(2, b), x, 1.0);
    CHECK(g.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(g.mean_x()) < 1e-12);
    CHECK(g.variance_x() == doctest::Approx(2.5).epsilon(1e-10));
    std::vector<cplx> c{1 / std::sqrt(2.0), cplx(0, 1 / std::sqrt(2.0))};
    auto s = superpose_grid(b, c, x, 0.4);
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
    WavefunctionGrid bad{{0.0, 0.0}, 0.0, {1.0, 1.0}};
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

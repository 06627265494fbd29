#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "dosq/classical.hpp"
#include "dosq/errors.hpp"

using namespace dosq;

namespace {

// Fixed-step RK4 on a'' = -2 g a over [t0, t1] with g a single polynomial piece,
// so the integrator never sees a jump.
std::array<double, 4> rk4_piece(const std::vector<double>& poly, std::array<double, 4> y, double t0, double t1,
                                int steps) {
    auto g = [&](double t) {
        double v = 0;
        for (std::size_t i = poly.size(); i-- > 0;) v = v * t + poly[i];
        return v;
    };
    auto f = [&](double t, const std::array<double, 4>& s) {
        double k = -2 * g(t);
        return std::array<double, 4>{s[1], k * s[0], s[3], k * s[2]};
    };
    const double h = (t1 - t0) / steps;
    for (int i = 0; i < steps; ++i) {
        double t = t0 + i * h;
        auto k1 = f(t, y);
        std::array<double, 4> y2, y3, y4;
        for (int j = 0; j < 4; ++j) y2[j] = y[j] + 0.5 * h * k1[j];
        auto k2 = f(t + 0.5 * h, y2);
        for (int j = 0; j < 4; ++j) y3[j] = y[j] + 0.5 * h * k2[j];
        auto k3 = f(t + 0.5 * h, y3);
        for (int j = 0; j < 4; ++j) y4[j] = y[j] + h * k3[j];
        auto k4 = f(t + h, y4);
        for (int j = 0; j < 4; ++j) y[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    }
    return y;
}

}  // namespace

TEST_CASE("free particle basis is chi1 = 1, chi2 = tau") {
    auto b = solve_basis(PotentialSpec::free_particle(), InitialData{}, 10.0);
    auto s = b.sample(3.5);
    CHECK(double(s.chi1) == 1.0);
    CHECK(double(s.chi2) == 3.5);
    CHECK(std::abs(b.xi(0) - cplx(1 / std::sqrt(2.0), 0)) < 2e-16);
    CHECK(std::abs(b.xi_dot(0) - cplx(0, 1 / std::sqrt(2.0))) < 2e-16);
    CHECK(wronskian_drift(b, 100) == 0.0);
}

TEST_CASE("harmonic and repulsive closed forms match the integrator") {
    auto spec = PotentialSpec::harmonic(1.0);
    auto closed = solve_basis(spec, InitialData{}, 10.0);
    auto integ = solve_basis(spec, InitialData{}, 10.0, 1e-10, BasisMode::integrate);
    CHECK_FALSE(closed.integrated());
    CHECK(integ.integrated());
    CHECK(double(closed.sample(10).chi1) == doctest::Approx(std::cos(10.0)).epsilon(1e-14));
    CHECK(std::fabs(double(integ.sample(10).chi1 - std::cos(10.0L))) < 1e-9);
    CHECK(std::fabs(double(integ.sample(10).chi2 - std::sin(10.0L))) < 1e-9);
    CHECK(std::abs(closed.xi(std::numbers::pi / 2) - cplx(0, 1 / std::sqrt(2.0))) < 1e-15);

    auto rep = PotentialSpec::repulsive(1.0);
    auto ri = solve_basis(rep, InitialData{}, 3.0, 1e-10, BasisMode::integrate);
    CHECK(std::fabs(double(ri.sample(3).chi1 - std::cosh(3.0L))) < 1e-8);
    CHECK(std::fabs(double(ri.sample(3).chi2 - std::sinh(3.0L))) < 1e-8);
}

TEST_CASE("Wronskian and xi invariants hold for every preset") {
    for (auto spec : {PotentialSpec::free_particle(), PotentialSpec::harmonic(2.0), PotentialSpec::repulsive(1.0),
                      PotentialSpec::linear(1.0), PotentialSpec::driven(1.0, 0.5)}) {
        auto b = solve_basis(spec, default_initial_data(spec), 10.0, 1e-10, BasisMode::integrate);
        CHECK(wronskian_drift(b, 1000) < 1e-9);
        for (double t : {0.0, 2.5, 7.75, 10.0}) {
            cplx xi = b.xi(t), xd = b.xi_dot(t);
            cplx w = xi * std::conj(xd) - xd * std::conj(xi);
            CHECK(std::abs(w - cplx(0, -1)) < 1e-9);
            CHECK(double(b.phi3_l(t)) > 0);
        }
    }
}

TEST_CASE("oscillator default data makes phi3 constant") {
    auto spec = PotentialSpec::harmonic(2.0);
    auto b = solve_basis(spec, default_initial_data(spec), 5.0);
    for (double t : {0.0, 1.0, 4.3}) CHECK(double(b.phi3_l(t)) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("piecewise g2 is integrated across breakpoints") {
    const std::vector<double> bp{0.0, 1.0, 2.5, 4.0};
    const std::vector<std::vector<double>> pieces{{0.5}, {0.2, 0.3}, {-0.1, 0.0, 0.05}};
    auto g2 = CoefficientFunction::piecewise(bp, pieces);
    auto spec = PotentialSpec::custom(g2, CoefficientFunction::constant(0), CoefficientFunction::constant(0));
    auto b = solve_basis(spec, InitialData{}, 4.0);
    CHECK(b.integrated());
    std::array<double, 4> ref{1, 0, 0, 1};
    for (std::size_t i = 0; i < pieces.size(); ++i) ref = rk4_piece(pieces[i], ref, bp[i], bp[i + 1], 20000);
    auto s = b.sample(4.0);
    CHECK(double(s.chi1) == doctest::Approx(ref[0]).epsilon(1e-10));
    CHECK(double(s.chi1_dot) == doctest::Approx(ref[1]).epsilon(1e-10));
    CHECK(double(s.chi2) == doctest::Approx(ref[2]).epsilon(1e-10));
    CHECK(double(s.chi2_dot) == doctest::Approx(ref[3]).epsilon(1e-10));
    CHECK(wronskian_drift(b, 500) < 1e-9);
}

TEST_CASE("basis construction errors") {
    CHECK_THROWS_AS(solve_basis(PotentialSpec::free_particle(), InitialData{1, 0, 0, 2}, 1.0), ValidationError);
    auto b = solve_basis(PotentialSpec::harmonic(1.0), InitialData{}, 2.0);
    CHECK_THROWS_AS(b.sample(2.5), RangeError);
    CHECK_THROWS_AS(b.sample(-0.1), RangeError);
}

TEST_CASE("dense output is continuous across integrator nodes") {
    auto g2 = CoefficientFunction::piecewise({0.0, 2.0, 10.0}, {{0.5}, {0.5, -0.1}});
    auto spec = PotentialSpec::custom(g2, CoefficientFunction::constant(0.2), CoefficientFunction::constant(0));
    auto b = solve_basis(spec, InitialData{}, 10.0);
    REQUIRE(b.nodes().size() > 3);
    for (std::size_t k = 1; k + 1 < b.nodes().size(); ++k) {
        double t = b.nodes()[k];
        double below = std::nextafter(t, 0.0);
        CHECK(std::abs(b.xi(below) - b.xi(t)) < 1e-14 * std::abs(b.xi(t)));
    }
}

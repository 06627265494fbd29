#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dosq/errors.hpp"
#include "dosq/field_grid.hpp"
#include "dosq/potential.hpp"

using namespace dosq;

TEST_CASE("preset potentials evaluate exactly") {
    CHECK(evaluate_potential(PotentialSpec::free_particle(), 3.0, 5.0) == 0.0);
    CHECK(evaluate_potential(PotentialSpec::harmonic(1.0), 2.0, 0.0) == 2.0);
    CHECK(evaluate_potential(PotentialSpec::repulsive(2.0), 1.0, 0.0) == -2.0);
    CHECK(evaluate_potential(PotentialSpec::linear(0.5), 4.0, 1.0) == 2.0);
    CHECK(evaluate_potential(PotentialSpec::driven(1.0, 1.0), 2.0, 0.0) == 4.0);
}

TEST_CASE("piecewise coefficients take the right-hand piece at a breakpoint") {
    auto g2 = CoefficientFunction::piecewise({0.0, 1.0, 2.0}, {{0.0, 1.0}, {1.0}});
    auto spec = PotentialSpec::custom(g2, CoefficientFunction::constant(0), CoefficientFunction::constant(0));
    CHECK(evaluate_potential(spec, 1.0, 0.5) == doctest::Approx(0.5));
    CHECK(g2(1.0) == 1.0);
    CHECK(g2(std::nextafter(1.0, 0.0)) == doctest::Approx(1.0));
    CHECK(g2(2.0) == 1.0);
    CHECK_THROWS_AS(g2(2.5), RangeError);
    CHECK_THROWS_AS(g2(-0.1), RangeError);
    CHECK_THROWS_AS(CoefficientFunction::piecewise({1.0, 0.0}, {{1.0}}), ConfigError);
}

TEST_CASE("preset names round-trip") {
    for (auto k : {PresetKind::free, PresetKind::harmonic, PresetKind::repulsive, PresetKind::linear,
                   PresetKind::driven, PresetKind::custom})
        CHECK(preset_from_name(preset_name(k)) == k);
    CHECK_THROWS_AS(preset_from_name("cubic"), ConfigError);
}

namespace {

// Free Gaussian packet of unit width, an exact solution of i psi_t = -psi_xx / 2.
FieldGrid free_packet(double h, double k) {
    UniformAxis x{-8.0, h, static_cast<int>(16.0 / h) + 1};
    UniformAxis t{0.2, k, 9};
    FieldGrid g(x, t);
    for (int it = 0; it < t.count; ++it)
        for (int ix = 0; ix < x.count; ++ix) {
            cplx s(1.0, t[it]);
            g.at(it, ix) = std::exp(-x[ix] * x[ix] / (2.0 * s)) / std::sqrt(s);
        }
    return g;
}

}  // namespace

TEST_CASE("Schroedinger residual of exact solutions") {
    SUBCASE("constant field, free particle") {
        FieldGrid g(UniformAxis{0, 0.1, 20}, UniformAxis{0, 0.1, 7});
        for (auto& v : g.values()) v = 1.0;
        CHECK(schroedinger_residual(g, PotentialSpec::free_particle()) == 0.0);
    }
    SUBCASE("free packet converges at second order") {
        double r1 = schroedinger_residual(free_packet(0.04, 0.04), PotentialSpec::free_particle());
        double r2 = schroedinger_residual(free_packet(0.02, 0.02), PotentialSpec::free_particle());
        CHECK(r2 < 1e-3);
        CHECK(std::log2(r1 / r2) == doctest::Approx(2.0).epsilon(0.05));
        ResidualOptions high;
        high.x_order = high.tau_order = 8;
        CHECK(schroedinger_residual(free_packet(0.02, 0.02), PotentialSpec::free_particle(), high) < 1e-8);
    }
    SUBCASE("oscillator ground state") {
        UniformAxis x{-8.0, 0.01, 1601};
        UniformAxis t{1.0, 0.01, 9};
        FieldGrid g(x, t);
        for (int it = 0; it < t.count; ++it)
            for (int ix = 0; ix < x.count; ++ix)
                g.at(it, ix) = std::exp(cplx(-0.5 * x[ix] * x[ix], -0.5 * t[it])) / std::pow(std::numbers::pi, 0.25);
        ResidualOptions high;
        high.x_order = high.tau_order = 8;
        CHECK(schroedinger_residual(g, PotentialSpec::harmonic(1.0), high) < 1e-9);
        // The wrong potential leaves an O(1) residual.
        CHECK(schroedinger_residual(g, PotentialSpec::free_particle(), high) > 0.1);
    }
    SUBCASE("too few points") {
        FieldGrid g(UniformAxis{0, 0.1, 4}, UniformAxis{0, 0.1, 7});
        CHECK_THROWS_AS(schroedinger_residual(g, PotentialSpec::free_particle()), ConfigError);
    }
}

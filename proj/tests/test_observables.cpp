#include <doctest.h>

#include <cmath>

#include "dosq/errors.hpp"
#include "dosq/observables.hpp"

using namespace dosq;

namespace {

AuxiliaryBundle bundle_for(const PotentialSpec& spec, double tau_max) {
    return build_bundle(solve_basis(spec, default_initial_data(spec), tau_max), spec);
}

}  // namespace

TEST_CASE("means follow the classical trajectory") {
    const double x0 = 0.4, p0 = -0.3, F = 0.8;
    auto lin = bundle_for(PotentialSpec::linear(F), 6.0);
    auto drv = bundle_for(PotentialSpec::driven(1.0, F), 6.0);
    for (double t : {0.0, 1.3, 6.0}) {
        auto m = mean_from_initial(lin, x0, p0, t);
        CHECK(m.x == doctest::Approx(x0 + p0 * t - F * t * t / 2).epsilon(1e-12));
        CHECK(m.p == doctest::Approx(p0 - F * t).epsilon(1e-12));
        auto d = mean_from_initial(drv, x0, p0, t);
        CHECK(d.x == doctest::Approx((x0 + F) * std::cos(t) + p0 * std::sin(t) - F).epsilon(1e-12));
        CHECK(d.p == doctest::Approx(-(x0 + F) * std::sin(t) + p0 * std::cos(t)).epsilon(1e-12));
    }
}

TEST_CASE("alpha round trips through both orderings") {
    auto b = bundle_for(PotentialSpec::driven(1.0, 0.5), 5.0);
    auto z = SqueezeParam::from_polar(0.4, 0.7);
    for (auto ord : {Ordering::alpha_z, Ordering::z_alpha}) {
        cplx a = alpha_for(ord, 0.9, -0.2, z, b);
        for (double t : {0.0, 2.2, 5.0}) {
            auto m = mean_from_initial(b, 0.9, -0.2, t);
            CHECK(mean_x(b, a, z, ord, t) == doctest::Approx(m.x).epsilon(1e-12));
            CHECK(mean_p(b, a, z, ord, t) == doctest::Approx(m.p).epsilon(1e-12));
        }
    }
    CHECK(std::abs(alpha_from_initial_z_alpha(0.9, -0.2, SqueezeParam{}, b) - alpha_from_initial(0.9, -0.2, b)) <
          1e-15);
}

TEST_CASE("ladder coefficients of the unsqueezed oscillator") {
    auto b = bundle_for(PotentialSpec::harmonic(1.0), 3.0);
    auto l = ladder_coefficients(b, 0.0, SqueezeParam{}, 0.0);
    CHECK(std::abs(l.X_minus - 1 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(l.X_plus - 1 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(l.X_0) < 1e-15);
}

TEST_CASE("uncertainties") {
    auto osc = bundle_for(PotentialSpec::harmonic(1.0), 10.0);
    for (double t : {0.0, 3.0, 10.0}) {
        auto u = uncertainties(osc, SqueezeParam{}, t);
        CHECK(u.delta_x == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
        CHECK(u.product == doctest::Approx(0.5).epsilon(1e-14));
    }
    auto free = bundle_for(PotentialSpec::free_particle(), 4.0);
    for (double t : {0.5, 4.0}) {
        auto u = uncertainties(free, SqueezeParam{}, t);
        CHECK(u.delta_x == doctest::Approx(std::sqrt((1 + t * t) / 2)).epsilon(1e-14));
        CHECK(u.delta_p == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
    }
    // S(r) stretches x by e^r under this sign convention; the oscillator rotates it into p.
    const double r = 0.5;
    auto u0 = uncertainties(osc, SqueezeParam::from_polar(r, 0.0), 0.0);
    CHECK(u0.delta_x == doctest::Approx(std::exp(r) / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(u0.delta_p == doctest::Approx(std::exp(-r) / std::sqrt(2.0)).epsilon(1e-14));
    auto uq = uncertainties(osc, SqueezeParam::from_polar(r, 0.0), std::acos(-1.0) / 2);
    CHECK(uq.delta_x == doctest::Approx(std::exp(-r) / std::sqrt(2.0)).epsilon(1e-12));
    for (double t : {0.7, 2.9}) {
        auto u = uncertainties(osc, SqueezeParam::from_polar(0.8, 1.2), t);
        CHECK(u.product >= 0.5 - 1e-14);
        CHECK(u.product_sq_complex == doctest::Approx(u.product * u.product).epsilon(1e-12));
        CHECK(u.product_sq_real == doctest::Approx(u.product * u.product).epsilon(1e-12));
    }
}

TEST_CASE("trajectory sampling") {
    auto b = bundle_for(PotentialSpec::linear(1.0), 2.0);
    auto one = trajectory(b, 0.1, 0.2, SqueezeParam{}, Ordering::alpha_z, tau_grid(2.0, 1));
    REQUIRE(one.size() == 1);
    CHECK(one[0].tau == 0.0);
    CHECK(one[0].mean_x == doctest::Approx(0.1));
    auto grid = tau_grid(2.0, 5);
    CHECK(grid.back() == 2.0);
    CHECK(grid[1] == doctest::Approx(0.5));
    CHECK(trajectory(b, 0.0, 0.0, SqueezeParam{}, Ordering::z_alpha, grid).size() == 5);
    CHECK_THROWS(trajectory(b, cplx(0.0), SqueezeParam{}, Ordering::alpha_z, {0.0, 1.0, 1.0}));
}

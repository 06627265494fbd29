#include <doctest.h>

#include <cmath>

#include "dosq/algebra.hpp"
#include "dosq/errors.hpp"
#include "dosq/states.hpp"

using namespace dosq;

namespace {

struct Fixture {
    PotentialSpec spec;
    AuxiliaryBundle bundle;
    explicit Fixture(PotentialSpec s)
        : spec(s), bundle(build_bundle(solve_basis(s, default_initial_data(s), 2.0), s)) {}
};

const Relation& find(const std::vector<Relation>& rels, const std::string& name) {
    for (const auto& r : rels)
        if (r.name == name) return r;
    FAIL("no relation " << name);
    return rels.front();
}

}  // namespace

TEST_CASE("Heisenberg-Weyl relation converges at second order") {
    Fixture f(PotentialSpec::driven(1.0, 0.5));
    auto rels = algebra_relations();
    auto r = relation_convergence(find(rels, "[J-,J+] = I"), gaussian_field(0.2, 1.0, 0.5, 0.1), f.bundle, f.spec,
                                  GridSpec{});
    CHECK(r.fine < 1e-5);
    if (!r.exact) CHECK(r.order == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("su(1,1) relations hold and the alternate readings do not") {
    Fixture f(PotentialSpec::harmonic(1.0));
    auto rels = algebra_relations();
    auto field = gaussian_field(-0.3, 0.9, 0.2, 0.0);
    for (const char* name : {"[K3,K+] = 2K+", "[M+,M-] = -M3", "[M-,J+] = -J-"}) {
        INFO(name);
        CHECK(relation_convergence(find(rels, name), field, f.bundle, f.spec, GridSpec{}).fine < 1e-4);
    }
    for (const char* name : {"alt [K3,K+] = K+", "alt [M-,J+] = J-"}) {
        INFO(name);
        const auto& rel = find(rels, name);
        CHECK(rel.diagnostic);
        CHECK(relation_convergence(rel, field, f.bundle, f.spec, GridSpec{}).fine > 1e-2);
    }
}

TEST_CASE("M3 eigenvalue and decomposition on number states") {
    Fixture f(PotentialSpec::linear(1.0));
    auto field = number_state_field(f.bundle, 2, 0.5);
    UniformAxis x{field.center - field.half_width, 0.004, static_cast<int>(2 * field.half_width / 0.004) + 1};
    UniformAxis tau{0.5 - 4 * 0.004, 0.004, 9};
    auto psi = field.sample(x, tau);
    GridContext ctx(f.bundle, f.spec, tau);
    CHECK(m3_eigenvalue_residual(2, psi, ctx) < 1e-4);
    CHECK(m3_eigenvalue_residual(1, psi, ctx) > 0.1);
    CHECK(m3_decomposition_residual(psi, ctx) < 1e-4);
}

TEST_CASE("ladder operators step between number states") {
    Fixture f(PotentialSpec::repulsive(1.0));
    GridSpec g{0.002, 0.01, 1, 0.5};
    CHECK(ladder_convergence(GeneratorKind::J_minus, 0, f.bundle, f.spec, g).fine < 1e-5);
    CHECK(ladder_convergence(GeneratorKind::J_minus, 3, f.bundle, f.spec, g).fine < 1e-5);
    CHECK(ladder_convergence(GeneratorKind::J_plus, 2, f.bundle, f.spec, g).fine < 1e-5);
    CHECK_THROWS_AS(ladder_convergence(GeneratorKind::M_3, 1, f.bundle, f.spec, g), ConfigError);
}

TEST_CASE("operator plumbing") {
    Fixture f(PotentialSpec::free_particle());
    auto field = gaussian_field(0.0, 1.0, 0.0, 0.0);
    UniformAxis x{-6, 0.01, 1201}, tau{0.5, 0.01, 9};
    auto psi = field.sample(x, tau);
    GridContext ctx(f.bundle, f.spec, tau);
    auto same = apply(GeneratorKind::Identity, psi, ctx);
    CHECK(relative_difference(same, psi) == 0.0);
    auto zero = apply(commutator(GeneratorKind::J_minus, GeneratorKind::J_minus), psi, ctx);
    CHECK(zero.interior_norm() == 0.0);
    GridContext other(f.bundle, f.spec, UniformAxis{0.6, 0.01, 9});
    CHECK_THROWS_AS(apply(GeneratorKind::J_plus, psi, other), ConfigError);
    CHECK_THROWS_AS(GridContext(f.bundle, f.spec, tau, 3), ConfigError);
    CHECK(generator_name(GeneratorKind::M_3) != generator_name(GeneratorKind::M_plus));
}

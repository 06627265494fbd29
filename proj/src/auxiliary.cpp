#include "dosq/auxiliary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dosq/errors.hpp"
#include "quadrature.hpp"

namespace dosq {

namespace {
constexpr cplx I{0.0, 1.0};

std::vector<double> table_nodes(const PotentialSpec& spec, double tau_max) {
    double g2max = spec.g2.max_abs(0.0, tau_max);
    double step = std::min(0.1, 0.3 / std::max(1e-12, std::sqrt(2 * g2max)));
    int n = std::max(1, static_cast<int>(std::ceil(tau_max / step)));
    std::vector<double> nodes;
    for (int k = 0; k <= n; ++k) nodes.push_back(tau_max * k / n);
    for (double b : spec.breakpoints())
        if (b > 0 && b < tau_max) nodes.push_back(b);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes;
}
}  // namespace

struct AuxiliaryBundle::Impl {
    ClassicalBasis basis;
    PotentialSpec spec;
    double quad_tol;
    quad::Cumulative<cplx> c;
    quad::Cumulative<double> g0_int, lambda_int, inv_phi3_int;
    long double phi3_0 = 1, phi3_dot_0 = 0, E3_0 = 0, b3_0 = 0;
    double arg_0 = 0;

    explicit Impl(const ClassicalBasis& b, const PotentialSpec& s, double tol)
        : basis(b), spec(s), quad_tol(tol) {}

    cplx C(double tau) const { return c(tau) + spec.c_zero; }

    // E3 and D3 in terms of xi and C, shared by the integrand and at().
    static double E3_of(cplx xi, cplx C) { return -2.0 * std::real(std::conj(xi) * C); }
    static double b3_of(cplx xi, cplx C, double phi3) {
        return std::real(I * (xi * std::conj(C) - std::conj(xi) * C)) / std::sqrt(phi3);
    }
};

AuxiliaryBundle build_bundle(const ClassicalBasis& basis, const PotentialSpec& spec, double quad_tol) {
    if (!(quad_tol > 0)) throw ConfigError("quadrature tolerance must be positive");
    const double T = basis.tau_max();
    spec.g1(0.0), spec.g1(T), spec.g0(0.0), spec.g0(T);

    auto impl = std::make_shared<AuxiliaryBundle::Impl>(basis, spec, quad_tol);
    auto nodes = table_nodes(spec, T);
    const PotentialSpec* sp = &impl->spec;
    const ClassicalBasis* bp = &impl->basis;

    if (spec.g1.is_zero())
        impl->c = quad::Cumulative<cplx>([](double) { return cplx{}; }, {0.0, T}, quad_tol, "c");
    else
        impl->c = quad::Cumulative<cplx>([bp, sp](double t) { return bp->xi(t) * sp->g1(t); }, nodes,
                                         quad_tol, "c(tau)");
    impl->g0_int = quad::Cumulative<double>([sp](double t) { return sp->g0(t); }, nodes, quad_tol, "G0");
    impl->inv_phi3_int = quad::Cumulative<double>(
        [bp](double t) { return static_cast<double>(1.0L / bp->phi3_l(t)); }, nodes, quad_tol, "arg xi");

    const auto* ip = impl.get();
    impl->lambda_int = quad::Cumulative<double>(
        [bp, ip](double t) {
            cplx xi = bp->xi(t), C = ip->C(t);
            double phi3 = static_cast<double>(bp->phi3_l(t));
            double E3 = AuxiliaryBundle::Impl::E3_of(xi, C);
            double D3 = -std::norm(C);
            return E3 * E3 / (phi3 * phi3) + D3 / phi3;
        },
        nodes, quad_tol, "Lambda3");

    lcplx xi0 = basis.xi_l(0.0), xid0 = basis.xi_dot_l(0.0);
    lcplx C0 = lcplx(spec.c_zero);
    impl->phi3_0 = basis.phi3_l(0.0);
    impl->phi3_dot_0 = 4 * std::real(xid0 * std::conj(xi0));
    impl->E3_0 = -2 * std::real(std::conj(xi0) * C0);
    impl->b3_0 = std::real(lcplx(0, 1) * (xi0 * std::conj(C0) - std::conj(xi0) * C0)) / std::sqrt(impl->phi3_0);
    impl->arg_0 = static_cast<double>(std::arg(xi0));
    return AuxiliaryBundle(impl);
}

cplx AuxiliaryBundle::C(double tau) const { return impl_->C(tau); }
double AuxiliaryBundle::G0(double tau) const { return impl_->g0_int(tau); }

double AuxiliaryBundle::argxi(double tau) const {
    double approx = impl_->arg_0 + impl_->inv_phi3_int(tau);
    double principal = static_cast<double>(std::arg(impl_->basis.xi_l(tau)));
    double turns = std::nearbyint((approx - principal) / (2 * std::numbers::pi));
    return principal + 2 * std::numbers::pi * turns;
}

double AuxiliaryBundle::Lambda3(double tau) const {
    auto g = geometry(tau);
    double B3 = static_cast<double>(g.B3);
    return impl_->lambda_int(tau) - B3 * (theta2() - 0.25 * B3 * static_cast<double>(impl_->phi3_dot_0));
}

PhaseGeometry AuxiliaryBundle::geometry(double tau) const {
    const auto& b = impl_->basis;
    lcplx xi = b.xi_l(tau), xid = b.xi_dot_l(tau);
    lcplx C = lcplx(impl_->C(tau));
    PhaseGeometry g;
    g.phi3 = b.phi3_l(tau);
    g.phi3_dot = 4 * std::real(xid * std::conj(xi));
    g.E3 = -2 * std::real(std::conj(xi) * C);
    g.b3 = std::real(lcplx(0, 1) * (xi * std::conj(C) - std::conj(xi) * C)) / std::sqrt(g.phi3);
    g.B3 = g.b3 - impl_->b3_0;
    return g;
}

AuxPoint AuxiliaryBundle::at(double tau) const {
    const auto& b = impl_->basis;
    const auto& s = impl_->spec;
    AuxPoint p;
    p.tau = tau;
    p.g2 = b.spec().g2(tau);
    p.g1 = s.g1(tau);
    p.g0 = s.g0(tau);
    p.xi = b.xi(tau);
    p.xi_dot = b.xi_dot(tau);
    p.xi_ddot = -2.0 * p.g2 * p.xi;
    p.c = impl_->c(tau);
    p.C = p.c + s.c_zero;
    const cplx xi = p.xi, xd = p.xi_dot, xdd = p.xi_ddot, C = p.C;
    const cplx xb = std::conj(xi), xbd = std::conj(xd), Cb = std::conj(C);
    const cplx Cd = xi * p.g1;

    p.phi1 = xi * xi;
    p.phi2 = xb * xb;
    p.phi1_dot = 2.0 * xi * xd;
    p.phi2_dot = std::conj(p.phi1_dot);
    p.phi1_ddot = 2.0 * xd * xd + 2.0 * xi * xdd;
    p.phi2_ddot = std::conj(p.phi1_ddot);
    p.phi3 = static_cast<double>(b.phi3_l(tau));
    p.phi3_dot = 4.0 * std::real(xd * xb);
    p.phi3_ddot = 4.0 * std::norm(xd) + 4.0 * std::real(xdd * xb);

    p.E1 = -xi * C;
    p.E2 = -xb * Cb;
    p.E1_dot = -xd * C - xi * Cd;
    p.E2_dot = std::conj(p.E1_dot);
    p.E3 = Impl::E3_of(xi, C);
    p.E3_dot = -2.0 * std::real(xd * Cb) - 2.0 * p.g1 * std::norm(xi);
    p.D1 = -0.5 * C * C;
    p.D2 = std::conj(p.D1);
    p.D3 = -std::norm(C);

    p.b3 = Impl::b3_of(xi, C, p.phi3);
    p.B3 = p.b3 - static_cast<double>(impl_->b3_0);
    // d/dtau of i(xi Cbar - xibar C)/sqrt(phi3); the C' terms cancel.
    p.b3_dot = std::real(I * (xd * Cb - xbd * C)) / std::sqrt(p.phi3) - 0.5 * p.phi3_dot / p.phi3 * p.b3;

    p.G0 = impl_->g0_int(tau);
    p.Lambda3 = impl_->lambda_int(tau) - p.B3 * (theta2() - 0.25 * p.B3 * static_cast<double>(impl_->phi3_dot_0));
    p.argxi = argxi(tau);
    return p;
}

long double AuxiliaryBundle::phi3_zero() const { return impl_->phi3_0; }
long double AuxiliaryBundle::phi3_dot_zero() const { return impl_->phi3_dot_0; }
long double AuxiliaryBundle::E3_zero() const { return impl_->E3_0; }
long double AuxiliaryBundle::b3_zero() const { return impl_->b3_0; }
double AuxiliaryBundle::theta1() const { return static_cast<double>(impl_->phi3_dot_0 / 2); }
double AuxiliaryBundle::theta2() const { return static_cast<double>(impl_->E3_0 / std::sqrt(impl_->phi3_0)); }
const ClassicalBasis& AuxiliaryBundle::basis() const { return impl_->basis; }
const PotentialSpec& AuxiliaryBundle::spec() const { return impl_->spec; }
double AuxiliaryBundle::tau_max() const { return impl_->basis.tau_max(); }
double AuxiliaryBundle::quad_tol() const { return impl_->quad_tol; }

double AuxiliaryBundle::B3_by_quadrature(double tau, double tol) const {
    const auto* ip = impl_.get();
    auto f = [ip](double t) {
        cplx xi = ip->basis.xi(t);
        double phi3 = static_cast<double>(ip->basis.phi3_l(t));
        return Impl::E3_of(xi, ip->C(t)) / (phi3 * std::sqrt(phi3));
    };
    std::vector<double> cuts{0.0};
    for (double b : impl_->spec.breakpoints())
        if (b > 0 && b < tau) cuts.push_back(b);
    for (double b : impl_->basis.spec().breakpoints())
        if (b > 0 && b < tau) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(tau);
    double acc = 0;
    for (std::size_t k = 1; k < cuts.size(); ++k)
        if (cuts[k] > cuts[k - 1]) acc += quad::adaptive(f, cuts[k - 1], cuts[k], tol, "B3 oracle");
    return acc;
}

FormulaIParts formula_I_parts(const AuxiliaryBundle& bundle, const ClassicalBasis& basis, double tau) {
    AuxPoint p = bundle.at(tau);
    cplx xd = basis.xi_dot(tau);
    double sq = std::sqrt(p.phi3);
    double lhs = 0.5 * p.phi3_dot * p.b3 + p.E3 / sq;
    cplx rhs = I * sq * (xd * std::conj(p.C) - std::conj(xd) * p.C);
    FormulaIParts r;
    r.first_form = std::abs(lhs - rhs);
    r.derivative_form = std::abs(p.phi3 * p.b3_dot - p.E3 / sq);
    r.closing_line = std::abs(0.5 * p.phi3_dot * p.b3 + p.phi3 * p.b3_dot - I / sq);
    return r;
}

double check_formula_I(const AuxiliaryBundle& bundle, const ClassicalBasis& basis, double tau) {
    auto r = formula_I_parts(bundle, basis, tau);
    return std::max(r.first_form, r.derivative_form);
}

double check_formula_II(const AuxiliaryBundle&, const ClassicalBasis& basis,
                        const PotentialSpec& spec, double tau) {
    // phi3'' from the basis's own equation of motion; the right-hand side uses `spec`.
    cplx xi = basis.xi(tau), xd = basis.xi_dot(tau), xdd = basis.xi_ddot(tau);
    double phi3 = static_cast<double>(basis.phi3_l(tau));
    double phi3_dot = 4.0 * std::real(xd * std::conj(xi));
    double phi3_ddot = 2.0 * std::real(2.0 * xdd * std::conj(xi) + 2.0 * xd * std::conj(xd));
    double lhs = phi3_ddot / phi3 - 0.5 * phi3_dot * phi3_dot / (phi3 * phi3);
    double rhs = -4.0 * spec.g2(tau) + 2.0 / (phi3 * phi3);
    return std::abs(lhs - rhs);
}

double check_formula_III(const AuxiliaryBundle& bundle, const ClassicalBasis& basis,
                         const PotentialSpec& spec, double tau) {
    AuxPoint p = bundle.at(tau);
    cplx xi = basis.xi(tau), xd = basis.xi_dot(tau);
    double E3_dot = -2.0 * std::real(xd * std::conj(p.C)) - 2.0 * p.g1 * std::norm(xi);
    double lhs = 2.0 * E3_dot / p.phi3 - p.phi3_dot * p.E3 / (p.phi3 * p.phi3);
    double rhs = -2.0 * spec.g1(tau) - 2.0 * p.b3 / (p.phi3 * std::sqrt(p.phi3));
    return std::abs(lhs - rhs);
}

double check_formula_IV(const AuxiliaryBundle& bundle, double tau, double quad_tol) {
    return std::abs(bundle.B3_by_quadrature(tau, quad_tol) - bundle.at(tau).B3);
}

}  // namespace dosq

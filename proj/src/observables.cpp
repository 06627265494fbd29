#include "dosq/observables.hpp"

#include <cmath>

#include "dosq/errors.hpp"

namespace dosq {

namespace {

constexpr cplx I{0, 1};

// i (a conj(b) - conj(a) b) for the shift term carried by C.
cplx shift(cplx a, cplx C) { return I * (a * std::conj(C) - std::conj(a) * C); }

}  // namespace

LadderCoefficients ladder_coefficients(const AuxiliaryBundle& bundle, cplx alpha, const SqueezeParam& z, double tau) {
    const auto& basis = bundle.basis();
    const cplx xi = basis.xi(tau), xd = basis.xi_dot(tau), C = bundle.C(tau);
    const double ch = std::cosh(z.r()), sh = std::sinh(z.r());
    const cplx rot = std::polar(1.0, -z.theta());
    LadderCoefficients L;
    L.X_minus = std::conj(xi) * ch + xi * rot * sh;
    L.X_plus = std::conj(L.X_minus);
    L.X_minus_dot = std::conj(xd) * ch + xd * rot * sh;
    L.X_plus_dot = std::conj(L.X_minus_dot);
    // The C' contributions to the dotted shifts cancel, leaving xi -> xi' only.
    L.X_0 = alpha * std::conj(xi) + std::conj(alpha) * xi + shift(xi, C);
    L.X_0_dot = alpha * std::conj(xd) + std::conj(alpha) * xd + shift(xd, C);
    L.Y_0 = alpha * L.X_minus + std::conj(alpha) * L.X_plus + shift(xi, C);
    L.Y_0_dot = alpha * L.X_minus_dot + std::conj(alpha) * L.X_plus_dot + shift(xd, C);
    return L;
}

double mean_x(const AuxiliaryBundle& bundle, cplx alpha, const SqueezeParam& z, Ordering ordering, double tau) {
    auto L = ladder_coefficients(bundle, alpha, z, tau);
    return (ordering == Ordering::alpha_z ? L.X_0 : L.Y_0).real();
}

double mean_p(const AuxiliaryBundle& bundle, cplx alpha, const SqueezeParam& z, Ordering ordering, double tau) {
    auto L = ladder_coefficients(bundle, alpha, z, tau);
    return (ordering == Ordering::alpha_z ? L.X_0_dot : L.Y_0_dot).real();
}

Means mean_from_initial(const AuxiliaryBundle& bundle, double x0, double p0, double tau) {
    const auto& basis = bundle.basis();
    const cplx xi = basis.xi(tau), xd = basis.xi_dot(tau);
    const cplx xi0 = basis.xi(0), xd0 = basis.xi_dot(0);
    const cplx c = bundle.C(tau) - bundle.C(0);
    Means m;
    m.x = (I * ((std::conj(xi) * xi0 - xi * std::conj(xi0)) * p0 + (xi * std::conj(xd0) - std::conj(xi) * xd0) * x0) +
           shift(xi, c)).real();
    // Same bracket structure with xi replaced by xi'; x0 multiplies the second bracket.
    m.p = (I * ((std::conj(xd) * xi0 - xd * std::conj(xi0)) * p0 + (xd * std::conj(xd0) - std::conj(xd) * xd0) * x0) +
           shift(xd, c)).real();
    return m;
}

cplx alpha_from_initial(double x0, double p0, const AuxiliaryBundle& bundle) {
    const auto& basis = bundle.basis();
    return I * (p0 * basis.xi(0) - x0 * basis.xi_dot(0)) + I * bundle.C(0);
}

cplx alpha_from_initial_z_alpha(double x0, double p0, const SqueezeParam& z, const AuxiliaryBundle& bundle) {
    // alpha cosh r + conj(alpha) e^{i theta} sinh r = a has the inverse below since cosh^2 - sinh^2 = 1.
    const cplx a = alpha_from_initial(x0, p0, bundle);
    return a * std::cosh(z.r()) - std::conj(a) * std::polar(1.0, z.theta()) * std::sinh(z.r());
}

cplx alpha_for(Ordering ordering, double x0, double p0, const SqueezeParam& z, const AuxiliaryBundle& bundle) {
    return ordering == Ordering::alpha_z ? alpha_from_initial(x0, p0, bundle)
                                         : alpha_from_initial_z_alpha(x0, p0, z, bundle);
}

Uncertainties uncertainties(const AuxiliaryBundle& bundle, const SqueezeParam& z, double tau) {
    const auto& basis = bundle.basis();
    const cplx xi = basis.xi(tau), xd = basis.xi_dot(tau);
    const cplx xb = std::conj(xi), xdb = std::conj(xd);
    const double c2 = std::cosh(2 * z.r()), s2 = std::sinh(2 * z.r());
    const cplx ep = std::polar(1.0, z.theta()), em = std::conj(ep);

    const cplx vx = xi * xb * c2 + 0.5 * (xb * xb * ep + xi * xi * em) * s2;
    const cplx vp = xd * xdb * c2 + 0.5 * (xdb * xdb * ep + xd * xd * em) * s2;
    if (vx.real() < -1e-12 || vp.real() < -1e-12)
        throw NumericError("negative variance at tau = " + std::to_string(tau));

    Uncertainties u;
    u.delta_x = std::sqrt(std::max(vx.real(), 0.0));
    u.delta_p = std::sqrt(std::max(vp.real(), 0.0));
    u.product = u.delta_x * u.delta_p;

    const cplx cross = xi * xdb + xd * xb;
    const cplx sq = xi * xb * xd * xdb * c2 * c2 +
                    0.25 * (xb * xb * ep + xi * xi * em) * (xdb * xdb * ep + xd * xd * em) * s2 * s2 +
                    0.5 * (xb * xdb * cross * ep + xi * xd * cross * em) * c2 * s2;
    u.product_sq_complex = sq.real();

    const auto s = basis.sample(tau);
    const double P = double(s.chi1 * s.chi1_dot + s.chi2 * s.chi2_dot);
    const double M = double(s.chi1 * s.chi1_dot - s.chi2 * s.chi2_dot);
    const double N = double(s.chi1 * s.chi2_dot + s.chi1_dot * s.chi2);
    const double th = z.theta(), r = z.r();
    u.product_sq_real = 0.25 * (1 + P * P) +
                        0.125 * ((1 + 3 * P * P) + (M * M - N * N) * std::cos(2 * th) + 2 * M * N * std::sin(2 * th)) *
                            s2 * s2 +
                        0.25 * P * (M * std::cos(th) + N * std::sin(th)) * std::sinh(4 * r);
    return u;
}

std::vector<TrajectoryRecord> trajectory(const AuxiliaryBundle& bundle, cplx alpha, const SqueezeParam& z,
                                         Ordering ordering, const std::vector<double>& taus) {
    for (std::size_t i = 1; i < taus.size(); ++i)
        if (!(taus[i] > taus[i - 1])) throw ConfigError("trajectory tau grid must be strictly ascending");
    std::vector<TrajectoryRecord> out(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const double t = taus[i];
        auto L = ladder_coefficients(bundle, alpha, z, t);
        auto u = uncertainties(bundle, z, t);
        const bool az = ordering == Ordering::alpha_z;
        out[i] = {t, (az ? L.X_0 : L.Y_0).real(), (az ? L.X_0_dot : L.Y_0_dot).real(), u.delta_x, u.delta_p,
                  u.product};
    }
    return out;
}

std::vector<TrajectoryRecord> trajectory(const AuxiliaryBundle& bundle, double x0, double p0, const SqueezeParam& z,
                                         Ordering ordering, const std::vector<double>& taus) {
    return trajectory(bundle, alpha_for(ordering, x0, p0, z, bundle), z, ordering, taus);
}

std::vector<double> tau_grid(double tau_max, int n) {
    if (n < 1) throw ConfigError("tau_steps must be at least 1");
    if (!(tau_max >= 0)) throw ConfigError("tau_max must be non-negative");
    std::vector<double> t(n, 0.0);
    for (int i = 1; i < n; ++i) t[i] = tau_max * i / (n - 1);
    return t;
}

}  // namespace dosq

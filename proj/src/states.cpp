#include "dosq/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dosq/errors.hpp"

namespace dosq {

SeparableCoords separable_coords(const AuxiliaryBundle& bundle, double x, double tau) {
    auto g = bundle.geometry(tau);
    return {static_cast<double>(x / std::sqrt(g.phi3) - g.B3), tau};
}

double hermite(int m, double u, int capacity) {
    if (m < 0) throw ConfigError("Hermite index must be non-negative");
    if (m > capacity) throw CapacityError("Hermite index " + std::to_string(m) + " exceeds capacity " +
                                          std::to_string(capacity));
    if (m == 0) return 1.0;
    double prev = 1.0, cur = 2.0 * u;
    for (int k = 1; k < m; ++k) {
        double next = 2.0 * u * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double hermite_function(int m, double u) {
    if (m < 0) throw ConfigError("Hermite index must be non-negative");
    if (m > number_state_capacity) throw CapacityError("Hermite function index exceeds capacity");
    kernels::PsiRow row;  // unit amplitude, zero phase, u = x
    std::complex<double> out;
    std::vector<std::complex<double>> w(m + 1, 0.0);
    w[m] = 1.0;
    kernels::serial::psi_row(row, w.data(), m + 1, &u, 1, &out);
    return out.real();
}

double r_factor(double x, double tau, const AuxiliaryBundle& bundle, const ClassicalBasis&) {
    auto g = bundle.geometry(tau);
    long double sq = std::sqrt(g.phi3), sq0 = std::sqrt(bundle.phi3_zero());
    long double r = 0.25L * x * x / g.phi3 * (g.phi3_dot - bundle.phi3_dot_zero()) +
                    x / sq * (g.E3 / sq - bundle.E3_zero() / sq0 + 0.5L * g.B3 * bundle.phi3_dot_zero());
    return static_cast<double>(r);
}

NumberState::NumberState(int m, AuxiliaryBundle bundle) : m_(m), bundle_(std::move(bundle)) {
    if (m < 0) throw ConfigError("number state index must be non-negative");
    if (m > number_state_capacity)
        throw CapacityError("number state index " + std::to_string(m) + " exceeds capacity " +
                            std::to_string(number_state_capacity));
}

kernels::PsiRow psi_row_parameters(const AuxiliaryBundle& bundle, double tau) {
    auto g = bundle.geometry(tau);
    const long double sq = std::sqrt(g.phi3), sq0 = std::sqrt(bundle.phi3_zero());
    const long double pd0 = bundle.phi3_dot_zero();
    const long double th1 = pd0 / 2, th2 = bundle.E3_zero() / sq0;
    // R(x) = rq x^2 + rl x
    const long double rq = 0.25L * (g.phi3_dot - pd0) / g.phi3;
    const long double rl = (g.E3 / sq - bundle.E3_zero() / sq0 + 0.5L * g.B3 * pd0) / sq;
    // theta1 zeta^2 / 2 + theta2 zeta with zeta = x / sq - B3
    const long double zq = 0.5L * th1 / g.phi3;
    const long double zl = (th2 - th1 * g.B3) / sq;
    const long double zc = 0.5L * th1 * g.B3 * g.B3 - th2 * g.B3;

    kernels::PsiRow row;
    row.qa = rq + zq;
    row.qb = rl + zl;
    row.qc = zc - bundle.Lambda3(tau) - bundle.G0(tau) - 0.5L * bundle.argxi(tau) -
             0.5L * bundle.argxi(0.0);
    row.argxi = bundle.argxi(tau);
    row.inv_sqrt_phi3 = 1 / sq;
    row.b3 = g.b3;
    row.amp = static_cast<double>(std::pow(g.phi3, -0.25L));
    return row;
}

std::complex<double> psi_m(const NumberState& state, double x, double tau) {
    auto row = psi_row_parameters(state.bundle(), tau);
    std::vector<std::complex<double>> w(state.m() + 1, 0.0);
    w[state.m()] = 1.0;
    std::complex<double> out;
    kernels::serial::psi_row(row, w.data(), state.m() + 1, &x, 1, &out);
    return out;
}

void WavefunctionGrid::validate() const {
    if (x.size() != values.size()) throw ValidationError("wavefunction grid lengths differ");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1])) throw ValidationError("wavefunction grid must be strictly ascending");
}

namespace {
template <class F>
double trapezoid(const WavefunctionGrid& g, F&& weight) {
    double s = 0;
    for (std::size_t i = 1; i < g.x.size(); ++i)
        s += 0.5 * (g.x[i] - g.x[i - 1]) *
             (weight(g.x[i]) * std::norm(g.values[i]) + weight(g.x[i - 1]) * std::norm(g.values[i - 1]));
    return s;
}
}  // namespace

double WavefunctionGrid::norm() const {
    return trapezoid(*this, [](double) { return 1.0; });
}

double WavefunctionGrid::mean_x() const {
    return trapezoid(*this, [](double v) { return v; }) / norm();
}

double WavefunctionGrid::variance_x() const {
    double m = mean_x();
    return trapezoid(*this, [m](double v) { return (v - m) * (v - m); }) / norm();
}

WavefunctionGrid psi_m_grid(const NumberState& state, const std::vector<double>& x, double tau) {
    std::vector<std::complex<double>> w(state.m() + 1, 0.0);
    w[state.m()] = 1.0;
    return superpose_grid(state.bundle(), w, x, tau);
}

WavefunctionGrid superpose_grid(const AuxiliaryBundle& bundle, const std::vector<std::complex<double>>& coeffs,
                                const std::vector<double>& x, double tau) {
    if (coeffs.empty()) throw ConfigError("superposition needs at least one coefficient");
    if (static_cast<int>(coeffs.size()) > number_state_capacity + 1)
        throw CapacityError("superposition exceeds number state capacity");
    WavefunctionGrid g;
    g.x = x;
    g.tau = tau;
    g.values.resize(x.size());
    g.validate();
    auto row = psi_row_parameters(bundle, tau);
    kernels::parallel::psi_row(row, coeffs.data(), static_cast<int>(coeffs.size()), x.data(),
                               static_cast<int>(x.size()), g.values.data());
    return g;
}

std::vector<FieldGrid> psi_fields(const AuxiliaryBundle& bundle, int mmax, const UniformAxis& x,
                                  const UniformAxis& tau) {
    if (mmax < 0 || mmax > number_state_capacity) throw CapacityError("number state index out of range");
    std::vector<double> xs(x.count);
    for (int i = 0; i < x.count; ++i) xs[i] = x[i];
    std::vector<FieldGrid> out(mmax + 1, FieldGrid(x, tau));
    std::vector<std::complex<double>> buf(std::size_t(mmax + 1) * x.count);
    for (int it = 0; it < tau.count; ++it) {
        auto row = psi_row_parameters(bundle, tau[it]);
        kernels::parallel::psi_row_multi(row, mmax, xs.data(), x.count, buf.data());
        for (int m = 0; m <= mmax; ++m)
            std::copy(buf.begin() + std::size_t(m) * x.count, buf.begin() + std::size_t(m + 1) * x.count,
                      out[m].row(it));
    }
    return out;
}

FieldGrid psi_field(const NumberState& state, const UniformAxis& x, const UniformAxis& tau) {
    std::vector<double> xs(x.count);
    for (int i = 0; i < x.count; ++i) xs[i] = x[i];
    FieldGrid f(x, tau);
    std::vector<std::complex<double>> w(state.m() + 1, 0.0);
    w[state.m()] = 1.0;
    for (int it = 0; it < tau.count; ++it) {
        auto row = psi_row_parameters(state.bundle(), tau[it]);
        kernels::parallel::psi_row(row, w.data(), state.m() + 1, xs.data(), x.count, f.row(it));
    }
    return f;
}

std::vector<double> number_state_residuals(const AuxiliaryBundle& bundle, int mmax, double tau,
                                           const StreamedResidualPlan& plan) {
    if (!(plan.h > 0) || !(plan.k > 0) || !(plan.half_width_u > 0) || plan.chunk < 64)
        throw ConfigError("invalid residual plan");
    const int mx = plan.x_order / 2;
    const int nt = std::max(5, plan.tau_order + 1);
    const double T = bundle.tau_max();
    if ((nt - 1) * plan.k > T) throw ConfigError("tau window longer than the basis domain");
    int j = std::min(nt / 2, static_cast<int>(std::floor(tau / plan.k + 1e-9)));
    int after = static_cast<int>(std::floor((T - tau) / plan.k + 1e-9));
    j = std::max(j, nt - 1 - after);
    const UniformAxis tax{tau - j * plan.k, plan.k, nt};

    auto g = bundle.geometry(tau);
    const double sq = static_cast<double>(std::sqrt(g.phi3));
    const double center = static_cast<double>(std::sqrt(g.phi3) * g.b3);
    const double L = plan.half_width_u * sq;
    // Start on a multiple of h so that, with a dyadic h, every x0 + i h is exact;
    // rounding in x would otherwise be amplified by the phase gradient and 1/h^2.
    const double x0 = std::floor((center - L) / plan.h) * plan.h;
    const long long n = static_cast<long long>(std::ceil((center + L - x0) / plan.h)) + 1;
    if (n < 2 * mx + 5) throw ConfigError("residual window has too few points");

    std::vector<ResidualSums> sums(mmax + 1);
    ResidualOptions opt;
    opt.x_order = plan.x_order;
    opt.tau_order = plan.tau_order;
    opt.rows = {j};
    for (long long e_lo = mx; e_lo < n - mx; e_lo += plan.chunk) {
        long long e_hi = std::min<long long>(e_lo + plan.chunk, n - mx);
        long long g_lo = e_lo - mx, g_hi = e_hi + mx;
        int count = static_cast<int>(g_hi - g_lo);
        if (count < 5) {  // pad tiny tail chunks so the grid checks hold
            g_lo = std::max<long long>(0, g_hi - 5);
            count = static_cast<int>(g_hi - g_lo);
        }
        UniformAxis xax{x0 + g_lo * plan.h, plan.h, count};
        auto fields = psi_fields(bundle, mmax, xax, tax);
        for (int m = 0; m <= mmax; ++m) {
            fields[m].x_lo = static_cast<int>(e_lo - mx - g_lo);
            fields[m].x_hi = static_cast<int>(e_hi + mx - g_lo);
            sums[m] += schroedinger_residual_sums(fields[m], bundle.spec(), opt);
        }
    }
    std::vector<double> out;
    for (auto& s : sums) out.push_back(s.ratio());
    return out;
}

NumberStateQuality number_state_quality(const AuxiliaryBundle& bundle, int mmax, double tau, int points) {
    if (points < 5) throw ConfigError("quality grid needs at least 5 points");
    auto g = bundle.geometry(tau);
    const double sq = static_cast<double>(std::sqrt(g.phi3));
    const double center = static_cast<double>(std::sqrt(g.phi3) * g.b3);
    const double L = (std::sqrt(2.0 * mmax + 1) + 10) * sq;
    UniformAxis x = UniformAxis::span(center - L, center + L, points);
    UniformAxis t{tau, 1.0, 1};
    auto fields = psi_fields(bundle, mmax, x, t);

    auto overlap = [&](int a, int b) {
        const auto* pa = fields[a].row(0);
        const auto* pb = fields[b].row(0);
        std::complex<double> s = 0.5 * (std::conj(pa[0]) * pb[0] + std::conj(pa[points - 1]) * pb[points - 1]);
        for (int i = 1; i < points - 1; ++i) s += std::conj(pa[i]) * pb[i];
        return s * x.step;
    };
    NumberStateQuality q;
    for (int a = 0; a <= mmax; ++a)
        for (int b = a; b <= mmax; ++b) {
            auto o = overlap(a, b);
            if (a == b) q.max_norm_error = std::max(q.max_norm_error, std::abs(o - 1.0));
            else q.max_overlap = std::max(q.max_overlap, std::abs(o));
        }
    return q;
}

StreamedResidualPlan default_residual_plan(const AuxiliaryBundle& bundle, double tau) {
    // The phase gradient grows like |x| phi3'/(2 phi3), so the x step follows sqrt(phi3).
    auto g = bundle.geometry(tau);
    StreamedResidualPlan p;
    p.x_order = 16;
    p.tau_order = 4;
    p.half_width_u = 9.6;
    // A power of two keeps the grid points exact (see number_state_residuals).
    p.h = std::exp2(std::floor(std::log2(0.1 / static_cast<double>(std::sqrt(g.phi3)))));
    p.k = 1e-3;
    return p;
}

}  // namespace dosq

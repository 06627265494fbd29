#include "dosq/classical.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "dosq/errors.hpp"

namespace dosq {

namespace {

enum class Form { zero, harmonic, repulsive, integrated };

using State = std::array<long double, 4>;  // chi1, chi1', chi2, chi2'

// Four-stage Gauss-Legendre collocation (order 8). Being symplectic it keeps
// the Wronskian, a quadratic invariant, exact up to round-off.
struct GaussLegendre4 {
    std::array<long double, 4> c{}, b{};
    std::array<std::array<long double, 4>, 4> a{};

    GaussLegendre4() {
        const long double r = std::sqrt(6.0L / 5.0L);
        const std::array<long double, 4> x{-std::sqrt(3.0L / 7 + 2.0L / 7 * r), -std::sqrt(3.0L / 7 - 2.0L / 7 * r),
                                           std::sqrt(3.0L / 7 - 2.0L / 7 * r), std::sqrt(3.0L / 7 + 2.0L / 7 * r)};
        const long double s30 = std::sqrt(30.0L);
        const std::array<long double, 4> w{(18 - s30) / 36, (18 + s30) / 36, (18 + s30) / 36, (18 - s30) / 36};
        for (int i = 0; i < 4; ++i) {
            c[i] = (1 + x[i]) / 2;
            b[i] = w[i] / 2;
        }
        // a[i][j] = integral_0^{c_i} of the j-th Lagrange polynomial on the nodes c.
        for (int j = 0; j < 4; ++j) {
            std::array<long double, 4> poly{1, 0, 0, 0};  // ascending powers
            long double denom = 1;
            for (int k = 0; k < 4; ++k) {
                if (k == j) continue;
                std::array<long double, 4> next{};
                for (int p = 0; p < 3; ++p) {
                    next[p + 1] += poly[p];
                    next[p] -= c[k] * poly[p];
                }
                poly = next;
                denom *= c[j] - c[k];
            }
            for (int i = 0; i < 4; ++i) {
                long double acc = 0, pw = c[i];
                for (int p = 0; p < 4; ++p) {
                    acc += poly[p] * pw / (p + 1);
                    pw *= c[i];
                }
                a[i][j] = acc / denom;
            }
        }
    }
};

const GaussLegendre4& gl4() {
    static const GaussLegendre4 t;
    return t;
}

// Solves the 8x8 stage system for both columns of the fundamental solution.
State gl_step(const CoefficientFunction& g2, double t, long double h, const State& y) {
    const auto& m = gl4();
    std::array<long double, 4> k2{};  // -2 g2 at the stage times
    for (int i = 0; i < 4; ++i) k2[i] = -2.0L * g2(static_cast<double>(t + m.c[i] * h));
    // Unknowns per column: stage slopes (p_i, q_i) of (a, a'); p_i = Q_i, q_i = k2_i * A_i
    // with A_i = a + h sum a_ij p_j and Q_i = a' + h sum a_ij q_j.
    State out{};
    for (int col = 0; col < 2; ++col) {
        long double y0 = y[2 * col], y1 = y[2 * col + 1];
        long double M[8][9] = {};
        for (int i = 0; i < 4; ++i) {
            // p_i - h sum a_ij q_j = y1
            M[i][i] = 1;
            for (int j = 0; j < 4; ++j) M[i][4 + j] -= h * m.a[i][j];
            M[i][8] = y1;
            // q_i - k2_i h sum a_ij p_j = k2_i y0
            M[4 + i][4 + i] = 1;
            for (int j = 0; j < 4; ++j) M[4 + i][j] -= k2[i] * h * m.a[i][j];
            M[4 + i][8] = k2[i] * y0;
        }
        for (int p = 0; p < 8; ++p) {
            int piv = p;
            for (int r = p + 1; r < 8; ++r)
                if (std::abs(M[r][p]) > std::abs(M[piv][p])) piv = r;
            if (piv != p)
                for (int cc = 0; cc < 9; ++cc) std::swap(M[p][cc], M[piv][cc]);
            for (int r = p + 1; r < 8; ++r) {
                long double f = M[r][p] / M[p][p];
                if (f == 0) continue;
                for (int cc = p; cc < 9; ++cc) M[r][cc] -= f * M[p][cc];
            }
        }
        long double sol[8];
        for (int p = 7; p >= 0; --p) {
            long double acc = M[p][8];
            for (int cc = p + 1; cc < 8; ++cc) acc -= M[p][cc] * sol[cc];
            sol[p] = acc / M[p][p];
        }
        long double d0 = 0, d1 = 0;
        for (int i = 0; i < 4; ++i) {
            d0 += m.b[i] * sol[i];
            d1 += m.b[i] * sol[4 + i];
        }
        out[2 * col] = y0 + h * d0;
        out[2 * col + 1] = y1 + h * d1;
    }
    return out;
}

long double state_scale(const State& y) {
    long double s = 1;
    for (auto v : y) s = std::max(s, std::abs(v));
    return s;
}

}  // namespace

struct ClassicalBasis::Impl {
    PotentialSpec spec;
    InitialData init;
    double tau_max = 0;
    Form form = Form::integrated;
    long double omega = 0;
    std::vector<double> nodes;
    std::vector<State> states;
    std::vector<std::string> warnings;

    void check(double tau) const {
        double slack = 1e-12 * std::max(1.0, tau_max);
        if (!(tau >= -slack && tau <= tau_max + slack))
            throw RangeError("tau = " + std::to_string(tau) + " outside basis domain [0, " +
                             std::to_string(tau_max) + "]");
    }

    State at(double tau) const {
        check(tau);
        tau = std::clamp(tau, 0.0, tau_max);
        const State y0{init.chi1, init.chi1_dot, init.chi2, init.chi2_dot};
        const long double t = tau;
        long double p00, p01, p10, p11;  // fundamental matrix
        switch (form) {
            case Form::zero:
                p00 = 1, p01 = t, p10 = 0, p11 = 1;
                break;
            case Form::harmonic: {
                long double c = std::cos(omega * t), s = std::sin(omega * t);
                p00 = c, p01 = s / omega, p10 = -omega * s, p11 = c;
                break;
            }
            case Form::repulsive: {
                long double c = std::cosh(omega * t), s = std::sinh(omega * t);
                p00 = c, p01 = s / omega, p10 = omega * s, p11 = c;
                break;
            }
            default: {
                auto it = std::upper_bound(nodes.begin(), nodes.end(), tau);
                std::size_t k = std::max<std::ptrdiff_t>(0, it - nodes.begin() - 1);
                if (nodes[k] == tau) return states[k];
                return gl_step(spec.g2, nodes[k], static_cast<long double>(tau) - nodes[k], states[k]);
            }
        }
        return {p00 * y0[0] + p01 * y0[1], p10 * y0[0] + p11 * y0[1], p00 * y0[2] + p01 * y0[3],
                p10 * y0[2] + p11 * y0[3]};
    }
};

InitialData default_initial_data(const PotentialSpec& spec) {
    if (spec.preset) {
        auto k = spec.preset->kind;
        if (k == PresetKind::harmonic || k == PresetKind::repulsive || k == PresetKind::driven)
            return InitialData::scaled(1.0L / std::sqrt(static_cast<long double>(spec.preset->omega)));
    }
    return InitialData::scaled(1.0L);
}

BasisSample ClassicalBasis::sample(double tau) const {
    State y = impl_->at(tau);
    return {y[0], y[1], y[2], y[3]};
}

lcplx ClassicalBasis::xi_l(double tau) const {
    State y = impl_->at(tau);
    return lcplx(y[0], y[2]) / std::sqrt(2.0L);
}

lcplx ClassicalBasis::xi_dot_l(double tau) const {
    State y = impl_->at(tau);
    return lcplx(y[1], y[3]) / std::sqrt(2.0L);
}

std::complex<double> ClassicalBasis::xi_ddot(double tau) const {
    return -2.0 * impl_->spec.g2(tau) * xi(tau);
}

long double ClassicalBasis::wronskian(double tau) const {
    State y = impl_->at(tau);
    return y[0] * y[3] - y[1] * y[2];
}

long double ClassicalBasis::phi3_l(double tau) const {
    State y = impl_->at(tau);
    return y[0] * y[0] + y[2] * y[2];
}

double ClassicalBasis::tau_max() const { return impl_->tau_max; }
const InitialData& ClassicalBasis::initial_data() const { return impl_->init; }
const PotentialSpec& ClassicalBasis::spec() const { return impl_->spec; }
bool ClassicalBasis::integrated() const { return impl_->form == Form::integrated; }
std::size_t ClassicalBasis::step_count() const { return impl_->nodes.empty() ? 0 : impl_->nodes.size() - 1; }
const std::vector<double>& ClassicalBasis::nodes() const { return impl_->nodes; }
const std::vector<std::string>& ClassicalBasis::warnings() const { return impl_->warnings; }

ClassicalBasis solve_basis(const PotentialSpec& spec, const InitialData& init, double tau_max,
                           double tol, BasisMode mode) {
    if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw ConfigError("tau_max must be positive");
    if (!(tol > 0.0)) throw ConfigError("ode tolerance must be positive");
    if (std::abs(init.wronskian() - 1) > 1e-10)
        throw ValidationError("initial data must have unit Wronskian (got " +
                              std::to_string(static_cast<double>(init.wronskian())) + ")");
    // Touch the coefficient at both ends so domain errors surface here.
    spec.g2(0.0);
    spec.g2(tau_max);

    auto impl = std::make_shared<ClassicalBasis::Impl>();
    impl->spec = spec;
    impl->init = init;
    impl->tau_max = tau_max;

    if (mode == BasisMode::automatic && spec.g2.is_constant()) {
        long double g = spec.g2.constant_value();
        if (g == 0) impl->form = Form::zero;
        else {
            impl->form = g > 0 ? Form::harmonic : Form::repulsive;
            impl->omega = std::sqrt(2 * std::abs(g));
        }
        return ClassicalBasis(impl);
    }

    impl->form = Form::integrated;
    std::vector<double> stops = spec.g2.breakpoints();
    stops.erase(std::remove_if(stops.begin(), stops.end(), [&](double b) { return b <= 0 || b >= tau_max; }),
                stops.end());
    stops.push_back(tau_max);

    const double g2max = spec.g2.max_abs(0.0, tau_max);
    const long double hmax = std::min(0.5, 1.0 / std::max(1e-12, std::sqrt(2 * g2max)));
    const long double local_tol = 1e-3L * tol;
    State y{init.chi1, init.chi1_dot, init.chi2, init.chi2_dot};
    double t = 0;
    long double h = std::min<long double>(hmax, 0.1L);
    impl->nodes.push_back(0.0);
    impl->states.push_back(y);
    std::size_t next_stop = 0;
    const std::size_t max_steps = 2000000;
    while (t < tau_max) {
        if (impl->nodes.size() > max_steps)
            throw NumericError("basis integration exceeded the step budget at tau = " + std::to_string(t));
        const double stop = stops[next_stop];
        bool clipped = false;
        if (t + h >= stop) {
            h = stop - t;
            clipped = true;
        }
        // The accepted value is the full step from a node stored as a double,
        // so the dense output (one step from the left node) is continuous.
        const double t_next = clipped ? stop : static_cast<double>(t + h);
        h = static_cast<long double>(t_next) - t;
        State full = gl_step(spec.g2, t, h, y);
        State half = gl_step(spec.g2, t, h / 2, y);
        half = gl_step(spec.g2, static_cast<double>(t + h / 2), h / 2, half);
        long double err = 0;
        for (int i = 0; i < 4; ++i) err = std::max(err, std::abs(full[i] - half[i]));
        err *= 256.0L / (255 * state_scale(half));  // error of the full step
        if (!std::isfinite(static_cast<double>(err)))
            throw NumericError("basis integration produced non-finite values at tau = " + std::to_string(t));
        if (err <= local_tol) {
            y = full;
            t = t_next;
            if (clipped) ++next_stop;
            impl->nodes.push_back(t);
            impl->states.push_back(y);
        } else if (h < 1e-14) {
            throw NumericError("basis step size underflow at tau = " + std::to_string(t));
        }
        long double factor = err > 0 ? 0.9L * std::pow(local_tol / err, 1.0L / 9) : 4.0L;
        h = std::min(hmax, h * std::clamp(factor, 0.2L, 4.0L));
    }
    ClassicalBasis basis(impl);
    double drift = wronskian_drift(basis, 200);
    if (drift > 1e-8)
        impl->warnings.push_back("Wronskian drift " + std::to_string(drift) + " exceeds 1e-8");
    return basis;
}

double wronskian_drift(const ClassicalBasis& basis, int sample_count) {
    if (sample_count < 2) throw ConfigError("wronskian_drift needs at least two samples");
    long double worst = 0;
    for (int i = 0; i < sample_count; ++i) {
        double tau = basis.tau_max() * i / (sample_count - 1);
        worst = std::max(worst, std::abs(basis.wronskian(tau) - 1));
    }
    return static_cast<double>(worst);
}

}  // namespace dosq

#include "dosq/squeeze.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dosq/errors.hpp"

namespace dosq {

SqueezeParam SqueezeParam::from_polar(double r, double theta) {
    if (!(r >= 0) || !std::isfinite(r) || !std::isfinite(theta))
        throw ConfigError("squeeze magnitude must be finite and non-negative");
    SqueezeParam z;
    z.r_ = r;
    z.theta_ = std::fmod(theta, 2 * std::numbers::pi);
    if (z.theta_ < 0) z.theta_ += 2 * std::numbers::pi;
    if (z.theta_ >= 2 * std::numbers::pi) z.theta_ = 0;
    if (r == 0) z.theta_ = 0;
    return z;
}

SqueezeParam SqueezeParam::from_complex(cplx z) { return from_polar(std::abs(z), std::arg(z)); }

BchCoords bch(const SqueezeParam& z) {
    BchCoords b;
    if (z.r() == 0) return b;
    double t = std::tanh(z.r());
    b.gamma_minus = -std::polar(t, -z.theta());
    b.gamma_plus = std::polar(t, z.theta());
    b.gamma_3 = -std::log(std::cosh(z.r()));
    return b;
}

std::string ordering_name(Ordering o) { return o == Ordering::alpha_z ? "alpha_z" : "z_alpha"; }

Ordering ordering_from_name(const std::string& name) {
    if (name == "alpha_z") return Ordering::alpha_z;
    if (name == "z_alpha") return Ordering::z_alpha;
    throw ConfigError("ordering must be alpha_z or z_alpha, got '" + name + "'");
}

namespace {

// Compensated complex accumulator.
struct KahanSum {
    cplx sum{}, carry{};
    void add(cplx v) {
        cplx y = v - carry;
        cplx t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// c_M = P sum_j sqrt(M!) / k! beta^k gp^j / (2^j j!),  k = M - 2j,
// which follows from expanding exp(gp K+) exp(beta J+)|0> with |m> = J+^m |0> / sqrt(m!).
// Terms are formed in log space with the prefactor folded in, so large M neither overflows nor underflows early.
NumberBasisExpansion build(Ordering ordering, cplx alpha, const SqueezeParam& z, int N, cplx beta, cplx log_prefactor,
                           double tol) {
    if (N < 1) throw ConfigError("expansion needs N >= 1");
    if (N > expansion_max_terms) throw CapacityError("expansion size exceeds " + std::to_string(expansion_max_terms));
    const BchCoords g = bch(z);
    NumberBasisExpansion e;
    e.ordering = ordering;
    e.alpha = alpha;
    e.z = z;
    e.N = N;
    e.coefficients.assign(N + 1, 0.0);

    std::vector<double> lfact(N + 1);
    for (int m = 0; m <= N; ++m) lfact[m] = std::lgamma(m + 1.0);
    const double lb = std::log(std::abs(beta)), ab = std::arg(beta);
    const double lg = std::log(std::abs(g.gamma_plus)), ag = std::arg(g.gamma_plus);
    const bool beta_zero = beta == 0.0, gamma_zero = g.gamma_plus == 0.0;

#pragma omp parallel for schedule(dynamic, 16)
    for (int M = 0; M <= N; ++M) {
        KahanSum acc;
        for (int j = 0; 2 * j <= M; ++j) {
            int k = M - 2 * j;
            if ((beta_zero && k > 0) || (gamma_zero && j > 0)) continue;
            double lmag = 0.5 * lfact[M] - lfact[k] - j * std::numbers::ln2 - lfact[j] + log_prefactor.real();
            double phase = log_prefactor.imag();
            if (k > 0) lmag += k * lb, phase += k * ab;
            if (j > 0) lmag += j * lg, phase += j * ag;
            acc.add(std::polar(std::exp(lmag), phase));
        }
        e.coefficients[M] = acc.sum;
    }
    double norm = 0;
    for (const auto& c : e.coefficients) norm += std::norm(c);
    e.tail_bound = std::abs(1 - norm);
    if (e.tail_bound > tol) {
        auto a = expand_adaptive(ordering, alpha, z, tol);
        std::string need = a.tail_bound <= tol ? "N = " + std::to_string(a.N) : "more than " + std::to_string(a.N);
        e.warnings.push_back("expansion tail " + std::to_string(e.tail_bound) + " exceeds " + std::to_string(tol) +
                             "; " + need + " needed");
    }
    return e;
}

cplx beta_of(Ordering o, cplx alpha, const BchCoords& g) {
    if (o == Ordering::alpha_z) return alpha - g.gamma_plus * std::conj(alpha);
    return alpha * std::exp(g.gamma_3);
}

cplx log_prefactor_of(Ordering o, cplx alpha, const BchCoords& g) {
    const double a2 = std::norm(alpha);
    if (o == Ordering::alpha_z)
        // Moving exp(-conj(alpha) J-) through exp(g+ K+) leaves the scalar exp(g+ conj(alpha)^2 / 2).
        return 0.5 * (g.gamma_3 - a2 + g.gamma_plus * std::conj(alpha) * std::conj(alpha));
    return 0.5 * (g.gamma_3 + alpha * alpha * g.gamma_minus - a2);
}

}  // namespace

NumberBasisExpansion expand(Ordering ordering, cplx alpha, const SqueezeParam& z, int N, double tol) {
    BchCoords g = bch(z);
    return build(ordering, alpha, z, N, beta_of(ordering, alpha, g), log_prefactor_of(ordering, alpha, g), tol);
}

NumberBasisExpansion expand_alpha_z(cplx alpha, const SqueezeParam& z, int N, double tol) {
    return expand(Ordering::alpha_z, alpha, z, N, tol);
}

NumberBasisExpansion expand_z_alpha(cplx alpha, const SqueezeParam& z, int N, double tol) {
    return expand(Ordering::z_alpha, alpha, z, N, tol);
}

NumberBasisExpansion expand_adaptive(Ordering ordering, cplx alpha, const SqueezeParam& z, double tol, int n_max) {
    if (!(tol > 0)) throw ConfigError("series tolerance must be positive");
    n_max = std::min(n_max, expansion_max_terms);
    // Coefficients do not depend on N, so one pass at n_max finds the cut.
    NumberBasisExpansion full = expand(ordering, alpha, z, n_max, std::numeric_limits<double>::infinity());
    double norm = 0;
    int cut = n_max;
    for (int m = 0; m <= n_max; ++m) {
        norm += std::norm(full.coefficients[m]);
        if (m >= 1 && std::abs(1 - norm) < tol) {
            cut = m;
            break;
        }
    }
    full.coefficients.resize(cut + 1);
    full.N = cut;
    full.tail_bound = std::abs(1 - norm);
    if (full.tail_bound >= tol)
        full.warnings.push_back("expansion tail " + std::to_string(full.tail_bound) + " still above " +
                                std::to_string(tol) + " at N = " + std::to_string(n_max));
    return full;
}

WavefunctionGrid assemble_wavefunction(const NumberBasisExpansion& e, const std::vector<double>& x, double tau,
                                       const AuxiliaryBundle& bundle) {
    if (!(e.tail_bound < 1e-6))
        throw ConvergenceError("expansion tail " + std::to_string(e.tail_bound) +
                               " too large to assemble a wavefunction (need < 1e-6)");
    return superpose_grid(bundle, e.coefficients, x, tau);
}

}  // namespace dosq

#pragma once

// Per-point arithmetic shared by the serial and OpenMP kernels.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "dosq/kernels.hpp"

namespace dosq::kernels::detail {

// Double-double helpers (Dekker/Knuth). Compiled without FP contraction.
struct DD {
    double hi, lo;
};

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline void split(double a, double& hi, double& lo) {
    double c = 134217729.0 * a;
    hi = c - (c - a);
    lo = a - hi;
}

inline DD two_prod(double a, double b) {
    double p = a * b, ah, al, bh, bl;
    split(a, ah, al);
    split(b, bh, bl);
    return {p, ((ah * bh - p) + ah * bl + al * bh) + al * bl};
}

inline DD from_long(long double v) {
    double hi = static_cast<double>(v);
    return {hi, static_cast<double>(v - hi)};
}

inline DD add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD mul(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

// Phase qa x^2 + qb x + qc reduced to (-pi, pi].
struct PhasePoly {
    DD qa, qb, qc;
    explicit PhasePoly(const PsiRow& r) : qa(from_long(r.qa)), qb(from_long(r.qb)), qc(from_long(r.qc)) {}

    double operator()(double x) const {
        constexpr DD two_pi{6.283185307179586, 2.4492935982947064e-16};
        DD p = add(add(mul(qa, two_prod(x, x)), mul(qb, x)), qc);
        double n = std::nearbyint(p.hi / two_pi.hi);
        if (n != 0.0) p = add(p, mul(two_pi, -n));
        return p.hi + p.lo;
    }
};

constexpr int hermite_table_size = 1100;

struct HermiteTable {
    std::array<double, hermite_table_size> a{}, b{};
    HermiteTable() {
        for (int m = 0; m < hermite_table_size; ++m) {
            a[m] = std::sqrt(2.0 / (m + 1));
            b[m] = std::sqrt(static_cast<double>(m) / (m + 1));
        }
    }
};

inline const HermiteTable& hermite_table() {
    static const HermiteTable t;
    return t;
}

// Normalized Hermite functions h_m(u), m = 0..mmax, by the stable three-term
// recurrence with periodic rescaling so that large m at large |u| survive.
template <class Sink>
inline void hermite_functions(double u, int mmax, Sink&& sink) {
    const auto& t = hermite_table();
    constexpr double big = 1e150, ln_big = 345.38776394910684;
    double log_scale = -0.5 * u * u - 0.25 * std::log(std::numbers::pi);
    double fac = std::exp(log_scale);
    double prev = 0.0, cur = 1.0;
    sink(0, cur * fac);
    for (int m = 0; m < mmax; ++m) {
        double next = t.a[m] * u * cur - t.b[m] * prev;
        prev = cur;
        cur = next;
        if (std::abs(cur) > big) {
            cur /= big;
            prev /= big;
            log_scale += ln_big;
            fac = std::exp(log_scale);
        }
        sink(m + 1, cur * fac);
    }
}

inline cplx psi_point(const PsiRow& row, const PhasePoly& phase, const cplx* w, int nw, double x) {
    double u = static_cast<double>(x * row.inv_sqrt_phi3 - row.b3);
    cplx acc = 0.0;
    hermite_functions(u, nw - 1, [&](int m, double h) { acc += w[m] * h; });
    return row.amp * acc * std::polar(1.0, phase(x));
}

inline void psi_point_multi(const PsiRow& row, const PhasePoly& phase, const cplx* rot, int mmax,
                            double x, cplx* out, std::size_t stride) {
    double u = static_cast<double>(x * row.inv_sqrt_phi3 - row.b3);
    cplx base = row.amp * std::polar(1.0, phase(x));
    hermite_functions(u, mmax, [&](int m, double h) { out[m * stride] = base * rot[m] * h; });
}

inline cplx apply_point(const FieldGrid& in, int it, int ix, const RowCoefficients& c,
                        const Stencil& dx, const Stencil& dxx, const Stencil* dt, double x) {
    const cplx* f = in.row(it);
    cplx v = ((c.c2 * x + c.c1) * x + c.c0) * f[ix];
    if (c.b1 != 0.0 || c.b0 != 0.0) {
        cplx d = 0.0;
        for (std::size_t k = 0; k < dx.offsets.size(); ++k) d += dx.weights[k] * f[ix + dx.offsets[k]];
        v += (c.b1 * x + c.b0) * d;
    }
    if (c.d2 != 0.0) {
        cplx d = 0.0;
        for (std::size_t k = 0; k < dxx.offsets.size(); ++k) d += dxx.weights[k] * f[ix + dxx.offsets[k]];
        v += c.d2 * d;
    }
    if (c.a != 0.0 && dt) {
        cplx d = 0.0;
        for (std::size_t k = 0; k < dt->offsets.size(); ++k) d += dt->weights[k] * in.at(it + dt->offsets[k], ix);
        v += c.a * d;
    }
    return v;
}

inline std::vector<cplx> rotations(const PsiRow& row, int mmax) {
    std::vector<cplx> rot(mmax + 1);
    for (int m = 0; m <= mmax; ++m) rot[m] = std::polar(1.0, -m * row.argxi);
    return rot;
}

}  // namespace dosq::kernels::detail

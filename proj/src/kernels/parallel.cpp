#include <omp.h>

#include "pointwise.hpp"

namespace dosq::kernels::parallel {

namespace {
int block_count(int n) { return (n + reduction_block - 1) / reduction_block; }

// Sums f(i) over [0, n) as ordered block partials.
template <class T, class F>
T blocked_sum(int n, F&& f) {
    const int nb = block_count(n);
    std::vector<T> part(nb, T{});
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nb; ++b) {
        T s{};
        const int end = std::min(n, (b + 1) * reduction_block);
        for (int i = b * reduction_block; i < end; ++i) s += f(i);
        part[b] = s;
    }
    T total{};
    for (const T& p : part) total += p;
    return total;
}
}  // namespace

double sum_abs2(const cplx* v, int n) {
    return blocked_sum<double>(n, [&](int i) { return std::norm(v[i]); });
}

cplx inner(const cplx* a, const cplx* b, int n) {
    return blocked_sum<cplx>(n, [&](int i) { return std::conj(a[i]) * b[i]; });
}

void apply_rows(const FieldGrid& in, const std::vector<int>& rows,
                const std::vector<RowCoefficients>& coeff, const Stencil& dx, const Stencil& dxx,
                const std::vector<Stencil>& dt, int xlo, int xhi, FieldGrid& out) {
    const int nr = static_cast<int>(rows.size());
    const long long total = static_cast<long long>(nr) * (xhi - xlo);
#pragma omp parallel for schedule(static)
    for (long long idx = 0; idx < total; ++idx) {
        const int k = static_cast<int>(idx / (xhi - xlo));
        const int ix = xlo + static_cast<int>(idx % (xhi - xlo));
        const Stencil* st = dt.empty() ? nullptr : &dt[k];
        out.at(rows[k], ix) = detail::apply_point(in, rows[k], ix, coeff[k], dx, dxx, st, in.x()[ix]);
    }
}

ResidualSums residual_sums(const FieldGrid& in, const std::vector<int>& rows,
                           const std::vector<RowCoefficients>& coeff, const Stencil& dx,
                           const Stencil& dxx, const std::vector<Stencil>& dt, int xlo, int xhi) {
    ResidualSums s;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const Stencil* st = dt.empty() ? nullptr : &dt[k];
        const int it = rows[k];
        s += blocked_sum<ResidualSums>(xhi - xlo, [&](int i) {
            const int ix = xlo + i;
            ResidualSums r;
            r.residual_sq = std::norm(detail::apply_point(in, it, ix, coeff[k], dx, dxx, st, in.x()[ix]));
            r.field_sq = std::norm(in.at(it, ix));
            return r;
        });
    }
    return s;
}

void psi_row(const PsiRow& row, const cplx* weights, int nweights, const double* x, int n, cplx* out) {
    detail::PhasePoly phase(row);
    auto w = detail::rotations(row, nweights - 1);
    for (int m = 0; m < nweights; ++m) w[m] *= weights[m];
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) out[i] = detail::psi_point(row, phase, w.data(), nweights, x[i]);
}

void psi_row_multi(const PsiRow& row, int mmax, const double* x, int n, cplx* out) {
    detail::PhasePoly phase(row);
    auto rot = detail::rotations(row, mmax);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) detail::psi_point_multi(row, phase, rot.data(), mmax, x[i], out + i, n);
}

}  // namespace dosq::kernels::parallel

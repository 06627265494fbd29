#include "pointwise.hpp"

namespace dosq::kernels::serial {

double sum_abs2(const cplx* v, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::norm(v[i]);
    return s;
}

cplx inner(const cplx* a, const cplx* b, int n) {
    cplx s = 0.0;
    for (int i = 0; i < n; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

void apply_rows(const FieldGrid& in, const std::vector<int>& rows,
                const std::vector<RowCoefficients>& coeff, const Stencil& dx, const Stencil& dxx,
                const std::vector<Stencil>& dt, int xlo, int xhi, FieldGrid& out) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const Stencil* st = dt.empty() ? nullptr : &dt[k];
        for (int ix = xlo; ix < xhi; ++ix)
            out.at(rows[k], ix) = detail::apply_point(in, rows[k], ix, coeff[k], dx, dxx, st, in.x()[ix]);
    }
}

ResidualSums residual_sums(const FieldGrid& in, const std::vector<int>& rows,
                           const std::vector<RowCoefficients>& coeff, const Stencil& dx,
                           const Stencil& dxx, const std::vector<Stencil>& dt, int xlo, int xhi) {
    ResidualSums s;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const Stencil* st = dt.empty() ? nullptr : &dt[k];
        for (int ix = xlo; ix < xhi; ++ix) {
            s.residual_sq += std::norm(detail::apply_point(in, rows[k], ix, coeff[k], dx, dxx, st, in.x()[ix]));
            s.field_sq += std::norm(in.at(rows[k], ix));
        }
    }
    return s;
}

void psi_row(const PsiRow& row, const cplx* weights, int nweights, const double* x, int n, cplx* out) {
    detail::PhasePoly phase(row);
    auto w = detail::rotations(row, nweights - 1);
    for (int m = 0; m < nweights; ++m) w[m] *= weights[m];
    for (int i = 0; i < n; ++i) out[i] = detail::psi_point(row, phase, w.data(), nweights, x[i]);
}

void psi_row_multi(const PsiRow& row, int mmax, const double* x, int n, cplx* out) {
    detail::PhasePoly phase(row);
    auto rot = detail::rotations(row, mmax);
    for (int i = 0; i < n; ++i) detail::psi_point_multi(row, phase, rot.data(), mmax, x[i], out + i, n);
}

}  // namespace dosq::kernels::serial

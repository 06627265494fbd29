#pragma once

#include <complex>
#include <vector>

#include "dosq/field_grid.hpp"
#include "dosq/potential.hpp"
#include "dosq/stencil.hpp"

// Grid kernels. Each kernel has a plain serial reference and an OpenMP
// version with the same signature. Parallel reductions sum fixed-size blocks
// in index order, so results do not depend on the thread count.
namespace dosq::kernels {

// Coefficients of d2 f_xx + a f_tau + (b1 x + b0) f_x + (c2 x^2 + c1 x + c0) f at one tau row.
struct RowCoefficients {
    cplx d2{}, a{}, b1{}, b0{}, c2{}, c1{}, c0{};
};

// Everything needed to evaluate number states on one tau row:
//   Psi_m(x) = amp * h_m(u) * exp(i (qa x^2 + qb x + qc - m argxi)),  u = x * inv_sqrt_phi3 - b3,
// with h_m the normalized Hermite function. qa and qb multiply large x, so
// they are kept in extended precision and the phase is summed in double-double.
struct PsiRow {
    long double qa = 0, qb = 0, qc = 0;
    long double inv_sqrt_phi3 = 1, b3 = 0;
    double argxi = 0;
    double amp = 1;
};

constexpr int reduction_block = 4096;

namespace serial {
double sum_abs2(const cplx* v, int n);
cplx inner(const cplx* a, const cplx* b, int n);
// Writes out.at(rows[k], ix) for ix in [xlo, xhi). dx/dxx may be empty when unused;
// dt[k] is the tau stencil of rows[k] (ignored when a == 0).
void apply_rows(const FieldGrid& in, const std::vector<int>& rows,
                const std::vector<RowCoefficients>& coeff, const Stencil& dx, const Stencil& dxx,
                const std::vector<Stencil>& dt, int xlo, int xhi, FieldGrid& out);
ResidualSums residual_sums(const FieldGrid& in, const std::vector<int>& rows,
                           const std::vector<RowCoefficients>& coeff, const Stencil& dx,
                           const Stencil& dxx, const std::vector<Stencil>& dt, int xlo, int xhi);
// out[i] = sum_m weights[m] Psi_m(x[i]) with the m-dependent phase folded in.
void psi_row(const PsiRow& row, const cplx* weights, int nweights, const double* x, int n, cplx* out);
// out[m * n + i] = Psi_m(x[i]) for m = 0..mmax.
void psi_row_multi(const PsiRow& row, int mmax, const double* x, int n, cplx* out);
}  // namespace serial

namespace parallel {
double sum_abs2(const cplx* v, int n);
cplx inner(const cplx* a, const cplx* b, int n);
void apply_rows(const FieldGrid& in, const std::vector<int>& rows,
                const std::vector<RowCoefficients>& coeff, const Stencil& dx, const Stencil& dxx,
                const std::vector<Stencil>& dt, int xlo, int xhi, FieldGrid& out);
ResidualSums residual_sums(const FieldGrid& in, const std::vector<int>& rows,
                           const std::vector<RowCoefficients>& coeff, const Stencil& dx,
                           const Stencil& dxx, const std::vector<Stencil>& dt, int xlo, int xhi);
void psi_row(const PsiRow& row, const cplx* weights, int nweights, const double* x, int n, cplx* out);
void psi_row_multi(const PsiRow& row, int mmax, const double* x, int n, cplx* out);
}  // namespace parallel

}  // namespace dosq::kernels

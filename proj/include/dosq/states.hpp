#pragma once

#include <complex>
#include <vector>

#include "dosq/auxiliary.hpp"
#include "dosq/field_grid.hpp"
#include "dosq/kernels.hpp"

namespace dosq {

constexpr int hermite_default_capacity = 512;
constexpr int number_state_capacity = 1024;

struct SeparableCoords {
    double zeta = 0;  // x / sqrt(phi3) - B3
    double eta = 0;   // tau
};

SeparableCoords separable_coords(const AuxiliaryBundle& bundle, double x, double tau);

// Physicists' Hermite polynomial by the three-term recurrence.
double hermite(int m, double u, int capacity = hermite_default_capacity);
// H_m(u) exp(-u^2/2) / sqrt(2^m m! sqrt(pi)), stable for large m and |u|.
double hermite_function(int m, double u);

// The phase factor R(x, tau) of the separated solution.
double r_factor(double x, double tau, const AuxiliaryBundle& bundle, const ClassicalBasis& basis);

class NumberState {
public:
    NumberState(int m, AuxiliaryBundle bundle);
    int m() const { return m_; }
    const AuxiliaryBundle& bundle() const { return bundle_; }
    const ClassicalBasis& basis() const { return bundle_.basis(); }

private:
    int m_;
    AuxiliaryBundle bundle_;
};

// Per-row constants for the kernels, assembled from R, the Gaussian exponent
// and the tau-dependent factor.
kernels::PsiRow psi_row_parameters(const AuxiliaryBundle& bundle, double tau);

std::complex<double> psi_m(const NumberState& state, double x, double tau);

struct WavefunctionGrid {
    std::vector<double> x;
    double tau = 0;
    std::vector<std::complex<double>> values;

    void validate() const;
    // Trapezoid integrals of |psi|^2, x |psi|^2 and x^2 |psi|^2.
    double norm() const;
    double mean_x() const;
    double variance_x() const;
};

WavefunctionGrid psi_m_grid(const NumberState& state, const std::vector<double>& x, double tau);
// sum_m coeffs[m] Psi_m on the grid.
WavefunctionGrid superpose_grid(const AuxiliaryBundle& bundle, const std::vector<std::complex<double>>& coeffs,
                                const std::vector<double>& x, double tau);

// Psi_m sampled on a space-time grid.
FieldGrid psi_field(const NumberState& state, const UniformAxis& x, const UniformAxis& tau);
// Psi_0 .. Psi_mmax on the same grid in one pass.
std::vector<FieldGrid> psi_fields(const AuxiliaryBundle& bundle, int mmax, const UniformAxis& x,
                                  const UniformAxis& tau);

// Schroedinger residual of Psi_0..Psi_mmax at one tau over the window
// |u| <= half_width_u, streamed through x-chunks so fine grids fit in memory.
struct StreamedResidualPlan {
    double h = 1e-3;            // x step
    double k = 1e-3;            // tau step
    int x_order = 2;
    int tau_order = 2;
    double half_width_u = 8.0;  // window half-width in units of sqrt(phi3)
    int chunk = 1 << 16;
};
// Steps and orders that keep the residual of Psi_0..Psi_6 near round-off at tau.
StreamedResidualPlan default_residual_plan(const AuxiliaryBundle& bundle, double tau);

std::vector<double> number_state_residuals(const AuxiliaryBundle& bundle, int mmax, double tau,
                                           const StreamedResidualPlan& plan);

// Trapezoid norms and overlaps of Psi_0..Psi_mmax at one tau on a grid of
// `points` covering |u| <= sqrt(2 mmax + 1) + 10.
struct NumberStateQuality {
    double max_norm_error = 0;  // max_m | <m|m> - 1 |
    double max_overlap = 0;     // max_{m != n} | <m|n> |
};
NumberStateQuality number_state_quality(const AuxiliaryBundle& bundle, int mmax, double tau, int points = 4001);

}  // namespace dosq

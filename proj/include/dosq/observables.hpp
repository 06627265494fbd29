#pragma once

#include <complex>
#include <vector>

#include "dosq/auxiliary.hpp"
#include "dosq/squeeze.hpp"

namespace dosq {

// x(tau) in the Heisenberg picture, conjugated by D(alpha)S(z), splits into
// X_- J_- + X_+ J_+ + X_0 (alpha,z) or X_- J_- + X_+ J_+ + Y_0 (z,alpha).
// The dotted fields are the corresponding coefficients of p.
struct LadderCoefficients {
    cplx X_minus, X_plus, X_0, Y_0;
    cplx X_minus_dot, X_plus_dot, X_0_dot, Y_0_dot;
};

LadderCoefficients ladder_coefficients(const AuxiliaryBundle& bundle, cplx alpha, const SqueezeParam& z, double tau);

double mean_x(const AuxiliaryBundle& bundle, cplx alpha, const SqueezeParam& z, Ordering ordering, double tau);
double mean_p(const AuxiliaryBundle& bundle, cplx alpha, const SqueezeParam& z, Ordering ordering, double tau);

// Means written directly in terms of (x0, p0) and the basis, independent of alpha.
struct Means {
    double x = 0, p = 0;
};
Means mean_from_initial(const AuxiliaryBundle& bundle, double x0, double p0, double tau);

cplx alpha_from_initial(double x0, double p0, const AuxiliaryBundle& bundle);
cplx alpha_from_initial_z_alpha(double x0, double p0, const SqueezeParam& z, const AuxiliaryBundle& bundle);
cplx alpha_for(Ordering ordering, double x0, double p0, const SqueezeParam& z, const AuxiliaryBundle& bundle);

struct Uncertainties {
    double delta_x = 0, delta_p = 0, product = 0;
    // Squared product by the expanded complex and real-function forms.
    double product_sq_complex = 0, product_sq_real = 0;
};

// Throws NumericError if a variance comes out below -1e-12.
Uncertainties uncertainties(const AuxiliaryBundle& bundle, const SqueezeParam& z, double tau);

struct TrajectoryRecord {
    double tau = 0, mean_x = 0, mean_p = 0, delta_x = 0, delta_p = 0, product = 0;
};

std::vector<TrajectoryRecord> trajectory(const AuxiliaryBundle& bundle, cplx alpha, const SqueezeParam& z,
                                         Ordering ordering, const std::vector<double>& taus);
std::vector<TrajectoryRecord> trajectory(const AuxiliaryBundle& bundle, double x0, double p0, const SqueezeParam& z,
                                         Ordering ordering, const std::vector<double>& taus);

// n equally spaced points on [0, tau_max]; n = 1 gives {0}.
std::vector<double> tau_grid(double tau_max, int n);

}  // namespace dosq

#pragma once

#include <complex>
#include <memory>

#include "dosq/classical.hpp"
#include "dosq/potential.hpp"

namespace dosq {

// Every auxiliary function at one tau, with first derivatives (and second for
// the phi's) from the chain rule through xi' and the basis equation.
struct AuxPoint {
    double tau = 0;
    double g2 = 0, g1 = 0, g0 = 0;
    cplx xi, xi_dot, xi_ddot;
    cplx c, C;
    cplx phi1, phi2, phi1_dot, phi2_dot, phi1_ddot, phi2_ddot;
    double phi3 = 0, phi3_dot = 0, phi3_ddot = 0;
    cplx E1, E2, E1_dot, E2_dot;
    double E3 = 0, E3_dot = 0;
    cplx D1, D2;
    double D3 = 0;
    double b3 = 0, b3_dot = 0, B3 = 0;
    double G0 = 0, Lambda3 = 0;
    double argxi = 0;  // continuous argument of xi, unwrapped from tau = 0
};

// The subset needed for the wavefunction phase, in extended precision.
struct PhaseGeometry {
    long double phi3, phi3_dot, E3, b3, B3;
};

class AuxiliaryBundle {
public:
    AuxPoint at(double tau) const;
    PhaseGeometry geometry(double tau) const;

    cplx C(double tau) const;
    double Lambda3(double tau) const;
    double G0(double tau) const;
    double argxi(double tau) const;

    // Initial values and the constants theta1 = phi3'(0)/2, theta2 = E3(0)/sqrt(phi3(0)).
    long double phi3_zero() const;
    long double phi3_dot_zero() const;
    long double E3_zero() const;
    long double b3_zero() const;
    double theta1() const;
    double theta2() const;

    // Oracle path: B3 as the integral of E3/phi3^{3/2}, by brute-force adaptive quadrature.
    double B3_by_quadrature(double tau, double tol) const;

    const ClassicalBasis& basis() const;
    const PotentialSpec& spec() const;
    double tau_max() const;
    double quad_tol() const;

    struct Impl;
    explicit AuxiliaryBundle(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

private:
    std::shared_ptr<const Impl> impl_;
};

AuxiliaryBundle build_bundle(const ClassicalBasis& basis, const PotentialSpec& spec,
                             double quad_tol = 1e-12);

// Residuals at tau of the four identities tying the auxiliary functions together:
//   I    phi3'/2 b3 + E3/sqrt(phi3) = i sqrt(phi3)(xi' Cbar - xibar' C)
//   II   phi3''/phi3 - phi3'^2/(2 phi3^2) = -4 g2 + 2/phi3^2
//   III  2 E3'/phi3 - phi3' E3/phi3^2 = -2 g1 - 2 b3/phi3^{3/2}
//   IV   B3(tau) = b3(tau) - b3(0), against the integral of E3/phi3^{3/2}
double check_formula_I(const AuxiliaryBundle& bundle, const ClassicalBasis& basis, double tau);
double check_formula_II(const AuxiliaryBundle& bundle, const ClassicalBasis& basis,
                        const PotentialSpec& spec, double tau);
double check_formula_III(const AuxiliaryBundle& bundle, const ClassicalBasis& basis,
                         const PotentialSpec& spec, double tau);
double check_formula_IV(const AuxiliaryBundle& bundle, double tau, double quad_tol);

// Formula I broken into its parts. `first_form` compares
// phi3'/2 b3 + E3/sqrt(phi3) with i sqrt(phi3)(xi' Cbar - xibar' C); `derivative_form`
// compares phi3 b3' with E3/sqrt(phi3); `closing_line` is the residual of
// phi3'/2 b3 + phi3 b3' = i/sqrt(phi3), which cannot hold (the left side is
// real) and is kept only as a diagnostic.
struct FormulaIParts {
    double first_form = 0, derivative_form = 0, closing_line = 0;
};
FormulaIParts formula_I_parts(const AuxiliaryBundle& bundle, const ClassicalBasis& basis, double tau);

}  // namespace dosq

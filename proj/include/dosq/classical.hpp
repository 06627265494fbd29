#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "dosq/potential.hpp"

namespace dosq {

using lcplx = std::complex<long double>;

// (chi1(0), chi1'(0), chi2(0), chi2'(0)); the basis requires unit Wronskian.
struct InitialData {
    long double chi1 = 1, chi1_dot = 0, chi2 = 0, chi2_dot = 1;

    long double wronskian() const { return chi1 * chi2_dot - chi1_dot * chi2; }
    static InitialData scaled(long double s) { return {s, 0, 0, 1 / s}; }
};

// Default data for a spec: (s, 0, 0, 1/s) with s = 1/sqrt(omega) for the
// oscillator presets (phi3 constant) and s = 1 otherwise.
InitialData default_initial_data(const PotentialSpec& spec);

struct BasisSample {
    long double chi1, chi1_dot, chi2, chi2_dot;
};

enum class BasisMode {
    automatic,  // closed form when g2 is constant, otherwise integrate
    integrate,  // always integrate (used to cross-check the closed forms)
};

class ClassicalBasis {
public:
    BasisSample sample(double tau) const;
    lcplx xi_l(double tau) const;
    lcplx xi_dot_l(double tau) const;
    std::complex<double> xi(double tau) const { return std::complex<double>(xi_l(tau)); }
    std::complex<double> xi_dot(double tau) const { return std::complex<double>(xi_dot_l(tau)); }
    // From the basis equation: xi'' = -2 g2 xi.
    std::complex<double> xi_ddot(double tau) const;
    long double wronskian(double tau) const;
    long double phi3_l(double tau) const;

    double tau_max() const;
    const InitialData& initial_data() const;
    const PotentialSpec& spec() const;
    bool integrated() const;
    std::size_t step_count() const;
    // Node times of the integrator (empty for closed forms).
    const std::vector<double>& nodes() const;
    const std::vector<std::string>& warnings() const;

    struct Impl;
    explicit ClassicalBasis(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

private:
    std::shared_ptr<const Impl> impl_;
};

ClassicalBasis solve_basis(const PotentialSpec& spec, const InitialData& init, double tau_max,
                           double tol = 1e-10, BasisMode mode = BasisMode::automatic);

// max |W - 1| over `sample_count` equally spaced tau in the domain.
double wronskian_drift(const ClassicalBasis& basis, int sample_count);

}  // namespace dosq

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "dosq/auxiliary.hpp"
#include "dosq/states.hpp"

namespace dosq {

struct DisplacementParam {
    cplx alpha{};
    double magnitude() const { return std::abs(alpha); }
    double delta() const { return std::arg(alpha); }
    static DisplacementParam from_polar(double magnitude, double delta) { return {std::polar(magnitude, delta)}; }
};

// z = r e^{i theta} with r >= 0 and theta in [0, 2 pi).
class SqueezeParam {
public:
    SqueezeParam() = default;
    static SqueezeParam from_polar(double r, double theta);
    static SqueezeParam from_complex(cplx z);
    double r() const { return r_; }
    double theta() const { return theta_; }
    cplx z() const { return std::polar(r_, theta_); }

private:
    double r_ = 0, theta_ = 0;
};

// Disentangled coordinates S(z) = exp(g+ K+) exp(g3 K3) exp(g- K-).
struct BchCoords {
    cplx gamma_minus{}, gamma_plus{};
    double gamma_3 = 0;
};

BchCoords bch(const SqueezeParam& z);

enum class Ordering { alpha_z, z_alpha };
std::string ordering_name(Ordering o);
Ordering ordering_from_name(const std::string& name);

struct NumberBasisExpansion {
    Ordering ordering = Ordering::alpha_z;
    cplx alpha{};
    SqueezeParam z;
    int N = 0;                       // highest index kept
    std::vector<cplx> coefficients;  // size N + 1
    double tail_bound = 0;           // |1 - sum |c_m|^2|
    std::vector<std::string> warnings;
};

// Truncated number-basis coefficients of D(alpha)S(z)|0> and S(z)D(alpha)|0>.
// A warning naming the index needed is attached when tail_bound exceeds tol.
NumberBasisExpansion expand_alpha_z(cplx alpha, const SqueezeParam& z, int N, double tol = 1e-6);
NumberBasisExpansion expand_z_alpha(cplx alpha, const SqueezeParam& z, int N, double tol = 1e-6);
NumberBasisExpansion expand(Ordering ordering, cplx alpha, const SqueezeParam& z, int N, double tol = 1e-6);

constexpr int expansion_max_terms = 1024;
// Grows N until tail_bound < tol or N reaches n_max.
NumberBasisExpansion expand_adaptive(Ordering ordering, cplx alpha, const SqueezeParam& z, double tol,
                                     int n_max = expansion_max_terms);

// sum_m c_m Psi_m(x, tau); refuses expansions whose tail is 1e-6 or more.
WavefunctionGrid assemble_wavefunction(const NumberBasisExpansion& expansion, const std::vector<double>& x,
                                       double tau, const AuxiliaryBundle& bundle);

}  // namespace dosq

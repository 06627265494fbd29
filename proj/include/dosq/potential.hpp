#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace dosq {

using cplx = std::complex<double>;

// A real coefficient g(tau): either a constant or a piecewise polynomial
// in absolute tau. At an interior breakpoint the right-hand piece is used.
class CoefficientFunction {
public:
    CoefficientFunction() = default;
    static CoefficientFunction constant(double value);
    // pieces[i] holds ascending-power coefficients on [breakpoints[i], breakpoints[i+1]).
    static CoefficientFunction piecewise(std::vector<double> breakpoints,
                                         std::vector<std::vector<double>> pieces);

    double operator()(double tau) const;
    bool is_constant() const { return breakpoints_.empty(); }
    bool is_zero() const { return is_constant() && value_ == 0.0; }
    double constant_value() const { return value_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<std::vector<double>>& pieces() const { return pieces_; }
    // Upper bound of |g| over [a, b], used for step-size heuristics.
    double max_abs(double a, double b) const;

private:
    double value_ = 0.0;
    std::vector<double> breakpoints_;
    std::vector<std::vector<double>> pieces_;
};

enum class PresetKind { free, harmonic, repulsive, linear, driven, custom };

struct Preset {
    PresetKind kind = PresetKind::free;
    double omega = 1.0;
    double force = 0.0;
};

std::string preset_name(PresetKind kind);
PresetKind preset_from_name(const std::string& name);

struct PotentialSpec {
    CoefficientFunction g2;
    CoefficientFunction g1;
    CoefficientFunction g0;
    cplx c_zero{0.0, 0.0};
    std::optional<Preset> preset;

    static PotentialSpec free_particle();
    static PotentialSpec harmonic(double omega);
    static PotentialSpec repulsive(double omega);
    static PotentialSpec linear(double force);
    static PotentialSpec driven(double omega, double force);
    static PotentialSpec from_preset(const Preset& preset);
    static PotentialSpec custom(CoefficientFunction g2, CoefficientFunction g1,
                                CoefficientFunction g0);

    // Breakpoints of all three coefficients, merged and sorted.
    std::vector<double> breakpoints() const;
};

double evaluate_potential(const PotentialSpec& spec, double x, double tau);

class FieldGrid;

struct ResidualOptions {
    int x_order = 2;    // accuracy order of the d/dx stencils (even)
    int tau_order = 2;  // accuracy order of the d/dtau stencils (even)
    // Rows at which the residual is evaluated; empty means every row whose
    // centred tau stencil fits. Rows too close to the edge use a shifted window.
    std::vector<int> rows;
};

// Partial sums so that large grids can be processed in x-chunks.
struct ResidualSums {
    double residual_sq = 0.0;
    double field_sq = 0.0;
    ResidualSums& operator+=(const ResidualSums& o) {
        residual_sq += o.residual_sq;
        field_sq += o.field_sq;
        return *this;
    }
    double ratio() const;
};

// || (d_xx + 2i d_tau - 2V) psi || / || psi || over the valid interior.
double schroedinger_residual(const FieldGrid& field, const PotentialSpec& spec,
                             const ResidualOptions& options = {});
ResidualSums schroedinger_residual_sums(const FieldGrid& field, const PotentialSpec& spec,
                                        const ResidualOptions& options);

}  // namespace dosq

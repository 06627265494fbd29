#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dosq/auxiliary.hpp"
#include "dosq/field_grid.hpp"
#include "dosq/kernels.hpp"

namespace dosq {

// Space-time operators realized on grids. Schroedinger is d_xx + 2i d_tau - 2V;
// Phi3 multiplies by phi3(tau).
enum class GeneratorKind { J_minus, J_plus, Identity, M_minus, M_plus, M_3, Schroedinger, Phi3 };

std::string generator_name(GeneratorKind kind);

// Linear combination of operator products. A product {A, B, C} acts as A(B(C f)).
struct OperatorTerm {
    cplx coeff{1.0, 0.0};
    std::vector<GeneratorKind> factors;
};

class OperatorExpr {
public:
    OperatorExpr() = default;
    OperatorExpr(GeneratorKind g) : terms_{{cplx{1.0, 0.0}, {g}}} {}
    static OperatorExpr zero() { return {}; }
    static OperatorExpr scalar(cplx s) { OperatorExpr e; e.terms_.push_back({s, {}}); return e; }

    const std::vector<OperatorTerm>& terms() const { return terms_; }
    OperatorExpr& operator+=(const OperatorExpr& o);
    OperatorExpr& operator-=(const OperatorExpr& o);
    friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
    friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
    friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b);
    friend OperatorExpr operator*(cplx s, OperatorExpr a);

private:
    std::vector<OperatorTerm> terms_;
};

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b);
// K_- = J_-^2 / 2, K_+ = J_+^2 / 2, K_3 = J_+ J_- + 1/2.
OperatorExpr K_minus();
OperatorExpr K_plus();
OperatorExpr K_3();

// Auxiliary values cached for every tau row of a grid shape.
class GridContext {
public:
    GridContext(const AuxiliaryBundle& bundle, const PotentialSpec& spec, const UniformAxis& tau, int order = 2);
    const AuxiliaryBundle& bundle() const { return bundle_; }
    const PotentialSpec& spec() const { return spec_; }
    const UniformAxis& tau() const { return tau_; }
    int order() const { return order_; }
    kernels::RowCoefficients coefficients(GeneratorKind kind, int row) const;

private:
    AuxiliaryBundle bundle_;
    PotentialSpec spec_;
    UniformAxis tau_;
    int order_;
    std::vector<AuxPoint> rows_;
};

FieldGrid apply(GeneratorKind kind, const FieldGrid& field, const GridContext& ctx);
FieldGrid apply(const OperatorExpr& expr, const FieldGrid& field, const GridContext& ctx);
FieldGrid apply_generator(GeneratorKind kind, const FieldGrid& field, const ClassicalBasis& basis,
                          const AuxiliaryBundle& bundle, const PotentialSpec& spec);

// ||(lhs - rhs) f|| / ||f|| over the valid window of the result.
double relation_residual(const OperatorExpr& lhs, const OperatorExpr& rhs, const FieldGrid& field,
                         const GridContext& ctx);
double commutator_residual(GeneratorKind a, GeneratorKind b, const OperatorExpr& expected,
                           const FieldGrid& field, const GridContext& ctx);
// || M3 Psi_m - (m + 1/2) Psi_m || / || Psi_m ||
double m3_eigenvalue_residual(int m, const FieldGrid& psi, const GridContext& ctx);
// || (M3 - phi3 S / 2 - J_+ J_- - 1/2) f || / || f ||
double m3_decomposition_residual(const FieldGrid& field, const GridContext& ctx);

// Sampled test fields that can be regenerated at any resolution.
struct TestField {
    std::string name;
    std::function<FieldGrid(const UniformAxis& x, const UniformAxis& tau)> sample;
    double center = 0;      // x-centre at the first tau row
    double half_width = 1;  // x half-width that holds the field
};

// Gaussian packet exp(-(x - c)^2 / (2 w^2) + i k x + i q tau).
TestField gaussian_field(double c, double w, double k, double q);
TestField number_state_field(const AuxiliaryBundle& bundle, int m, double tau0);

struct Relation {
    std::string name;
    OperatorExpr lhs, rhs;
    double tolerance;
    bool diagnostic = false;  // alternate reading reported for reference only
};

// The full relation battery: Heisenberg-Weyl, su(1,1) of the M's and K's,
// the mixed relations, and the decomposition of M3.
std::vector<Relation> algebra_relations();

struct ConvergenceResult {
    double coarse = 0, fine = 0, order = 0;
    bool exact = false;  // residual at round-off on both grids; order not measurable
};

struct GridSpec {
    double h = 0.004, k = 0.004;
    int tau_points = 9;
    double tau0 = 0.5;
};

// Residual of `rel` on `field` at (h, k) and (h/2, k/2).
ConvergenceResult relation_convergence(const Relation& rel, const TestField& field,
                                       const AuxiliaryBundle& bundle, const PotentialSpec& spec,
                                       const GridSpec& grid);

// Ladder action on number states: || J_- Psi_m - sqrt(m) Psi_{m-1} || or
// || J_+ Psi_m - sqrt(m+1) Psi_{m+1} ||, relative to || Psi_m ||, on two grids.
// For m = 0 and J_- this is the extremal condition J_- Psi_0 = 0.
ConvergenceResult ladder_convergence(GeneratorKind ladder, int m, const AuxiliaryBundle& bundle,
                                     const PotentialSpec& spec, const GridSpec& grid);

}  // namespace dosq

#include "dosq/potential.hpp"

#include <algorithm>
#include <cmath>

#include "dosq/errors.hpp"
#include "dosq/field_grid.hpp"
#include "dosq/kernels.hpp"
#include "dosq/stencil.hpp"

namespace dosq {

CoefficientFunction CoefficientFunction::constant(double value) {
    if (!std::isfinite(value)) throw ConfigError("coefficient must be finite");
    CoefficientFunction f;
    f.value_ = value;
    return f;
}

CoefficientFunction CoefficientFunction::piecewise(std::vector<double> breakpoints,
                                                   std::vector<std::vector<double>> pieces) {
    if (breakpoints.size() < 2) throw ConfigError("piecewise coefficient needs at least two breakpoints");
    if (pieces.size() != breakpoints.size() - 1)
        throw ConfigError("piecewise coefficient needs one polynomial per interval");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i] > breakpoints[i - 1]))
            throw ConfigError("piecewise breakpoints must be strictly ascending");
    for (auto& p : pieces) {
        if (p.empty()) p.push_back(0.0);
        for (double c : p)
            if (!std::isfinite(c)) throw ConfigError("piecewise coefficients must be finite");
    }
    CoefficientFunction f;
    f.breakpoints_ = std::move(breakpoints);
    f.pieces_ = std::move(pieces);
    return f;
}

double CoefficientFunction::operator()(double tau) const {
    if (is_constant()) return value_;
    if (tau < breakpoints_.front() || tau > breakpoints_.back())
        throw RangeError("tau = " + std::to_string(tau) + " outside coefficient domain [" +
                         std::to_string(breakpoints_.front()) + ", " +
                         std::to_string(breakpoints_.back()) + "]");
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), tau);
    std::size_t piece = std::min<std::size_t>(it - breakpoints_.begin() - 1, pieces_.size() - 1);
    const auto& c = pieces_[piece];
    double acc = 0.0;
    for (auto k = c.rbegin(); k != c.rend(); ++k) acc = acc * tau + *k;
    return acc;
}

double CoefficientFunction::max_abs(double a, double b) const {
    if (is_constant()) return std::abs(value_);
    double lo = std::max(a, breakpoints_.front()), hi = std::min(b, breakpoints_.back());
    double m = 0.0;
    const int n = 256;
    for (int i = 0; i <= n; ++i) m = std::max(m, std::abs((*this)(lo + (hi - lo) * i / n)));
    return m;
}

std::string preset_name(PresetKind kind) {
    switch (kind) {
        case PresetKind::free: return "free";
        case PresetKind::harmonic: return "harmonic";
        case PresetKind::repulsive: return "repulsive";
        case PresetKind::linear: return "linear";
        case PresetKind::driven: return "driven";
        case PresetKind::custom: return "custom";
    }
    return "custom";
}

PresetKind preset_from_name(const std::string& name) {
    for (auto k : {PresetKind::free, PresetKind::harmonic, PresetKind::repulsive,
                   PresetKind::linear, PresetKind::driven, PresetKind::custom})
        if (preset_name(k) == name) return k;
    throw ConfigError("unknown preset '" + name + "'");
}

namespace {
void check_omega(double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw ConfigError("omega must be positive");
}
}  // namespace

PotentialSpec PotentialSpec::free_particle() {
    PotentialSpec s;
    s.g2 = s.g1 = s.g0 = CoefficientFunction::constant(0.0);
    s.preset = Preset{PresetKind::free, 0.0, 0.0};
    return s;
}

PotentialSpec PotentialSpec::harmonic(double omega) {
    check_omega(omega);
    auto s = free_particle();
    s.g2 = CoefficientFunction::constant(0.5 * omega * omega);
    s.preset = Preset{PresetKind::harmonic, omega, 0.0};
    return s;
}

PotentialSpec PotentialSpec::repulsive(double omega) {
    check_omega(omega);
    auto s = free_particle();
    s.g2 = CoefficientFunction::constant(-0.5 * omega * omega);
    s.preset = Preset{PresetKind::repulsive, omega, 0.0};
    return s;
}

PotentialSpec PotentialSpec::linear(double force) {
    auto s = free_particle();
    s.g1 = CoefficientFunction::constant(force);
    s.preset = Preset{PresetKind::linear, 0.0, force};
    return s;
}

PotentialSpec PotentialSpec::driven(double omega, double force) {
    auto s = harmonic(omega);
    s.g1 = CoefficientFunction::constant(force);
    s.preset = Preset{PresetKind::driven, omega, force};
    return s;
}

PotentialSpec PotentialSpec::from_preset(const Preset& p) {
    switch (p.kind) {
        case PresetKind::free: return free_particle();
        case PresetKind::harmonic: return harmonic(p.omega);
        case PresetKind::repulsive: return repulsive(p.omega);
        case PresetKind::linear: return linear(p.force);
        case PresetKind::driven: return driven(p.omega, p.force);
        case PresetKind::custom: break;
    }
    throw ConfigError("custom potentials need explicit coefficient tables");
}

PotentialSpec PotentialSpec::custom(CoefficientFunction g2, CoefficientFunction g1,
                                    CoefficientFunction g0) {
    PotentialSpec s;
    s.g2 = std::move(g2);
    s.g1 = std::move(g1);
    s.g0 = std::move(g0);
    s.preset = Preset{PresetKind::custom, 0.0, 0.0};
    return s;
}

std::vector<double> PotentialSpec::breakpoints() const {
    std::vector<double> out;
    for (const auto* g : {&g2, &g1, &g0})
        out.insert(out.end(), g->breakpoints().begin(), g->breakpoints().end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double evaluate_potential(const PotentialSpec& spec, double x, double tau) {
    return spec.g2(tau) * x * x + spec.g1(tau) * x + spec.g0(tau);
}

double ResidualSums::ratio() const {
    if (!(field_sq > 0.0)) throw NumericError("residual requested for a field that vanishes on the grid");
    return std::sqrt(residual_sq / field_sq);
}

ResidualSums schroedinger_residual_sums(const FieldGrid& field, const PotentialSpec& spec,
                                        const ResidualOptions& opt) {
    if (field.nx() < 5 || field.nt() < 5)
        throw ConfigError("Schroedinger residual needs at least 5 points per axis");
    if (opt.x_order < 2 || opt.x_order % 2 || opt.tau_order < 2 || opt.tau_order % 2)
        throw ConfigError("stencil orders must be even and at least 2");
    const int mx = opt.x_order / 2;
    if (field.nx() < 2 * mx + 1 || field.nt() < opt.tau_order + 1)
        throw ConfigError("grid too small for the requested stencil order");

    std::vector<int> rows = opt.rows;
    const int mt = opt.tau_order / 2;
    if (rows.empty())
        for (int it = mt; it < field.nt() - mt; ++it) rows.push_back(it);

    Stencil dxx = central_stencil(2, opt.x_order, field.x().step);
    std::vector<Stencil> dt;
    std::vector<kernels::RowCoefficients> coeff;
    for (int it : rows) {
        if (it < 0 || it >= field.nt()) throw ConfigError("residual row outside the grid");
        dt.push_back(window_stencil(1, opt.tau_order, field.tau().step, it, 0, field.nt()));
        double tau = field.tau()[it];
        kernels::RowCoefficients c;
        c.d2 = 1.0;
        c.a = {0.0, 2.0};
        c.c2 = -2.0 * spec.g2(tau);
        c.c1 = -2.0 * spec.g1(tau);
        c.c0 = -2.0 * spec.g0(tau);
        coeff.push_back(c);
    }
    return kernels::parallel::residual_sums(field, rows, coeff, Stencil{}, dxx, dt,
                                            field.x_lo + mx, field.x_hi - mx);
}

double schroedinger_residual(const FieldGrid& field, const PotentialSpec& spec,
                             const ResidualOptions& options) {
    return schroedinger_residual_sums(field, spec, options).ratio();
}

}  // namespace dosq

#include "dosq/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "dosq/errors.hpp"
#include "dosq/states.hpp"
#include "dosq/stencil.hpp"

namespace dosq {

namespace {
constexpr cplx I{0.0, 1.0};

bool needs_dx(GeneratorKind k) {
    return k != GeneratorKind::Identity && k != GeneratorKind::Phi3;
}
bool needs_dt(GeneratorKind k) {
    return k == GeneratorKind::M_minus || k == GeneratorKind::M_plus || k == GeneratorKind::M_3 ||
           k == GeneratorKind::Schroedinger;
}

// Coefficients of i[phi d_tau + (phi' x / 2 + E) d_x - i phi'' x^2 / 4 - i x E' + phi' / 4 + i D + i g0 phi].
kernels::RowCoefficients m_template(cplx phi, cplx phid, cplx phidd, cplx E, cplx Ed, cplx D, double g0) {
    kernels::RowCoefficients c;
    c.a = I * phi;
    c.b1 = 0.5 * I * phid;
    c.b0 = I * E;
    c.c2 = 0.25 * phidd;
    c.c1 = Ed;
    c.c0 = 0.25 * I * phid - D - g0 * phi;
    return c;
}
}  // namespace

std::string generator_name(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::J_minus: return "J-";
        case GeneratorKind::J_plus: return "J+";
        case GeneratorKind::Identity: return "I";
        case GeneratorKind::M_minus: return "M-";
        case GeneratorKind::M_plus: return "M+";
        case GeneratorKind::M_3: return "M3";
        case GeneratorKind::Schroedinger: return "S";
        case GeneratorKind::Phi3: return "phi3";
    }
    return "?";
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
}

OperatorExpr& OperatorExpr::operator-=(const OperatorExpr& o) {
    for (auto t : o.terms_) {
        t.coeff = -t.coeff;
        terms_.push_back(std::move(t));
    }
    return *this;
}

OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
    OperatorExpr out;
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            OperatorTerm t{ta.coeff * tb.coeff, ta.factors};
            t.factors.insert(t.factors.end(), tb.factors.begin(), tb.factors.end());
            out.terms_.push_back(std::move(t));
        }
    return out;
}

OperatorExpr operator*(cplx s, OperatorExpr a) {
    for (auto& t : a.terms_) t.coeff *= s;
    return a;
}

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b) { return a * b - b * a; }

OperatorExpr K_minus() { return 0.5 * (OperatorExpr(GeneratorKind::J_minus) * GeneratorKind::J_minus); }
OperatorExpr K_plus() { return 0.5 * (OperatorExpr(GeneratorKind::J_plus) * GeneratorKind::J_plus); }
OperatorExpr K_3() {
    return OperatorExpr(GeneratorKind::J_plus) * GeneratorKind::J_minus + OperatorExpr::scalar(0.5);
}

GridContext::GridContext(const AuxiliaryBundle& bundle, const PotentialSpec& spec, const UniformAxis& tau,
                         int order)
    : bundle_(bundle), spec_(spec), tau_(tau), order_(order) {
    if (order < 2 || order % 2) throw ConfigError("stencil order must be even and at least 2");
    for (int it = 0; it < tau.count; ++it) rows_.push_back(bundle.at(tau[it]));
}

kernels::RowCoefficients GridContext::coefficients(GeneratorKind kind, int row) const {
    const AuxPoint& p = rows_.at(row);
    kernels::RowCoefficients c;
    switch (kind) {
        case GeneratorKind::J_minus:
            c.b0 = p.xi;
            c.c1 = -I * p.xi_dot;
            c.c0 = I * p.C;
            break;
        case GeneratorKind::J_plus:
            // Adjoint of J_-.
            c.b0 = -std::conj(p.xi);
            c.c1 = I * std::conj(p.xi_dot);
            c.c0 = -I * std::conj(p.C);
            break;
        case GeneratorKind::Identity:
            c.c0 = 1.0;
            break;
        case GeneratorKind::M_minus:
            c = m_template(p.phi1, p.phi1_dot, p.phi1_ddot, p.E1, p.E1_dot, p.D1, p.g0);
            break;
        case GeneratorKind::M_plus:
            c = m_template(p.phi2, p.phi2_dot, p.phi2_ddot, p.E2, p.E2_dot, p.D2, p.g0);
            break;
        case GeneratorKind::M_3:
            c = m_template(p.phi3, p.phi3_dot, p.phi3_ddot, p.E3, p.E3_dot, p.D3, p.g0);
            break;
        case GeneratorKind::Schroedinger: {
            double t = tau_[row];
            c.d2 = 1.0;
            c.a = 2.0 * I;
            c.c2 = -2.0 * spec_.g2(t);
            c.c1 = -2.0 * spec_.g1(t);
            c.c0 = -2.0 * spec_.g0(t);
            break;
        }
        case GeneratorKind::Phi3:
            c.c0 = p.phi3;
            break;
    }
    return c;
}

FieldGrid apply(GeneratorKind kind, const FieldGrid& field, const GridContext& ctx) {
    if (field.nt() != ctx.tau().count || field.tau().start != ctx.tau().start ||
        (field.nt() > 1 && field.tau().step != ctx.tau().step))
        throw ConfigError("field and context have different tau axes");
    if (field.nx() < 5) throw ConfigError("generator application needs at least 5 x points");
    if (needs_dt(kind) && field.nt() < 5) throw ConfigError("generator application needs at least 5 tau points");
    if (kind == GeneratorKind::Identity) return field;

    const int half = ctx.order() / 2;
    FieldGrid out(field.x(), field.tau());
    out.x_lo = field.x_lo, out.x_hi = field.x_hi, out.t_lo = field.t_lo, out.t_hi = field.t_hi;
    out.shrink(needs_dx(kind) ? half : 0, needs_dt(kind) ? half : 0);

    Stencil dx, dxx;
    if (needs_dx(kind)) dx = central_stencil(1, ctx.order(), field.x().step);
    if (kind == GeneratorKind::Schroedinger) dxx = central_stencil(2, ctx.order(), field.x().step);
    std::vector<int> rows;
    std::vector<kernels::RowCoefficients> coeff;
    std::vector<Stencil> dt;
    for (int it = out.t_lo; it < out.t_hi; ++it) {
        rows.push_back(it);
        coeff.push_back(ctx.coefficients(kind, it));
        if (needs_dt(kind)) dt.push_back(central_stencil(1, ctx.order(), field.tau().step));
    }
    kernels::parallel::apply_rows(field, rows, coeff, dx, dxx, dt, out.x_lo, out.x_hi, out);
    return out;
}

FieldGrid apply(const OperatorExpr& expr, const FieldGrid& field, const GridContext& ctx) {
    FieldGrid total(field.x(), field.tau());
    total.x_lo = field.x_lo, total.x_hi = field.x_hi, total.t_lo = field.t_lo, total.t_hi = field.t_hi;
    for (const auto& term : expr.terms()) {
        FieldGrid g = field;
        for (auto f = term.factors.rbegin(); f != term.factors.rend(); ++f) g = apply(*f, g, ctx);
        g *= term.coeff;
        total += g;
    }
    return total;
}

FieldGrid apply_generator(GeneratorKind kind, const FieldGrid& field, const ClassicalBasis&,
                          const AuxiliaryBundle& bundle, const PotentialSpec& spec) {
    GridContext ctx(bundle, spec, field.tau());
    return apply(kind, field, ctx);
}

double relation_residual(const OperatorExpr& lhs, const OperatorExpr& rhs, const FieldGrid& field,
                         const GridContext& ctx) {
    FieldGrid d = apply(lhs - rhs, field, ctx);
    FieldGrid ref = field;
    ref.x_lo = d.x_lo, ref.x_hi = d.x_hi, ref.t_lo = d.t_lo, ref.t_hi = d.t_hi;
    double n = ref.interior_norm();
    if (!(n > 0)) throw NumericError("relation residual on a field that vanishes on the grid");
    return d.interior_norm() / n;
}

double commutator_residual(GeneratorKind a, GeneratorKind b, const OperatorExpr& expected,
                           const FieldGrid& field, const GridContext& ctx) {
    return relation_residual(commutator(a, b), expected, field, ctx);
}

double m3_eigenvalue_residual(int m, const FieldGrid& psi, const GridContext& ctx) {
    return relation_residual(GeneratorKind::M_3, OperatorExpr::scalar(m + 0.5), psi, ctx);
}

double m3_decomposition_residual(const FieldGrid& field, const GridContext& ctx) {
    OperatorExpr rhs = 0.5 * (OperatorExpr(GeneratorKind::Phi3) * GeneratorKind::Schroedinger) +
                       OperatorExpr(GeneratorKind::J_plus) * GeneratorKind::J_minus + OperatorExpr::scalar(0.5);
    return relation_residual(GeneratorKind::M_3, rhs, field, ctx);
}

TestField gaussian_field(double c, double w, double k, double q) {
    TestField f;
    f.name = "gauss(c=" + std::to_string(c) + ",w=" + std::to_string(w) + ")";
    f.center = c;
    f.half_width = 9 * w;
    f.sample = [c, w, k, q](const UniformAxis& x, const UniformAxis& tau) {
        FieldGrid g(x, tau);
        for (int it = 0; it < tau.count; ++it)
            for (int ix = 0; ix < x.count; ++ix) {
                double d = x[ix] - c;
                g.at(it, ix) = std::exp(cplx(-d * d / (2 * w * w), k * x[ix] + q * tau[it]));
            }
        return g;
    };
    return f;
}

TestField number_state_field(const AuxiliaryBundle& bundle, int m, double tau0) {
    TestField f;
    f.name = "psi" + std::to_string(m);
    auto g = bundle.geometry(tau0);
    double sq = static_cast<double>(std::sqrt(g.phi3));
    f.center = static_cast<double>(std::sqrt(g.phi3) * g.b3);
    f.half_width = (std::sqrt(2.0 * m + 1) + 7.0) * sq;
    f.sample = [bundle, m](const UniformAxis& x, const UniformAxis& tau) {
        return psi_field(NumberState(m, bundle), x, tau);
    };
    return f;
}

std::vector<Relation> algebra_relations() {
    using G = GeneratorKind;
    const OperatorExpr Jm(G::J_minus), Jp(G::J_plus), Id(G::Identity), Mm(G::M_minus), Mp(G::M_plus),
        M3(G::M_3);
    const OperatorExpr Km = K_minus(), Kp = K_plus(), K3 = K_3();
    const double t1 = 1e-5, t2 = 1e-4;
    std::vector<Relation> r{
        {"[J-,J+] = I", commutator(Jm, Jp), Id, t1},
        {"[M+,M-] = -M3", commutator(Mp, Mm), -1.0 * M3, t2},
        {"[M3,M+] = 2M+", commutator(M3, Mp), 2.0 * Mp, t2},
        {"[M3,M-] = -2M-", commutator(M3, Mm), -2.0 * Mm, t2},
        {"[M3,J-] = -J-", commutator(M3, Jm), -1.0 * Jm, t2},
        {"[M3,J+] = J+", commutator(M3, Jp), Jp, t2},
        {"[M-,J+] = -J-", commutator(Mm, Jp), -1.0 * Jm, t2},
        {"[M+,J-] = J+", commutator(Mp, Jm), Jp, t2},
        {"[M3,I] = 0", commutator(M3, Id), OperatorExpr::zero(), t2},
        {"[K+,K-] = -K3", commutator(Kp, Km), -1.0 * K3, t2},
        {"[K3,K+] = 2K+", commutator(K3, Kp), 2.0 * Kp, t2},
        {"[K3,K-] = -2K-", commutator(K3, Km), -2.0 * Km, t2},
        {"[K-,J-] = 0", commutator(Km, Jm), OperatorExpr::zero(), t2},
        {"[K+,J-] = -J+", commutator(Kp, Jm), -1.0 * Jp, t2},
        {"[K3,J-] = -J-", commutator(K3, Jm), -1.0 * Jm, t2},
        {"[K-,J+] = J-", commutator(Km, Jp), Jm, t2},
        {"[K+,J+] = 0", commutator(Kp, Jp), OperatorExpr::zero(), t2},
        {"[K3,J+] = J+", commutator(K3, Jp), Jp, t2},
        {"M3 = phi3 S/2 + J+J- + 1/2",
         M3, 0.5 * (OperatorExpr(G::Phi3) * G::Schroedinger) + Jp * Jm + OperatorExpr::scalar(0.5), t2},
        // Alternate readings kept for reference; they are expected to fail.
        {"alt [K3,K+] = K+", commutator(K3, Kp), Kp, t2, true},
        {"alt [K3,K-] = -K-", commutator(K3, Km), -1.0 * Km, t2, true},
        {"alt [M-,J+] = J-", commutator(Mm, Jp), Jm, t2, true},
        {"alt [M+,J-] = -J+", commutator(Mp, Jm), -1.0 * Jp, t2, true},
    };
    return r;
}

namespace {

ConvergenceResult finish(double coarse, double fine) {
    ConvergenceResult r;
    r.coarse = coarse;
    r.fine = fine;
    r.exact = r.coarse < 1e-11 && r.fine < 1e-11;
    r.order = r.exact ? 0.0 : std::log2(r.coarse / r.fine);
    return r;
}

UniformAxis tau_axis(const GridSpec& grid, double k, const AuxiliaryBundle& bundle) {
    UniformAxis tau{grid.tau0 - 0.5 * (grid.tau_points - 1) * k, k, grid.tau_points};
    if (tau.start < 0 || tau.back() > bundle.tau_max()) throw ConfigError("relation grid leaves the tau domain");
    return tau;
}

}  // namespace

ConvergenceResult relation_convergence(const Relation& rel, const TestField& field,
                                       const AuxiliaryBundle& bundle, const PotentialSpec& spec,
                                       const GridSpec& grid) {
    auto residual = [&](double h, double k) {
        int nx = static_cast<int>(std::ceil(2 * field.half_width / h)) + 1;
        UniformAxis x{field.center - field.half_width, h, nx};
        UniformAxis tau = tau_axis(grid, k, bundle);
        GridContext ctx(bundle, spec, tau);
        return relation_residual(rel.lhs, rel.rhs, field.sample(x, tau), ctx);
    };
    return finish(residual(grid.h, grid.k), residual(grid.h / 2, grid.k / 2));
}

ConvergenceResult ladder_convergence(GeneratorKind ladder, int m, const AuxiliaryBundle& bundle,
                                     const PotentialSpec& spec, const GridSpec& grid) {
    if (ladder != GeneratorKind::J_minus && ladder != GeneratorKind::J_plus)
        throw ConfigError("ladder check needs J- or J+");
    if (m < 0) throw ConfigError("number index must be non-negative");
    const bool lower = ladder == GeneratorKind::J_minus;
    const int target = lower ? m - 1 : m + 1;
    const double factor = lower ? std::sqrt(double(m)) : std::sqrt(m + 1.0);
    const TestField field = number_state_field(bundle, std::max(m, target), grid.tau0);
    auto residual = [&](double h, double k) {
        int nx = static_cast<int>(std::ceil(2 * field.half_width / h)) + 1;
        UniformAxis x{field.center - field.half_width, h, nx};
        UniformAxis tau = tau_axis(grid, k, bundle);
        GridContext ctx(bundle, spec, tau);
        FieldGrid psi = psi_field(NumberState(m, bundle), x, tau);
        FieldGrid d = apply(ladder, psi, ctx);
        if (target >= 0) {
            FieldGrid next = psi_field(NumberState(target, bundle), x, tau);
            next *= cplx(factor);
            d -= next;
        }
        FieldGrid ref = psi;
        ref.x_lo = d.x_lo, ref.x_hi = d.x_hi, ref.t_lo = d.t_lo, ref.t_hi = d.t_hi;
        return d.interior_norm() / ref.interior_norm();
    };
    return finish(residual(grid.h, grid.k), residual(grid.h / 2, grid.k / 2));
}

}  // namespace dosq

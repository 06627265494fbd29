#include "dosq/field_grid.hpp"

#include <algorithm>
#include <cmath>

#include "dosq/errors.hpp"
#include "dosq/kernels.hpp"

namespace dosq {

UniformAxis UniformAxis::span(double a, double b, int count) {
    if (count < 2 || !(b > a)) throw ConfigError("axis needs count >= 2 and b > a");
    return {a, (b - a) / (count - 1), count};
}

FieldGrid::FieldGrid(UniformAxis x, UniformAxis tau)
    : x_(x), tau_(tau), values_(std::size_t(x.count) * tau.count) {
    if (x.count < 1 || tau.count < 1) throw ConfigError("field grid needs positive dimensions");
    if (!(x.step > 0.0) || (tau.count > 1 && !(tau.step > 0.0)))
        throw ConfigError("field grid axes must be ascending");
    x_hi = x.count;
    t_hi = tau.count;
}

void FieldGrid::shrink(int mx, int mt) {
    x_lo += mx;
    x_hi -= mx;
    t_lo += mt;
    t_hi -= mt;
    if (x_lo >= x_hi || t_lo >= t_hi) throw ConfigError("grid too small for the applied stencils");
}

bool FieldGrid::same_shape(const FieldGrid& o) const {
    return nx() == o.nx() && nt() == o.nt() && x_.start == o.x_.start && x_.step == o.x_.step &&
           tau_.start == o.tau_.start && tau_.step == o.tau_.step;
}

double FieldGrid::interior_norm() const {
    double s = 0.0;
    for (int it = t_lo; it < t_hi; ++it)
        s += kernels::parallel::sum_abs2(row(it) + x_lo, x_hi - x_lo);
    return std::sqrt(s);
}

namespace {
void require_shape(const FieldGrid& a, const FieldGrid& b) {
    if (!a.same_shape(b)) throw ConfigError("field grids have different shapes");
}
void intersect(FieldGrid& a, const FieldGrid& b) {
    a.x_lo = std::max(a.x_lo, b.x_lo);
    a.x_hi = std::min(a.x_hi, b.x_hi);
    a.t_lo = std::max(a.t_lo, b.t_lo);
    a.t_hi = std::min(a.t_hi, b.t_hi);
}
}  // namespace

FieldGrid& FieldGrid::operator+=(const FieldGrid& o) {
    require_shape(*this, o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    intersect(*this, o);
    return *this;
}

FieldGrid& FieldGrid::operator-=(const FieldGrid& o) {
    require_shape(*this, o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    intersect(*this, o);
    return *this;
}

FieldGrid& FieldGrid::operator*=(std::complex<double> s) {
    for (auto& v : values_) v *= s;
    return *this;
}

FieldGrid operator+(FieldGrid a, const FieldGrid& b) { return a += b; }
FieldGrid operator-(FieldGrid a, const FieldGrid& b) { return a -= b; }
FieldGrid operator*(std::complex<double> s, FieldGrid a) { return a *= s; }

double relative_difference(const FieldGrid& a, const FieldGrid& b) {
    FieldGrid d = a - b;
    FieldGrid ref = b;
    ref.x_lo = d.x_lo, ref.x_hi = d.x_hi, ref.t_lo = d.t_lo, ref.t_hi = d.t_hi;
    return d.interior_norm() / ref.interior_norm();
}

}  // namespace dosq

#pragma once

#include <complex>
#include <vector>

namespace dosq {

struct UniformAxis {
    double start = 0.0;
    double step = 1.0;
    int count = 0;

    double operator[](int i) const { return start + step * i; }
    double back() const { return (*this)[count - 1]; }
    static UniformAxis span(double a, double b, int count);
};

// Complex samples on a uniform (x, tau) grid, one contiguous x-row per tau.
// Stencil operations shrink the valid window instead of using one-sided
// differences; entries outside it are left as zero and ignored by norms.
class FieldGrid {
public:
    FieldGrid() = default;
    FieldGrid(UniformAxis x, UniformAxis tau);

    const UniformAxis& x() const { return x_; }
    const UniformAxis& tau() const { return tau_; }
    int nx() const { return x_.count; }
    int nt() const { return tau_.count; }

    std::complex<double>& at(int it, int ix) { return values_[std::size_t(it) * x_.count + ix]; }
    const std::complex<double>& at(int it, int ix) const { return values_[std::size_t(it) * x_.count + ix]; }
    std::complex<double>* row(int it) { return values_.data() + std::size_t(it) * x_.count; }
    const std::complex<double>* row(int it) const { return values_.data() + std::size_t(it) * x_.count; }
    std::vector<std::complex<double>>& values() { return values_; }
    const std::vector<std::complex<double>>& values() const { return values_; }

    // Valid window [lo, hi) on each axis.
    int x_lo = 0, x_hi = 0, t_lo = 0, t_hi = 0;
    void shrink(int margin_x, int margin_tau);
    bool same_shape(const FieldGrid& other) const;

    double interior_norm() const;

    FieldGrid& operator+=(const FieldGrid& o);
    FieldGrid& operator-=(const FieldGrid& o);
    FieldGrid& operator*=(std::complex<double> s);

private:
    UniformAxis x_, tau_;
    std::vector<std::complex<double>> values_;
};

// Arithmetic keeps the overlap of the operands' valid windows.
FieldGrid operator+(FieldGrid a, const FieldGrid& b);
FieldGrid operator-(FieldGrid a, const FieldGrid& b);
FieldGrid operator*(std::complex<double> s, FieldGrid a);

// ||a - b|| / ||b|| over the common valid window.
double relative_difference(const FieldGrid& a, const FieldGrid& b);

}  // namespace dosq

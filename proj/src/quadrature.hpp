#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dosq/errors.hpp"

namespace dosq::quad {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(std::complex<double> v) { return std::abs(v); }

// Adaptive Gauss-Kronrod (15 points) on [a, b] to relative tolerance `tol`.
template <class F>
auto adaptive(F&& f, double a, double b, double tol, const std::string& what = "integral") {
    using R = decltype(f(a));
    if (a == b) return R{};
    double err = 0, l1 = 0;
    R v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 25, tol, &err, &l1);
    if (!std::isfinite(magnitude(v)) || err > std::max(100 * tol * l1, 1e-14))
        throw NumericError(what + ": quadrature did not converge on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "] (error estimate " + std::to_string(err) + ")");
    return v;
}

// Fixed 10-point Gauss-Legendre rule, for short sub-intervals.
template <class F>
auto fixed(F&& f, double a, double b) {
    using R = decltype(f(a));
    if (a == b) return R{};
    return boost::math::quadrature::gauss<double, 10>::integrate(f, a, b);
}

// Running integral F(t) = integral_0^t f, tabulated at nodes with adaptive
// quadrature and completed between nodes by the fixed rule.
template <class R>
class Cumulative {
public:
    Cumulative() = default;
    Cumulative(std::function<R(double)> f, std::vector<double> nodes, double tol, const std::string& what)
        : f_(std::move(f)), nodes_(std::move(nodes)) {
        values_.assign(nodes_.size(), R{});
        for (std::size_t k = 1; k < nodes_.size(); ++k)
            values_[k] = values_[k - 1] + adaptive(f_, nodes_[k - 1], nodes_[k], tol, what);
    }

    R operator()(double t) const {
        auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
        std::size_t k = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin() - 1);
        if (k >= nodes_.size() - 1) k = nodes_.size() - 1;
        if (nodes_[k] == t) return values_[k];
        return values_[k] + fixed(f_, nodes_[k], t);
    }

    const std::vector<double>& nodes() const { return nodes_; }

private:
    std::function<R(double)> f_;
    std::vector<double> nodes_;
    std::vector<R> values_;
};

}  // namespace dosq::quad

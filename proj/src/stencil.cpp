#include "dosq/stencil.hpp"

#include <algorithm>
#include <cmath>

#include "dosq/errors.hpp"

namespace dosq {

std::vector<double> fd_weights(int deriv, const std::vector<double>& nodes, double x0) {
    const int n = static_cast<int>(nodes.size());
    if (deriv < 0 || n <= deriv) throw ConfigError("stencil has too few nodes for the derivative");
    // c[k][j]: weight of node j for derivative k.
    std::vector<std::vector<double>> c(deriv + 1, std::vector<double>(n, 0.0));
    c[0][0] = 1.0;
    double c1 = 1.0, c4 = nodes[0] - x0;
    for (int i = 1; i < n; ++i) {
        int mn = std::min(i, deriv);
        double c2 = 1.0, c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c[deriv];
}

namespace {
Stencil build(int deriv, int first, int count, double step) {
    Stencil s;
    std::vector<double> nodes;
    for (int k = 0; k < count; ++k) {
        s.offsets.push_back(first + k);
        nodes.push_back(first + k);
    }
    s.weights = fd_weights(deriv, nodes, 0.0);
    double scale = std::pow(step, -deriv);
    for (double& w : s.weights) w *= scale;
    // Drop weights that vanish by symmetry (centre of a first-derivative stencil).
    double wmax = 0.0;
    for (double w : s.weights) wmax = std::max(wmax, std::abs(w));
    for (std::size_t k = s.weights.size(); k-- > 0;)
        if (std::abs(s.weights[k]) < 1e-13 * wmax) {
            s.weights.erase(s.weights.begin() + k);
            s.offsets.erase(s.offsets.begin() + k);
        }
    return s;
}
}  // namespace

Stencil central_stencil(int deriv, int order, double step) {
    if (deriv < 1 || deriv > 2 || order < 2 || order % 2)
        throw ConfigError("central stencils exist for first/second derivatives at even order");
    int half = order / 2;
    return build(deriv, -half, 2 * half + 1, step);
}

Stencil window_stencil(int deriv, int order, double step, int at, int lo, int hi) {
    if (deriv < 1 || deriv > 2 || order < 2 || order % 2)
        throw ConfigError("stencils exist for first/second derivatives at even order");
    int half = order / 2, count = 2 * half + 1;
    if (hi - lo < count) throw ConfigError("axis too short for the stencil");
    int first = std::clamp(at - half, lo, hi - count);
    if (first == at - half) return central_stencil(deriv, order, step);
    // One-sided windows need one extra node for the second derivative to keep the order.
    if (deriv == 2) {
        count += 1;
        if (hi - lo < count) throw ConfigError("axis too short for the stencil");
        first = std::clamp(at - half, lo, hi - count);
    }
    return build(deriv, first - at, count, step);
}

}  // namespace dosq

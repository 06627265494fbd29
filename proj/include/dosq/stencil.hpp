#pragma once

#include <vector>

namespace dosq {

// Finite-difference weights for the derivative of order `deriv` at `x0`
// from samples at `nodes` (Fornberg's recursion).
std::vector<double> fd_weights(int deriv, const std::vector<double>& nodes, double x0 = 0.0);

struct Stencil {
    std::vector<int> offsets;
    std::vector<double> weights;  // already divided by step^deriv
};

// Centred stencil of even accuracy order for the first or second derivative.
Stencil central_stencil(int deriv, int order, double step);
// Same number of points as the centred stencil, shifted so that every offset
// lands inside [lo - at, hi - at). Equal to the centred one away from edges.
Stencil window_stencil(int deriv, int order, double step, int at, int lo, int hi);

}  // namespace dosq

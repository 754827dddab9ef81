#pragma once

#include <vector>

#include "deltasolve/types.hpp"

namespace deltasolve {

// Nodes and weights of a composite 16-point Gauss-Legendre rule on [a, b]
// with the given number of equal panels, appended to (x, w).
void append_gauss_legendre(double a, double b, int panels, std::vector<double>& x, std::vector<double>& w);

// Same, with the panel count chosen so that no panel is wider than max_width.
void append_gauss_legendre_width(double a, double b, double max_width, std::vector<double>& x, std::vector<double>& w);

}  // namespace deltasolve

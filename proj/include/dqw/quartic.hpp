#pragma once

#include <array>

#include "dqw/types.hpp"

namespace dqw {

// Real roots of z^3 + a z^2 + b z + c; returns the count (1 or 3, multiple
// roots repeated).
int solve_cubic_real(double a, double b, double c, std::array<double, 3>& roots);

// All four complex roots of z^4 + a z^3 + b z^2 + c z + d (real coefficients)
// by Ferrari's method: depressed quartic, resolvent cubic (largest-magnitude
// real root), factorization into two quadratics. Roots are Newton-polished
// when the discriminant is tiny (near-multiple roots).
std::array<cd, 4> solve_quartic(double a, double b, double c, double d);

double quartic_discriminant(double a, double b, double c, double d);

}  // namespace dqw

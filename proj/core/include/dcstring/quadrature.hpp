#pragma once

#include <functional>

namespace dcstring {

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of f over [lo, hi].
/// The target is max(tol, a few ulps of the integral of |f|). Throws
/// NumericalError when the subdivision budget runs out first.
double adaptive_quadrature(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-11);

}  // namespace dcstring

#pragma once

#include <functional>

namespace dcstring {

/// Brent's method on a sign-changing bracket [lo, hi].
/// Returns a point of a bracket of width <= x_tol that still contains the sign change.
/// Throws NumericalError when f(lo) and f(hi) have the same strict sign.
double brent_root(const std::function<double(double)>& f, double lo, double hi, double x_tol = 1e-12);

}  // namespace dcstring

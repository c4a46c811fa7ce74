#pragma once

// Shared shooting machinery for the Sturm-Liouville segments.

#include <algorithm>
#include <cmath>
#include <locale>
#include <memory>
#include <sstream>
#include <string>

#include "dcstring/coeffs.hpp"
#include "dcstring/error.hpp"
#include "dcstring/ode.hpp"
#include "dcstring/roots.hpp"

namespace dcstring::detail {

/// Integrates (p u')' + factor * w u = 0 as the flux system (u, p u').
inline std::shared_ptr<const DenseSolution<2>> shoot_flux(const ScalarField& p, const ScalarField& w, double factor,
                                                          double x0, double x1, const State<2>& init,
                                                          const IvpOptions& opts) {
  auto rhs = [&p, &w, factor](double x, const State<2>& y) {
    return State<2>{y[1] / p(x), -factor * w(x) * y[0]};
  };
  return std::make_shared<const DenseSolution<2>>(integrate_ivp<2>(rhs, x0, x1, init, opts));
}

/// Running count of strict sign changes in a sample sequence; exact zeros are skipped.
class SignCounter {
 public:
  void push(double v) {
    sup_ = std::max(sup_, std::abs(v));
    if (v == 0.0) return;
    const int s = v > 0 ? 1 : -1;
    if (last_ != 0 && s != last_) ++changes_;
    last_ = s;
  }
  int changes() const { return changes_; }
  double sup() const { return sup_; }

 private:
  int changes_ = 0;
  int last_ = 0;
  double sup_ = 0.0;
};

/// Feeds u along a dense flux solution: every step is cut into at least four
/// pieces and no piece is longer than max_gap. The start point is skipped.
inline void scan(const DenseSolution<2>& sol, double max_gap, SignCounter& counter) {
  const auto& xs = sol.breakpoints();
  const auto& ys = sol.states();
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double h = xs[i + 1] - xs[i];
    const int pieces = std::max(4, static_cast<int>(std::ceil(std::abs(h) / max_gap)));
    for (int j = 1; j < pieces; ++j) counter.push(sol(xs[i] + h * j / pieces)[0]);
    counter.push(ys[i + 1][0]);
  }
}

struct Shot {
  double miss;
  int count;  // sign changes of u, i.e. the number of eigenvalues below the shot value
};

/// The n-th Dirichlet eigenvalue of a shooting problem: bisects on the
/// oscillation count until exactly one eigenvalue is bracketed, then runs
/// Brent's method on the boundary miss. `shot` must be monotone in its count.
template <class ShotFn>
double dirichlet_eigenvalue(ShotFn&& shot, double seed, int n, const char* what) {
  auto fail = [&](const std::string& msg, double lo, double hi) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(12);
    os << what << ": " << msg << " for n = " << n << " (search window [" << lo << ", " << hi << "])";
    throw NumericalError(os.str());
  };
  const int c_seed = shot(seed).count;
  double hi = seed;
  int c_hi = c_seed;
  for (int it = 0; c_hi < n; ++it) {
    if (it > 60) fail("no upper bracket", seed, hi);
    hi *= 2;
    c_hi = shot(hi).count;
  }
  double lo = seed;
  int c_lo = c_seed;
  for (int it = 0; c_lo >= n; ++it) {
    if (it > 200) fail("no lower bracket", lo, seed);
    lo *= 0.5;
    c_lo = shot(lo).count;
  }
  for (int it = 0; !(c_lo == n - 1 && c_hi == n); ++it) {
    if (it > 200) fail("could not isolate the eigenvalue", lo, hi);
    const double mid = 0.5 * (lo + hi);
    const int c_mid = shot(mid).count;
    if (c_mid >= n) {
      hi = mid;
      c_hi = c_mid;
    } else {
      lo = mid;
      c_lo = c_mid;
    }
  }
  return brent_root([&shot](double lam) { return shot(lam).miss; }, lo, hi, 1e-13 * hi);
}

}  // namespace dcstring::detail

#pragma once

// Explicit Runge-Kutta integration with dense output.
//
// The scheme is the Dormand-Prince 5(4) pair with the standard continuous
// extension of order 4 (Hairer, Norsett & Wanner, "Solving ODEs I", II.6).
// Local error is controlled in the mixed norm
//   sqrt(mean_i (err_i / (abs_tol + rel_tol * max(|y_i|, |y_new_i|)))^2) <= 1.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "dcstring/error.hpp"

namespace dcstring {

template <std::size_t N>
using State = std::array<double, N>;

struct IvpOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  /// Upper bound on |h|; zero means unbounded.
  double max_step = 0.0;
  std::size_t max_steps = 2'000'000;
};

template <std::size_t N>
class DenseSolution {
 public:
  double x0() const { return xs_.front(); }
  double x1() const { return xs_.back(); }
  const std::vector<double>& breakpoints() const { return xs_; }
  const std::vector<State<N>>& states() const { return ys_; }
  const State<N>& front() const { return ys_.front(); }
  const State<N>& back() const { return ys_.back(); }
  std::size_t steps() const { return xs_.size() - 1; }

  /// State at x. Exact at breakpoints; continuous across them.
  State<N> operator()(double x) const {
    const std::size_t i = locate(x);
    if (x == xs_[i]) return ys_[i];
    if (x == xs_[i + 1]) return ys_[i + 1];
    const double theta = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
    const double theta1 = 1.0 - theta;
    const auto& c = cont_[i];
    State<N> y;
    for (std::size_t j = 0; j < N; ++j) {
      y[j] = c[0][j] + theta * (c[1][j] + theta1 * (c[2][j] + theta * (c[3][j] + theta1 * c[4][j])));
    }
    return y;
  }

  /// d/dx of the interpolant (not a fresh right-hand-side evaluation).
  State<N> derivative(double x) const {
    const std::size_t i = locate(x);
    const double h = xs_[i + 1] - xs_[i];
    const double theta = (x - xs_[i]) / h;
    const double theta1 = 1.0 - theta;
    const auto& c = cont_[i];
    State<N> dy;
    for (std::size_t j = 0; j < N; ++j) {
      const double cc = c[3][j] + theta1 * c[4][j];
      const double dcc = -c[4][j];
      const double b = c[2][j] + theta * cc;
      const double db = cc + theta * dcc;
      const double a = c[1][j] + theta1 * b;
      const double da = -b + theta1 * db;
      dy[j] = (a + theta * da) / h;
    }
    return dy;
  }

  /// Scales every stored quantity; the problem must be linear for this to stay a solution.
  void scale(double factor) {
    for (auto& y : ys_) {
      for (auto& v : y) v *= factor;
    }
    for (auto& c : cont_) {
      for (auto& r : c) {
        for (auto& v : r) v *= factor;
      }
    }
  }

 private:
  template <std::size_t M, class Rhs>
  friend DenseSolution<M> integrate_ivp(Rhs&& rhs, double x0, double x1, const State<M>& init,
                                        const IvpOptions& opts);

  std::size_t locate(double x) const {
    const bool forward = xs_.back() > xs_.front();
    const double lo = forward ? xs_.front() : xs_.back();
    const double hi = forward ? xs_.back() : xs_.front();
    if (x < lo || x > hi) {
      const double slack = 1e-12 * (hi - lo);
      if (x < lo - slack || x > hi + slack) throw std::out_of_range("DenseSolution: x outside integration span");
      x = std::clamp(x, lo, hi);
    }
    std::size_t i;
    if (forward) {
      i = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
    } else {
      i = static_cast<std::size_t>(
          std::upper_bound(xs_.begin(), xs_.end(), x, [](double v, double e) { return v > e; }) - xs_.begin());
    }
    if (i == 0) return 0;
    return std::min(i - 1, xs_.size() - 2);
  }

  std::vector<double> xs_;
  std::vector<State<N>> ys_;
  std::vector<std::array<State<N>, 5>> cont_;
};

namespace detail {

template <std::size_t N>
double rms_scaled(const State<N>& e, const State<N>& y0, const State<N>& y1, const IvpOptions& o) {
  double sum = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    const double sc = o.abs_tol + o.rel_tol * std::max(std::abs(y0[j]), std::abs(y1[j]));
    const double q = e[j] / sc;
    sum += q * q;
  }
  return std::sqrt(sum / static_cast<double>(N));
}

template <std::size_t N>
bool all_finite(const State<N>& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

inline std::string where(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace detail

/// Integrates y' = rhs(x, y) from x0 to x1 (either direction) and returns the dense solution.
/// Throws NumericalError on step-size underflow or a non-finite right-hand side.
template <std::size_t N, class Rhs>
DenseSolution<N> integrate_ivp(Rhs&& rhs, double x0, double x1, const State<N>& init,
                               const IvpOptions& opts = {}) {
  if (x0 == x1) throw std::invalid_argument("integrate_ivp: empty span");
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                   a76 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;
  constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                   d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                   d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  auto eval = [&](double x, const State<N>& y) {
    State<N> f = rhs(x, y);
    if (!detail::all_finite(f)) throw NumericalError("integrate_ivp: non-finite right-hand side at x = " + detail::where(x));
    return f;
  };

  const double span = x1 - x0;
  const double dir = span > 0 ? 1.0 : -1.0;
  const double max_h = opts.max_step > 0 ? std::min(opts.max_step, std::abs(span)) : std::abs(span);

  DenseSolution<N> sol;
  sol.xs_.push_back(x0);
  sol.ys_.push_back(init);

  double x = x0;
  State<N> y = init;
  State<N> k1 = eval(x, y);

  // Initial step guess (Hairer's heuristic).
  double h;
  {
    auto norm = [&](const State<N>& v) {
      double s = 0.0;
      for (std::size_t j = 0; j < N; ++j) {
        const double q = v[j] / (opts.abs_tol + opts.rel_tol * std::abs(y[j]));
        s += q * q;
      }
      return std::sqrt(s / N);
    };
    const double dn0 = norm(y), dn1 = norm(k1);
    double h0 = (dn0 < 1e-5 || dn1 < 1e-5) ? 1e-6 : 0.01 * dn0 / dn1;
    h0 = std::min(h0, max_h);
    State<N> y1;
    for (std::size_t j = 0; j < N; ++j) y1[j] = y[j] + dir * h0 * k1[j];
    const State<N> f1 = eval(x + dir * h0, y1);
    State<N> df;
    for (std::size_t j = 0; j < N; ++j) df[j] = f1[j] - k1[j];
    const double dn2 = norm(df) / h0;
    const double m = std::max(dn1, dn2);
    const double h1 = m <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / m, 0.2);
    h = std::min({100 * h0, h1, max_h});
  }

  bool last_rejected = false;
  for (std::size_t step = 0;; ++step) {
    if (step >= opts.max_steps) throw NumericalError("integrate_ivp: step budget exhausted at x = " + detail::where(x));
    const double remaining = std::abs(x1 - x);
    bool last = false;
    if (h >= remaining) {
      h = remaining;
      last = true;
    }
    if (h <= 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
      throw NumericalError("integrate_ivp: step size underflow at x = " + detail::where(x));
    }
    const double hs = dir * h;

    State<N> t, k2, k3, k4, k5, k6, k7, ynew;
    for (std::size_t j = 0; j < N; ++j) t[j] = y[j] + hs * a21 * k1[j];
    k2 = eval(x + c2 * hs, t);
    for (std::size_t j = 0; j < N; ++j) t[j] = y[j] + hs * (a31 * k1[j] + a32 * k2[j]);
    k3 = eval(x + c3 * hs, t);
    for (std::size_t j = 0; j < N; ++j) t[j] = y[j] + hs * (a41 * k1[j] + a42 * k2[j] + a43 * k3[j]);
    k4 = eval(x + c4 * hs, t);
    for (std::size_t j = 0; j < N; ++j) t[j] = y[j] + hs * (a51 * k1[j] + a52 * k2[j] + a53 * k3[j] + a54 * k4[j]);
    k5 = eval(x + c5 * hs, t);
    for (std::size_t j = 0; j < N; ++j) {
      t[j] = y[j] + hs * (a61 * k1[j] + a62 * k2[j] + a63 * k3[j] + a64 * k4[j] + a65 * k5[j]);
    }
    const double xnew = last ? x1 : x + hs;
    k6 = eval(x + hs, t);
    for (std::size_t j = 0; j < N; ++j) {
      ynew[j] = y[j] + hs * (a71 * k1[j] + a73 * k3[j] + a74 * k4[j] + a75 * k5[j] + a76 * k6[j]);
    }
    k7 = eval(xnew, ynew);

    State<N> err;
    for (std::size_t j = 0; j < N; ++j) {
      err[j] = hs * (e1 * k1[j] + e3 * k3[j] + e4 * k4[j] + e5 * k5[j] + e6 * k6[j] + e7 * k7[j]);
    }
    const double en = detail::rms_scaled(err, y, ynew, opts);
    if (!std::isfinite(en)) throw NumericalError("integrate_ivp: non-finite error estimate at x = " + detail::where(x));

    if (en <= 1.0) {
      std::array<State<N>, 5> c;
      for (std::size_t j = 0; j < N; ++j) {
        const double ydiff = ynew[j] - y[j];
        const double bspl = hs * k1[j] - ydiff;
        c[0][j] = y[j];
        c[1][j] = ydiff;
        c[2][j] = bspl;
        c[3][j] = ydiff - hs * k7[j] - bspl;
        c[4][j] = hs * (d1 * k1[j] + d3 * k3[j] + d4 * k4[j] + d5 * k5[j] + d6 * k6[j] + d7 * k7[j]);
      }
      sol.cont_.push_back(c);
      sol.xs_.push_back(xnew);
      sol.ys_.push_back(ynew);
      if (last) break;
      x = xnew;
      y = ynew;
      k1 = k7;
      double fac = en == 0.0 ? 10.0 : 0.9 * std::pow(en, -0.2);
      fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 10.0);
      h = std::min(h * fac, max_h);
      last_rejected = false;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
      last_rejected = true;
    }
  }
  return sol;
}

}  // namespace dcstring

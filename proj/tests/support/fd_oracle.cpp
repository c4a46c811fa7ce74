#include "fd_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

FdOracle::FdOracle(const FdProblem& p) {
  const int nl = p.n_left, nr = p.n_right;
  const double hl = -p.a / nl, hr = p.b / nr;
  // nodes x_0 = a, ..., x_nl = 0, ..., x_{nl+nr} = b; unknowns are 1 .. nl+nr-1
  auto node = [&](int i) { return i <= nl ? p.a + i * hl : (i - nl) * hr; };
  auto stiff = [&](int i) {  // element (x_i, x_{i+1})
    if (i < nl) return p.k(p.a + (i + 0.5) * hl) / hl;
    return p.eps * p.kappa((i - nl + 0.5) * hr) / hr;
  };
  const int m = nl + nr - 1;
  diag_k_.resize(m);
  off_k_.resize(m > 0 ? m - 1 : 0);
  mass_.resize(m);
  for (int j = 0; j < m; ++j) {
    const int i = j + 1;
    diag_k_[j] = stiff(i - 1) + stiff(i);
    if (j + 1 < m) off_k_[j] = -stiff(i);
    const double x = node(i);
    if (i < nl) mass_[j] = p.eps * p.r(x) * hl;
    else if (i > nl) mass_[j] = p.rho(x) * hr;
    else mass_[j] = 0.5 * (p.eps * p.r(0.0) * hl + p.rho(0.0) * hr);
  }
}

int FdOracle::count_below(double s) const {
  int neg = 0;
  double d = 1.0;
  for (std::size_t j = 0; j < diag_k_.size(); ++j) {
    const double a = diag_k_[j] - s * mass_[j];
    const double off = j ? off_k_[j - 1] : 0.0;
    d = j ? a - off * off / d : a;
    if (d == 0.0) d = -1e-300;
    if (d < 0) ++neg;
  }
  return neg;
}

double FdOracle::eigenvalue(int n) const {
  double hi = 1.0;
  while (count_below(hi) < n) {
    hi *= 2;
    if (hi > 1e12) throw std::runtime_error("fd oracle: no upper bound");
  }
  double lo = 0.0;
  while (hi - lo > 1e-13 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(mid) >= n) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle

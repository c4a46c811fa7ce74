#pragma once

#include <functional>
#include <vector>

namespace oracle {

// Second-order finite differences for the two-part string, written in weak form so
// the interface conditions come for free:
//   K = int_a^0 k u'v' + eps int_0^b kappa u'v',   M = eps int_a^0 r u v + int_0^b rho u v,
// midpoint coefficients in K, lumped M. Eigenvalues of K u = lambda M u are
// located by counting negative pivots of K - s M.
struct FdProblem {
  double a, b, eps;
  std::function<double(double)> k, r, kappa, rho;
  int n_left = 20000;
  int n_right = 200000;
};

class FdOracle {
 public:
  explicit FdOracle(const FdProblem& p);

  // Eigenvalues of K - s M below s.
  int count_below(double s) const;

  // n-th eigenvalue (1-based), bisected to relative 1e-13.
  double eigenvalue(int n) const;

 private:
  std::vector<double> diag_k_, off_k_, mass_;
};

}  // namespace oracle

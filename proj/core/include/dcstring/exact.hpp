#pragma once

#include <memory>
#include <vector>

#include "dcstring/coeffs.hpp"
#include "dcstring/ode.hpp"
#include "dcstring/piecewise.hpp"

namespace dcstring {

/// The full eigenproblem at a fixed contrast parameter:
///   (k u')' + eps * lambda * r u = 0 on (a, 0),   u(a) = 0,
///   eps (kappa u')' + lambda * rho u = 0 on (0, b), u(b) = 0,
///   u(-0) = u(+0),  k(0) u'(-0) = eps * kappa(0) u'(+0).
struct ProblemInstance {
  CoefficientSet coeffs;
  double epsilon;
  IvpOptions ivp{};
};

/// Validates eps in (0, 1).
ProblemInstance make_instance(CoefficientSet coeffs, double epsilon, IvpOptions ivp = {});

enum class NormMode {
  kPlainL2,   ///< unweighted L2(a, b)
  kWeighted,  ///< int_a^0 r f^2 + int_0^b rho f^2
};

struct ShootResult {
  double miss;     ///< u(b) divided by the sup of |u| over the trajectory
  int zero_count;  ///< sign changes of u over the samples of (a, b]
};

/// Left-to-right shot from u(a) = 0, u'(a) = 1 through the interface conditions.
ShootResult shoot_miss(const ProblemInstance& instance, double lambda);

/// Both pieces of the shot at `lambda`, each as a flux system (u, p u') with p = k resp. kappa.
struct Trajectory {
  std::shared_ptr<const DenseSolution<2>> left;
  std::shared_ptr<const DenseSolution<2>> right;
};
Trajectory shoot(const ProblemInstance& instance, double lambda);

/// The n-th eigenvalue (1-based), to relative accuracy ~1e-9 on top of the integration error.
double eigenvalue(const ProblemInstance& instance, int n);

struct ExactEigenpair {
  int n;
  double lambda;
  PiecewiseFunction u;
  NormMode norm_mode;
};

/// Eigenfunction normalised in `mode`, with the sign fixed by u'(a) > 0.
ExactEigenpair eigenfunction(const ProblemInstance& instance, int n, NormMode mode);

/// Eigenfunction at an already known eigenvalue.
ExactEigenpair eigenfunction_at(const ProblemInstance& instance, int n, double lambda, NormMode mode);

double space_inner(const CoefficientSet& coeffs, const PiecewiseFunction& f, const PiecewiseFunction& g,
                   NormMode mode);
double space_norm(const CoefficientSet& coeffs, const PiecewiseFunction& f, NormMode mode);

/// Plain L2(a, b) norm of f - g.
double plain_distance(const PiecewiseFunction& f, const PiecewiseFunction& g);

/// Interior zeros of f on (a, b), found by sign changes on `samples` uniform
/// points (endpoints excluded) and refined with Brent's method.
std::vector<double> interior_zeros(const PiecewiseFunction& f, int samples = 4000);

/// int_0^b sqrt(rho / kappa): the optical length of the soft part.
double optical_length(const CoefficientSet& coeffs);

}  // namespace dcstring

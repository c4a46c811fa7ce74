#pragma once

#include "dcstring/coeffs.hpp"
#include "dcstring/ode.hpp"
#include "dcstring/piecewise.hpp"

namespace dcstring {

/// n-th Dirichlet eigenpair of (kappa u')' + mu rho u = 0 on (0, b),
/// normalised by int_0^b rho u^2 = 1 with u'(+0) > 0.
struct LimitEigenpair {
  int n = 0;
  double mu = 0.0;
  SampledFunction u;
};

LimitEigenpair limit_eigenpair(const CoefficientSet& coeffs, int n, const IvpOptions& ivp = {});

/// w(x) = kappa(0) u'(+0) * int_a^x dt / k(t) on [a, 0].
SampledFunction corrector_left(const CoefficientSet& coeffs, const SampledFunction& u_right,
                               const IvpOptions& ivp = {});

struct NuValue {
  double nu;           ///< -int_a^0 k w'^2
  double nu_boundary;  ///< -(k w w')(-0)
};

/// Both forms of the second-order coefficient. Throws NumericalError when
/// they disagree by more than 1e-8 relative.
NuValue nu_coefficient(const CoefficientSet& coeffs, const SampledFunction& w_left);

/// Solves (kappa w')' + mu rho w = -nu rho u on (0, b) with w(b) = 0 and
/// int_0^b rho u w = 0. The value w(+0) has to come out as `match_value`
/// (it is fixed by the resonance); a mismatch means nu is inconsistent and
/// raises NumericalError.
SampledFunction corrector_right(const CoefficientSet& coeffs, const LimitEigenpair& limit, double nu,
                                double match_value, const IvpOptions& ivp = {});

struct LowFreqApprox {
  int n = 0;
  double mu = 0.0;
  SampledFunction u_right;
  SampledFunction w_left;
  SampledFunction w_right;
  double nu = 0.0;
};

LowFreqApprox build_lowfreq(const CoefficientSet& coeffs, int n, const IvpOptions& ivp = {});

struct LowFreqPrediction {
  double lambda;
  PiecewiseFunction u;  ///< eps*w on [a, 0], u + eps*w on [0, b]
};

LowFreqPrediction lowfreq_prediction(const LowFreqApprox& approx, double epsilon);

}  // namespace dcstring

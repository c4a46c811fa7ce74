#pragma once

#include <optional>
#include <vector>

#include "dcstring/coeffs.hpp"
#include "dcstring/ode.hpp"
#include "dcstring/piecewise.hpp"

namespace dcstring {

/// WKB ingredients on the soft part: the phase S(x) = int_x^b sqrt(rho/kappa),
/// the amplitude c = (kappa rho)^(-1/4) and the transport corrector h solving
/// 2 kappa S' h' + (kappa S')' h = (kappa c')',  h(b) = 0.
struct WkbFrame {
  SampledFunction S;
  SampledFunction c;
  SampledFunction h;
  double S0 = 0.0;   ///< S(0), by quadrature
  double Sp0 = 0.0;  ///< S'(0) < 0
  double c0 = 0.0;
  double cp0 = 0.0;
  double h0 = 0.0;
  double kappa0 = 0.0;
};

WkbFrame build_wkb_frame(const CoefficientSet& coeffs, const IvpOptions& ivp = {});

/// Sup over uniform samples of |kappa S'^2 - rho|, |2 kappa S' c' + (kappa S')' c|
/// and |2 kappa S' h' + (kappa S')' h - (kappa c')'|. S' and h' are read off the
/// dense interpolants, not the right-hand sides.
struct WkbResiduals {
  double eikonal;
  double transport_c;
  double transport_h;
};
WkbResiduals wkb_residuals(const CoefficientSet& coeffs, const WkbFrame& frame, int samples = 1001);

enum class PencilCase {
  kRegular,
  kDeltaZero,     ///< v(0) = 0: omega is a Dirichlet frequency of the stiff part
  kDeltaHalfPi,   ///< mu = 0: Neumann frequency; the approximation is not reliable there
};

/// The pencil (k v')' + omega^2 r v = 0 on (a, 0), v(a) = 0,
/// k(0) v'(0) sin(delta) - omega kappa(0) S'(0) v(0) cos(delta) = 0.
struct PencilSolution {
  double omega = 0.0;
  std::optional<double> mu;  ///< -k(0) v'(0) / v(0); empty when v(0) = 0
  double delta = 0.0;        ///< in (-pi/2, pi/2]
  PencilCase kind = PencilCase::kRegular;
  SampledFunction v0;        ///< int_a^0 r v0^2 = 1, v0'(a) > 0
  double v0_at0 = 0.0;
  double kv0p_at0 = 0.0;     ///< k(0) v0'(0)
  double prufer0 = 0.0;      ///< Pruefer angle of v at 0, with v = R sin, k v' = R cos
  int wraps = 0;             ///< Neumann frequencies below omega; delta - pi*wraps is continuous in omega
};

PencilSolution pencil_solve(const CoefficientSet& coeffs, const WkbFrame& frame, double omega,
                            const IvpOptions& ivp = {});

/// k(0) v0'(0) sin(delta) - omega kappa(0) S'(0) v0(0) cos(delta).
double pencil_boundary_residual(const WkbFrame& frame, const PencilSolution& pencil);

/// g1, g2 and f as affine functions of omega1, evaluated for even l.
struct SolvabilityData {
  double g1 = 0.0;
  double g2_const = 0.0;
  double g2_lin = 0.0;
  double f_const = 0.0;
  double f_lin = 0.0;

  double g2(double omega1) const { return g2_const + g2_lin * omega1; }
  double f(double omega1) const { return f_const + f_lin * omega1; }
};

struct Omega1 {
  double omega1 = 0.0;
  SolvabilityData data;
  /// The closed-form expression (h(0)S'(0) - c'(0) sin^2 d) v^2 / ((2w + kappa(0) S'(0) cos d) c(0) sin d),
  /// kept for comparison only. NaN on the delta = 0 branch.
  double closed_form = 0.0;
  bool closed_form_agrees = false;  ///< within 1e-6 relative
};

/// omega1 from the solvability condition v0(0) kappa(0) f = -2 omega omega1 of the
/// first-order correction on the stiff part.
Omega1 omega1_of(const WkbFrame& frame, const PencilSolution& pencil);

double beta0_of(const PencilSolution& pencil, const WkbFrame& frame, int l);

/// F(omega) = (omega/eps + omega1(omega)) S(0) - delta(omega) - pi l.
double quantization_residual(const WkbFrame& frame, const CoefficientSet& coeffs, double epsilon, int l,
                             double omega, const IvpOptions& ivp = {});

struct AdmissibleFrequency {
  int l = 0;
  double omega = 0.0;
  double omega1 = 0.0;
  double delta = 0.0;
  double beta0 = 0.0;
  PencilSolution pencil;
  std::vector<double> roots;  ///< every root found in the final search window, ascending
};

/// The largest root of F for the given l.
AdmissibleFrequency admissible_frequency(const WkbFrame& frame, const CoefficientSet& coeffs, double epsilon,
                                         int l, const IvpOptions& ivp = {});

/// The admissible frequency that approximates the n-th eigenvalue: the largest root
/// of the quantization equation written with the unwrapped pencil phase,
///   (omega/eps + omega1) S(0) - (delta - pi*wraps) = pi n,
/// i.e. of F with l = n - wraps(omega). Coincides with admissible_frequency(n)
/// as long as no Neumann frequency of the stiff part lies below omega.
AdmissibleFrequency frequency_for_index(const WkbFrame& frame, const CoefficientSet& coeffs, double epsilon,
                                        int n, const IvpOptions& ivp = {});

struct HighFreqApprox {
  int l = 0;
  double epsilon = 0.0;
  double omega = 0.0;
  double omega1 = 0.0;
  double delta = 0.0;
  PencilCase kind = PencilCase::kRegular;
  int wraps = 0;
  double beta0 = 0.0;
  double gamma = 0.0;        ///< omega/eps + omega1
  double lambda_pred = 0.0;  ///< eps * gamma^2
  PiecewiseFunction Y;       ///< v0 on [a, 0]; beta0 c sin(gamma S) + eps beta0 h cos(gamma S) / omega on [0, b]
};

HighFreqApprox build_Y(const CoefficientSet& coeffs, const WkbFrame& frame, const AdmissibleFrequency& seed,
                       double epsilon);

}  // namespace dcstring

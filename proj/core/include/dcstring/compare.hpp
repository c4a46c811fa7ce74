#pragma once

#include <string>
#include <vector>

#include "dcstring/coeffs.hpp"
#include "dcstring/exact.hpp"
#include "dcstring/highfreq.hpp"
#include "dcstring/piecewise.hpp"

namespace dcstring {

/// Exact, low-frequency and high-frequency eigenfrequencies for one index.
struct ComparisonRow {
  int n = 0;
  double sqrt_exact = 0.0;     ///< sqrt(lambda_n)
  double sqrt_lowfreq = 0.0;   ///< sqrt(eps mu_n)
  double omega = 0.0;
  double omega1 = 0.0;
  double delta = 0.0;
  double sqrt_highfreq = 0.0;  ///< omega/sqrt(eps) + sqrt(eps) omega1
  int l = 0;                   ///< quantization index of the admissible frequency used
  int wraps = 0;               ///< n - l
  PencilCase kind = PencilCase::kRegular;
};

/// One row per index. The admissible frequency for row n is the one from
/// frequency_for_index, so l = n unless a Neumann frequency of the stiff part
/// lies below omega; such rows carry l != n.
std::vector<ComparisonRow> comparison_table(const ProblemInstance& instance, const std::vector<int>& ns);

enum class ConvergenceKind {
  kLowFreqEigenvalue,     ///< |lambda_n - eps mu_n|
  kLowFreqEigenfunction,  ///< plain L2 distance of u_n^eps to u_n + eps w_n
  kHighFreqEigenvalue,    ///< |lambda_n - eps gamma^2|
};

const char* to_string(ConvergenceKind kind);

struct ConvergenceReport {
  int n = 0;
  ConvergenceKind kind = ConvergenceKind::kLowFreqEigenvalue;
  std::vector<double> epsilons;  ///< strictly decreasing
  std::vector<double> errors;
  double fitted_slope = 0.0;     ///< least-squares slope of log(error) against log(eps)
};

ConvergenceReport convergence_study(const CoefficientSet& coeffs, int n, std::vector<double> epsilons,
                                    ConvergenceKind kind, const IvpOptions& ivp = {});

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ResidualNorms {
  double interior = 0.0;   ///< weighted L2 norm of (A - lambda) f over both open pieces
  double jump0 = 0.0;      ///< |f(+0) - f(-0)|
  double jump_flux = 0.0;  ///< |k(0) f'(-0) - eps kappa(0) f'(+0)|
};

/// Residual of the pair (lambda, f) for the operator acting as -(k f')'/(eps r) on
/// (a, 0) and -eps (kappa f')'/rho on (0, b); the norm uses the weights r and rho.
ResidualNorms residual_norm(const ProblemInstance& instance, const PiecewiseFunction& f, double lambda);

/// Sign of the plain L2 inner product, +1 when it vanishes.
double alignment_sign(const PiecewiseFunction& reference, const PiecewiseFunction& f);

struct FigureRow {
  double x;
  double u_exact;
  double u_low;
  double u_high;
};

struct FigureData {
  int n = 0;
  std::vector<FigureRow> rows;
  double distance_low = 0.0;   ///< plain L2 distance of u_low to u_exact
  double distance_high = 0.0;  ///< plain L2 distance of u_high to u_exact
  HighFreqApprox high;
};

/// Exact, low- and high-frequency eigenfunctions on a uniform grid over [a, b],
/// each normalised in plain L2(a, b) and sign-aligned with the exact one.
FigureData figure_data(const ProblemInstance& instance, int n, int grid_points);

}  // namespace dcstring

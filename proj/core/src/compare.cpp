#include "dcstring/compare.hpp"

#include <cmath>
#include <utility>

#include "dcstring/error.hpp"
#include "dcstring/lowfreq.hpp"
#include "dcstring/quadrature.hpp"

namespace dcstring {

std::vector<ComparisonRow> comparison_table(const ProblemInstance& inst, const std::vector<int>& ns) {
  if (ns.empty()) throw ValidationError("comparison table needs at least one index");
  const CoefficientSet& cs = inst.coeffs;
  const double eps = inst.epsilon;
  const WkbFrame frame = build_wkb_frame(cs, inst.ivp);
  std::vector<ComparisonRow> rows;
  rows.reserve(ns.size());
  for (int n : ns) {
    ComparisonRow row;
    row.n = n;
    row.sqrt_exact = std::sqrt(eigenvalue(inst, n));
    row.sqrt_lowfreq = std::sqrt(eps * limit_eigenpair(cs, n, inst.ivp).mu);
    const AdmissibleFrequency af = frequency_for_index(frame, cs, eps, n, inst.ivp);
    row.omega = af.omega;
    row.omega1 = af.omega1;
    row.delta = af.delta;
    row.sqrt_highfreq = af.omega / std::sqrt(eps) + std::sqrt(eps) * af.omega1;
    row.l = af.l;
    row.wraps = n - af.l;
    row.kind = af.pencil.kind;
    rows.push_back(row);
  }
  return rows;
}

const char* to_string(ConvergenceKind kind) {
  switch (kind) {
    case ConvergenceKind::kLowFreqEigenvalue: return "lowfreq-eigenvalue";
    case ConvergenceKind::kLowFreqEigenfunction: return "lowfreq-eigenfunction";
    case ConvergenceKind::kHighFreqEigenvalue: return "highfreq-eigenvalue";
  }
  return "?";
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("slope fit needs two or more matching points");
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0 && y[i] > 0)) throw NumericalError("slope fit needs positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double alignment_sign(const PiecewiseFunction& ref, const PiecewiseFunction& f) {
  const double left = adaptive_quadrature([&](double x) { return ref.left(x) * f.left(x); }, ref.a(), 0.0);
  const double right = adaptive_quadrature([&](double x) { return ref.right(x) * f.right(x); }, 0.0, ref.b());
  return left + right < 0 ? -1.0 : 1.0;
}

ConvergenceReport convergence_study(const CoefficientSet& cs, int n, std::vector<double> epsilons,
                                    ConvergenceKind kind, const IvpOptions& ivp) {
  if (epsilons.size() < 3) throw ValidationError("convergence study needs at least three epsilons");
  for (std::size_t i = 1; i < epsilons.size(); ++i) {
    if (!(epsilons[i] < epsilons[i - 1])) throw ValidationError("epsilons must be strictly decreasing");
  }
  ConvergenceReport rep;
  rep.n = n;
  rep.kind = kind;
  rep.epsilons = std::move(epsilons);

  const LowFreqApprox low = build_lowfreq(cs, n, ivp);
  const WkbFrame frame = kind == ConvergenceKind::kHighFreqEigenvalue ? build_wkb_frame(cs, ivp) : WkbFrame{};
  for (double eps : rep.epsilons) {
    const ProblemInstance inst = make_instance(cs, eps, ivp);
    double err = 0.0;
    switch (kind) {
      case ConvergenceKind::kLowFreqEigenvalue:
        err = std::abs(eigenvalue(inst, n) - eps * low.mu);
        break;
      case ConvergenceKind::kLowFreqEigenfunction: {
        // The prediction has weighted norm 1 + O(eps^2), so the exact eigenfunction is
        // normalised in the same weighted norm before taking the plain distance.
        const LowFreqPrediction pred = lowfreq_prediction(low, eps);
        const ExactEigenpair ex = eigenfunction(inst, n, NormMode::kWeighted);
        err = plain_distance(ex.u.scaled(alignment_sign(pred.u, ex.u)), pred.u);
        break;
      }
      case ConvergenceKind::kHighFreqEigenvalue: {
        const AdmissibleFrequency af = frequency_for_index(frame, cs, eps, n, ivp);
        const double gamma = af.omega / eps + af.omega1;
        err = std::abs(eigenvalue(inst, n) - eps * gamma * gamma);
        break;
      }
    }
    rep.errors.push_back(err);
  }
  rep.fitted_slope = loglog_slope(rep.epsilons, rep.errors);
  return rep;
}

ResidualNorms residual_norm(const ProblemInstance& inst, const PiecewiseFunction& f, double lambda) {
  const CoefficientSet& cs = inst.coeffs;
  const double eps = inst.epsilon;
  auto sq = [](double v) { return v * v; };
  const double left = adaptive_quadrature(
      [&](double x) {
        const Jet u = f.left.jet(x);
        const Jet k = cs.k.jet(x);
        const double r = cs.r(x);
        return r * sq((k.d1 * u.d1 + k.value * u.d2) / (eps * r) + lambda * u.value);
      },
      cs.a, 0.0);
  const double right = adaptive_quadrature(
      [&](double x) {
        const Jet u = f.right.jet(x);
        const Jet k = cs.kappa.jet(x);
        const double rho = cs.rho(x);
        return rho * sq(eps * (k.d1 * u.d1 + k.value * u.d2) / rho + lambda * u.value);
      },
      0.0, cs.b);
  const Jet lm = f.left.jet(0.0), rp = f.right.jet(0.0);
  return {std::sqrt(left + right), std::abs(rp.value - lm.value),
          std::abs(cs.k(0.0) * lm.d1 - eps * cs.kappa(0.0) * rp.d1)};
}

FigureData figure_data(const ProblemInstance& inst, int n, int grid_points) {
  if (grid_points < 2) throw ValidationError("figure needs at least two grid points");
  const CoefficientSet& cs = inst.coeffs;
  const double eps = inst.epsilon;
  const ExactEigenpair ex = eigenfunction(inst, n, NormMode::kPlainL2);

  const LowFreqPrediction low = lowfreq_prediction(build_lowfreq(cs, n, inst.ivp), eps);
  PiecewiseFunction u_low = low.u.scaled(1.0 / space_norm(cs, low.u, NormMode::kPlainL2));
  u_low = u_low.scaled(alignment_sign(ex.u, u_low));

  const WkbFrame frame = build_wkb_frame(cs, inst.ivp);
  FigureData fd;
  fd.n = n;
  fd.high = build_Y(cs, frame, frequency_for_index(frame, cs, eps, n, inst.ivp), eps);
  PiecewiseFunction u_high = fd.high.Y.scaled(1.0 / space_norm(cs, fd.high.Y, NormMode::kPlainL2));
  u_high = u_high.scaled(alignment_sign(ex.u, u_high));

  fd.distance_low = plain_distance(ex.u, u_low);
  fd.distance_high = plain_distance(ex.u, u_high);
  fd.rows.reserve(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    const double x = i + 1 == grid_points ? cs.b : cs.a + (cs.b - cs.a) * i / (grid_points - 1);
    fd.rows.push_back({x, ex.u(x), u_low(x), u_high(x)});
  }
  return fd;
}

}  // namespace dcstring

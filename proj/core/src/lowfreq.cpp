#include "dcstring/lowfreq.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "dcstring/error.hpp"
#include "dcstring/exact.hpp"
#include "dcstring/quadrature.hpp"
#include "shooting.hpp"

namespace dcstring {

namespace {

constexpr int kZeroScanPoints = 4000;

std::string num(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(12);
  os << v;
  return os.str();
}

double weighted_inner(const ScalarField& w, const SampledFunction& f, const SampledFunction& g) {
  const Interval d = f.domain();
  return adaptive_quadrature([&](double x) { return w(x) * f(x) * g(x); }, d.lo, d.hi);
}

double sup_abs(const DenseSolution<2>& sol, double gap) {
  detail::SignCounter counter;
  counter.push(sol.front()[0]);
  detail::scan(sol, gap, counter);
  return counter.sup();
}

}  // namespace

LimitEigenpair limit_eigenpair(const CoefficientSet& c, int n, const IvpOptions& ivp) {
  if (n < 1) throw ValidationError("limit eigenpair index must be >= 1");
  const State<2> init{0.0, c.kappa(0.0)};
  const double gap = c.b / kZeroScanPoints;
  auto shot = [&](double mu) {
    auto sol = detail::shoot_flux(c.kappa, c.rho, mu, 0.0, c.b, init, ivp);
    detail::SignCounter counter;
    detail::scan(*sol, gap, counter);
    return detail::Shot{sol->back()[0] / counter.sup(), counter.changes()};
  };
  const double s0 = optical_length(c);
  const double seed = std::numbers::pi * std::numbers::pi * n * n / (s0 * s0);
  const double mu = detail::dirichlet_eigenvalue(shot, seed, n, "limit eigenvalue");

  auto sol = detail::shoot_flux(c.kappa, c.rho, mu, 0.0, c.b, init, ivp);
  SampledFunction u = SampledFunction::from_flux_solution(sol, c.kappa);
  const double norm = std::sqrt(weighted_inner(c.rho, u, u));
  return {n, mu, u.scaled(1.0 / norm)};
}

SampledFunction corrector_left(const CoefficientSet& c, const SampledFunction& u_right, const IvpOptions& ivp) {
  const double slope = c.kappa(0.0) * u_right.jet(0.0).d1;
  const ScalarField k = c.k;
  auto sol = std::make_shared<const DenseSolution<1>>(integrate_ivp<1>(
      [&k](double x, const State<1>&) { return State<1>{1.0 / k(x)}; }, c.a, 0.0, State<1>{0.0}, ivp));
  auto value = [sol, slope](double x) { return slope * (*sol)(x)[0]; };
  auto jet = [sol, slope, k](double x) {
    const Jet kj = k.jet(x);
    return Jet{slope * (*sol)(x)[0], slope / kj.value, -slope * kj.d1 / (kj.value * kj.value)};
  };
  return SampledFunction({c.a, 0.0}, std::move(value), std::move(jet));
}

NuValue nu_coefficient(const CoefficientSet& c, const SampledFunction& w) {
  const double nu = -adaptive_quadrature(
      [&](double x) {
        const double d = w.jet(x).d1;
        return c.k(x) * d * d;
      },
      c.a, 0.0);
  const Jet w0 = w.jet(0.0);
  const double nu_b = -c.k(0.0) * w0.value * w0.d1;
  if (std::abs(nu - nu_b) > 1e-8 * std::max(std::abs(nu), 1e-300)) {
    throw NumericalError("nu: integral form " + num(nu) + " and boundary form " + num(nu_b) + " disagree");
  }
  return {nu, nu_b};
}

SampledFunction corrector_right(const CoefficientSet& c, const LimitEigenpair& lim, double nu, double match_value,
                                const IvpOptions& ivp) {
  const double mu = lim.mu;
  const SampledFunction& u = lim.u;
  const ScalarField& kappa = c.kappa;
  const ScalarField& rho = c.rho;
  const double gap = c.b / kZeroScanPoints;

  // The homogeneous solution vanishing at b must also vanish at 0, otherwise the
  // resonant problem would not fix w(0) and the slope freedom would leak into it.
  auto hom = detail::shoot_flux(kappa, rho, mu, c.b, 0.0, {0.0, kappa(c.b)}, ivp);
  const double hom_sup = sup_abs(*hom, gap);
  if (std::abs(hom->back()[0]) > 1e-6 * hom_sup) {
    throw NumericalError("right corrector: homogeneous solution does not vanish at 0 (relative value " +
                         num(hom->back()[0] / hom_sup) + "); mu is not a limit eigenvalue");
  }

  auto rhs = [&](double x, const State<2>& y) {
    const double p = rho(x);
    return State<2>{y[1] / kappa(x), -mu * p * y[0] - nu * p * u(x)};
  };
  auto part = std::make_shared<const DenseSolution<2>>(integrate_ivp<2>(rhs, c.b, 0.0, State<2>{0.0, 0.0}, ivp));

  const SampledFunction wp = SampledFunction::from_flux_solution(part, kappa);
  const SampledFunction wh = SampledFunction::from_flux_solution(hom, kappa);
  const double s = -weighted_inner(rho, u, wp) / weighted_inner(rho, u, wh);
  SampledFunction w = SampledFunction::combine(1.0, wp, s, wh);

  const double w0 = w(0.0);
  if (std::abs(w0 - match_value) > 1e-6 * std::max(1.0, std::abs(match_value))) {
    throw NumericalError("right corrector: w(+0) = " + num(w0) + " but the left corrector ends at " +
                         num(match_value) + "; solvability fails");
  }
  return w;
}

LowFreqApprox build_lowfreq(const CoefficientSet& c, int n, const IvpOptions& ivp) {
  LimitEigenpair lim = limit_eigenpair(c, n, ivp);
  SampledFunction wl = corrector_left(c, lim.u, ivp);
  const double nu = nu_coefficient(c, wl).nu;
  SampledFunction wr = corrector_right(c, lim, nu, wl(0.0), ivp);
  return {n, lim.mu, std::move(lim.u), std::move(wl), std::move(wr), nu};
}

LowFreqPrediction lowfreq_prediction(const LowFreqApprox& ap, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("epsilon must lie in (0, 1), got " + num(eps));
  PiecewiseFunction u{ap.w_left.scaled(eps), SampledFunction::combine(1.0, ap.u_right, eps, ap.w_right)};
  return {eps * ap.mu + eps * eps * ap.nu, std::move(u)};
}

}  // namespace dcstring

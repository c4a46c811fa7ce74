#include "dcstring/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dcstring/error.hpp"
#include "dcstring/quadrature.hpp"
#include "shooting.hpp"

namespace dcstring {

namespace {

constexpr double kRescaleThreshold = 1e8;
constexpr int kZeroScanPoints = 4000;

std::string num(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

ProblemInstance make_instance(CoefficientSet coeffs, double epsilon, IvpOptions ivp) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0, 1), got " + num(epsilon));
  return ProblemInstance{std::move(coeffs), epsilon, ivp};
}

double optical_length(const CoefficientSet& c) {
  return adaptive_quadrature([&c](double x) { return std::sqrt(c.rho(x) / c.kappa(x)); }, 0.0, c.b);
}

Trajectory shoot(const ProblemInstance& inst, double lambda) {
  const CoefficientSet& c = inst.coeffs;
  const double eps = inst.epsilon;
  auto left = detail::shoot_flux(c.k, c.r, eps * lambda, c.a, 0.0, {0.0, c.k(c.a)}, inst.ivp);
  State<2> at0 = left->back();
  State<2> init{at0[0], at0[1] / eps};
  const double size = std::max(std::abs(init[0]), std::abs(init[1]));
  if (size > kRescaleThreshold) {
    auto scaled = std::make_shared<DenseSolution<2>>(*left);
    scaled->scale(1.0 / size);
    left = scaled;
    init = {init[0] / size, init[1] / size};
  }
  auto right = detail::shoot_flux(c.kappa, c.rho, lambda / eps, 0.0, c.b, init, inst.ivp);
  return {std::move(left), std::move(right)};
}

ShootResult shoot_miss(const ProblemInstance& inst, double lambda) {
  if (!(lambda >= 0.0)) throw ValidationError("shoot_miss: lambda must be nonnegative");
  const Trajectory t = shoot(inst, lambda);
  const double gap = (inst.coeffs.b - inst.coeffs.a) / kZeroScanPoints;
  detail::SignCounter counter;
  detail::scan(*t.left, gap, counter);
  detail::scan(*t.right, gap, counter);
  const double ub = t.right->back()[0];
  return {counter.sup() > 0 ? ub / counter.sup() : ub, counter.changes()};
}

double eigenvalue(const ProblemInstance& inst, int n) {
  if (n < 1) throw ValidationError("eigenvalue index must be >= 1");
  const double s0 = optical_length(inst.coeffs);
  const double seed = inst.epsilon * std::numbers::pi * std::numbers::pi * n * n / (s0 * s0);
  auto shot = [&inst](double lam) {
    const ShootResult r = shoot_miss(inst, lam);
    return detail::Shot{r.miss, r.zero_count};
  };
  return detail::dirichlet_eigenvalue(shot, seed, n, "eigenvalue");
}

ExactEigenpair eigenfunction_at(const ProblemInstance& inst, int n, double lambda, NormMode mode) {
  const Trajectory t = shoot(inst, lambda);
  PiecewiseFunction u{SampledFunction::from_flux_solution(t.left, inst.coeffs.k),
                      SampledFunction::from_flux_solution(t.right, inst.coeffs.kappa)};
  const double norm = space_norm(inst.coeffs, u, mode);
  return ExactEigenpair{n, lambda, u.scaled(1.0 / norm), mode};
}

ExactEigenpair eigenfunction(const ProblemInstance& inst, int n, NormMode mode) {
  return eigenfunction_at(inst, n, eigenvalue(inst, n), mode);
}

double space_inner(const CoefficientSet& c, const PiecewiseFunction& f, const PiecewiseFunction& g, NormMode mode) {
  const bool weighted = mode == NormMode::kWeighted;
  const double left = adaptive_quadrature(
      [&](double x) { return (weighted ? c.r(x) : 1.0) * f.left(x) * g.left(x); }, c.a, 0.0);
  const double right = adaptive_quadrature(
      [&](double x) { return (weighted ? c.rho(x) : 1.0) * f.right(x) * g.right(x); }, 0.0, c.b);
  return left + right;
}

double space_norm(const CoefficientSet& c, const PiecewiseFunction& f, NormMode mode) {
  return std::sqrt(std::max(0.0, space_inner(c, f, f, mode)));
}

double plain_distance(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  auto sq = [](double v) { return v * v; };
  const double left =
      adaptive_quadrature([&](double x) { return sq(f.left(x) - g.left(x)); }, f.a(), 0.0);
  const double right =
      adaptive_quadrature([&](double x) { return sq(f.right(x) - g.right(x)); }, 0.0, f.b());
  return std::sqrt(left + right);
}

std::vector<double> interior_zeros(const PiecewiseFunction& f, int samples) {
  const double a = f.a(), b = f.b();
  std::vector<double> zeros;
  double x_prev = 0.0, f_prev = 0.0;
  bool have_prev = false;
  for (int i = 1; i < samples; ++i) {
    const double x = a + (b - a) * i / samples;
    const double v = f(x);
    if (v == 0.0) {
      zeros.push_back(x);
      have_prev = false;
      continue;
    }
    if (have_prev && (v > 0) != (f_prev > 0)) {
      // The pieces may disagree at 0 by a tiny jump; refine within one piece only.
      if (x_prev < 0.0 && x >= 0.0) {
        zeros.push_back(0.0);
      } else {
        zeros.push_back(brent_root([&f](double t) { return f(t); }, x_prev, x, 1e-14));
      }
    }
    x_prev = x;
    f_prev = v;
    have_prev = true;
  }
  return zeros;
}

}  // namespace dcstring

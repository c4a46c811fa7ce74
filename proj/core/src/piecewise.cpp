#include "dcstring/piecewise.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcstring {

SampledFunction::SampledFunction(Interval domain, ValueFn value, JetFn jet)
    : domain_(domain), value_(std::move(value)), jet_(std::move(jet)) {}

SampledFunction SampledFunction::zero(Interval domain) {
  return SampledFunction(domain, [](double) { return 0.0; }, [](double) { return Jet{}; });
}

SampledFunction SampledFunction::from_flux_solution(std::shared_ptr<const DenseSolution<2>> sol, ScalarField p) {
  const double lo = std::min(sol->x0(), sol->x1());
  const double hi = std::max(sol->x0(), sol->x1());
  auto value = [sol](double x) { return (*sol)(x)[0]; };
  auto jet = [sol, p = std::move(p)](double x) {
    const State<2> s = (*sol)(x);
    const State<2> ds = sol->derivative(x);
    const Jet pj = p.jet(x);
    const double du = s[1] / pj.value;
    return Jet{s[0], du, (ds[1] - pj.d1 * du) / pj.value};
  };
  return SampledFunction({lo, hi}, std::move(value), std::move(jet));
}

SampledFunction SampledFunction::combine(double alpha, const SampledFunction& f, double beta,
                                         const SampledFunction& g) {
  const Interval dom{std::max(f.domain().lo, g.domain().lo), std::min(f.domain().hi, g.domain().hi)};
  if (!(dom.lo < dom.hi)) throw std::invalid_argument("SampledFunction::combine: disjoint domains");
  auto value = [alpha, beta, fv = f.value_, gv = g.value_](double x) { return alpha * fv(x) + beta * gv(x); };
  auto jet = [alpha, beta, fj = f.jet_, gj = g.jet_](double x) {
    const Jet u = fj(x), v = gj(x);
    return Jet{alpha * u.value + beta * v.value, alpha * u.d1 + beta * v.d1, alpha * u.d2 + beta * v.d2};
  };
  return SampledFunction(dom, std::move(value), std::move(jet));
}

SampledFunction SampledFunction::scaled(double factor) const {
  auto value = [factor, fv = value_](double x) { return factor * fv(x); };
  auto jet = [factor, fj = jet_](double x) {
    const Jet u = fj(x);
    return Jet{factor * u.value, factor * u.d1, factor * u.d2};
  };
  return SampledFunction(domain_, std::move(value), std::move(jet));
}

}  // namespace dcstring

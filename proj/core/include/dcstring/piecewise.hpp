#pragma once

#include <functional>
#include <memory>

#include "dcstring/coeffs.hpp"
#include "dcstring/ode.hpp"

namespace dcstring {

/// A function on a closed interval that can report its first two derivatives.
class SampledFunction {
 public:
  using ValueFn = std::function<double(double)>;
  using JetFn = std::function<Jet(double)>;

  SampledFunction() = default;
  SampledFunction(Interval domain, ValueFn value, JetFn jet);

  /// Identically zero on `domain`.
  static SampledFunction zero(Interval domain);

  /// u from a dense solution of the flux system (u, p u'); derivatives are rebuilt
  /// from the interpolant, so they are not just the right-hand side played back.
  static SampledFunction from_flux_solution(std::shared_ptr<const DenseSolution<2>> sol, ScalarField p);

  /// alpha * f + beta * g on the common domain of f and g.
  static SampledFunction combine(double alpha, const SampledFunction& f, double beta, const SampledFunction& g);

  double operator()(double x) const { return value_(x); }
  Jet jet(double x) const { return jet_(x); }
  const Interval& domain() const { return domain_; }
  SampledFunction scaled(double factor) const;

 private:
  Interval domain_;
  ValueFn value_;
  JetFn jet_;
};

/// A function on [a, 0] U [0, b] with independent one-sided values at 0.
struct PiecewiseFunction {
  SampledFunction left;
  SampledFunction right;

  double a() const { return left.domain().lo; }
  double b() const { return right.domain().hi; }

  /// Uses the left piece for x < 0 and the right piece for x >= 0.
  double operator()(double x) const { return x < 0.0 ? left(x) : right(x); }
  Jet jet(double x) const { return x < 0.0 ? left.jet(x) : right.jet(x); }

  PiecewiseFunction scaled(double factor) const { return {left.scaled(factor), right.scaled(factor)}; }
};

}  // namespace dcstring

#pragma once

#include <string>
#include <string_view>

#include "dcstring/expr.hpp"

namespace dcstring {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Value with its first two derivatives at one point.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// A positive coefficient given by an expression, with symbolic first and second derivatives.
class ScalarField {
 public:
  /// Number of uniform samples used for the positivity and finiteness checks.
  static constexpr int kCheckSamples = 1001;

  ScalarField(std::string source, Expr value, Interval domain);

  double operator()(double x) const { return value_.eval(x); }
  double d1(double x) const { return d1_.eval(x); }
  double d2(double x) const { return d2_.eval(x); }
  Jet jet(double x) const { return {value_.eval(x), d1_.eval(x), d2_.eval(x)}; }

  const Interval& domain() const { return domain_; }
  const std::string& source() const { return source_; }
  const Expr& expr() const { return value_; }
  const Expr& d1_expr() const { return d1_; }
  const Expr& d2_expr() const { return d2_; }

 private:
  std::string source_;
  Expr value_;
  Expr d1_;
  Expr d2_;
  Interval domain_;
};

/// Parses `src` and validates positivity on a uniform sample of `domain`.
/// Positivity is checked by sampling only; a field that dips below zero
/// between samples is not detected.
ScalarField parse_field(std::string_view src, Interval domain);

/// Coefficients of the two-part string: stiff-light part on (a, 0) with
/// stiffness k and density eps*r, soft-heavy part on (0, b) with stiffness
/// eps*kappa and density rho.
struct CoefficientSet {
  double a;
  double b;
  ScalarField k;
  ScalarField r;
  ScalarField kappa;
  ScalarField rho;
};

CoefficientSet make_coefficient_set(double a, double b, std::string_view k_src, std::string_view r_src,
                                    std::string_view kappa_src, std::string_view rho_src);

}  // namespace dcstring

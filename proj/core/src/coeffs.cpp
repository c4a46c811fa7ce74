#include "dcstring/coeffs.hpp"

#include <cmath>
#include <sstream>

#include "dcstring/error.hpp"

namespace dcstring {

namespace {

std::string describe(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(10);
  os << x;
  return os.str();
}

}  // namespace

ScalarField::ScalarField(std::string source, Expr value, Interval domain)
    : source_(std::move(source)),
      value_(value.folded()),
      d1_(value_.derivative().folded()),
      d2_(d1_.derivative().folded()),
      domain_(domain) {}

ScalarField parse_field(std::string_view src, Interval domain) {
  if (!(domain.lo < domain.hi) || !std::isfinite(domain.lo) || !std::isfinite(domain.hi)) {
    throw ValidationError("empty or non-finite domain [" + describe(domain.lo) + ", " + describe(domain.hi) + "]");
  }
  ScalarField field(std::string(src), parse_expression(src), domain);
  const int n = ScalarField::kCheckSamples;
  for (int i = 0; i < n; ++i) {
    const double x = domain.lo + domain.length() * static_cast<double>(i) / (n - 1);
    const Jet j = field.jet(x);
    if (!std::isfinite(j.value) || !std::isfinite(j.d1) || !std::isfinite(j.d2)) {
      throw ValidationError("non-finite evaluation at x = " + describe(x), x);
    }
    if (!(j.value > 0.0)) {
      throw ValidationError("positivity violated at x = " + describe(x) + " (value " + describe(j.value) + ")", x);
    }
  }
  return field;
}

CoefficientSet make_coefficient_set(double a, double b, std::string_view k_src, std::string_view r_src,
                                    std::string_view kappa_src, std::string_view rho_src) {
  if (!(a < 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ValidationError("endpoints must satisfy a < 0 < b (got a = " + describe(a) + ", b = " + describe(b) + ")");
  }
  auto field = [](const char* name, std::string_view src, Interval dom) {
    try {
      return parse_field(src, dom);
    } catch (const ParseError& e) {
      throw ParseError(std::string(name) + ": " + e.detail(), e.position());
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(name) + ": " + e.what(), e.where());
    }
  };
  const Interval left{a, 0.0};
  const Interval right{0.0, b};
  return CoefficientSet{a, b, field("k", k_src, left), field("r", r_src, left), field("kappa", kappa_src, right),
                        field("rho", rho_src, right)};
}

}  // namespace dcstring

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dcstring/error.hpp"
#include "dcstring/exact.hpp"
#include "dcstring/highfreq.hpp"
#include "dcstring/quadrature.hpp"
#include "dcstring/roots.hpp"
#include "fields.hpp"

using namespace dcstring;
using std::numbers::pi;

namespace {

struct Fixture {
  CoefficientSet cs;
  WkbFrame frame;
};

const Fixture& example() {
  static const Fixture s = [] {
    CoefficientSet cs = testing_support::example_set();
    WkbFrame f = build_wkb_frame(cs);
    return Fixture{std::move(cs), std::move(f)};
  }();
  return s;
}

const Fixture& constant() {
  static const Fixture s = [] {
    CoefficientSet cs = testing_support::constant_set();
    WkbFrame f = build_wkb_frame(cs);
    return Fixture{std::move(cs), std::move(f)};
  }();
  return s;
}

PencilSolution pencil(const Fixture& s, double omega) { return pencil_solve(s.cs, s.frame, omega); }

// First omega above `from` where g changes sign, refined hard.
double locate(const std::function<double(double)>& g, double from, double step = 0.01) {
  double lo = from, glo = g(lo);
  for (double hi = from + step; hi < from + 10; hi += step) {
    const double ghi = g(hi);
    if ((glo > 0) != (ghi > 0)) return brent_root(g, lo, hi, 1e-15);
    lo = hi;
    glo = ghi;
  }
  ADD_FAILURE() << "no sign change";
  return from;
}

}  // namespace

TEST(WkbFrame, ConstantCoefficients) {
  const Fixture& s = constant();
  EXPECT_NEAR(s.frame.S0, 1.0, 1e-12);
  for (double x : {0.0, 0.3, 0.77, 1.0}) {
    EXPECT_NEAR(s.frame.S(x), 1.0 - x, 1e-10);
    EXPECT_NEAR(s.frame.c(x), 1.0, 1e-14);
    EXPECT_NEAR(s.frame.h(x), 0.0, 1e-12);
  }
  EXPECT_NEAR(s.frame.Sp0, -1.0, 1e-10);
  EXPECT_EQ(s.frame.cp0, 0.0);
}

TEST(WkbFrame, ExampleClosedForms) {
  const Fixture& s = example();
  EXPECT_NEAR(s.frame.S0, 1.218951, 1e-6);
  EXPECT_NEAR(s.frame.S0, 2.0 / 3.0 * (2 * std::sqrt(2.0) - 1), 1e-10);
  for (double x : {0.0, 0.25, 0.5, 0.9}) {
    EXPECT_NEAR(s.frame.S(x), 2.0 / 3.0 * (2 * std::sqrt(2.0) - std::pow(1 + x, 1.5)), 1e-9);
    EXPECT_NEAR(s.frame.c(x), std::pow(1 + x, -0.25), 1e-14);
  }
  EXPECT_NEAR(s.frame.c0, 1.0, 1e-15);
  EXPECT_NEAR(s.frame.Sp0, -1.0, 1e-10);
  EXPECT_NEAR(s.frame.cp0, -0.25, 1e-14);
  EXPECT_EQ(s.frame.S(1.0), 0.0);
  EXPECT_EQ(s.frame.h(1.0), 0.0);
}

TEST(WkbFrame, Residuals) {
  for (const Fixture* s : {&constant(), &example()}) {
    const WkbResiduals r = wkb_residuals(s->cs, s->frame);
    EXPECT_LE(r.eikonal, 1e-8);
    EXPECT_LE(r.transport_c, 1e-6);
    EXPECT_LE(r.transport_h, 1e-6);
  }
}

TEST(Pencil, ConstantQuarterPi) {
  const PencilSolution p = pencil(constant(), pi / 4);
  ASSERT_TRUE(p.mu.has_value());
  EXPECT_NEAR(*p.mu, -pi / 4, 1e-8);
  EXPECT_NEAR(p.delta, -pi / 4, 1e-8);
  EXPECT_EQ(p.kind, PencilCase::kRegular);
  EXPECT_EQ(p.wraps, 0);
}

TEST(Pencil, TableDelta) {
  EXPECT_NEAR(pencil(example(), 0.6270).delta, -0.63509, 5e-3);
  EXPECT_NEAR(pencil(example(), 1.260).delta, -1.3217, 5e-3);
}

TEST(Pencil, NonPositiveOmegaRejected) {
  EXPECT_THROW(pencil(example(), 0.0), ValidationError);
  EXPECT_THROW(pencil(example(), -1.0), ValidationError);
}

TEST(Pencil, BoundaryConditionAndNormalisation) {
  const Fixture& s = example();
  for (double w : {0.3, 0.627, 1.0, 1.26, 1.86, 2.5}) {
    const PencilSolution p = pencil(s, w);
    const double scale = std::abs(p.kv0p_at0) + w * std::abs(p.v0_at0);
    EXPECT_LE(std::abs(pencil_boundary_residual(s.frame, p)), 1e-12 * scale) << w;
    const double norm = adaptive_quadrature(
        [&](double x) { const double v = p.v0(x); return s.cs.r(x) * v * v; }, s.cs.a, 0.0);
    EXPECT_NEAR(norm, 1.0, 1e-9) << w;
    EXPECT_EQ(p.v0(s.cs.a), 0.0);
    EXPECT_GT(p.v0.jet(s.cs.a).d1, 0.0);
    // (k v')' + w^2 r v = 0 with k = 1 on the example set
    for (double x : {-0.7, -0.3}) {
      const Jet j = p.v0.jet(x);
      EXPECT_NEAR(j.d2 + w * w * s.cs.r(x) * j.value, 0.0, 1e-6 * (1 + w * w)) << w;
    }
  }
}

TEST(Pencil, DeltaRangeAndLocalContinuity) {
  const Fixture& s = example();
  for (int i = 1; i <= 300; ++i) {
    const double w = 0.02 * i;
    const PencilSolution p = pencil(s, w);
    EXPECT_GT(p.delta, -pi / 2);
    EXPECT_LE(p.delta, pi / 2);
    if (p.kind != PencilCase::kRegular) continue;
    // away from branch points
    if (std::abs(p.v0_at0) < 1e-3 || std::abs(*p.mu) < 1e-3) continue;
    EXPECT_LT(std::abs(pencil(s, w * (1 + 1e-9)).delta - p.delta), 1e-6) << w;
    EXPECT_LT(std::abs(pencil(s, w * (1 - 1e-9)).delta - p.delta), 1e-6) << w;
    EXPECT_EQ(p.delta > 0, *p.mu > 0) << w;
  }
}

TEST(Pencil, DegenerateFlags) {
  const Fixture& s = example();
  const double dir = locate([&](double w) { return pencil(s, w).v0_at0; }, 0.5);
  const PencilSolution pd = pencil(s, dir);
  EXPECT_EQ(pd.kind, PencilCase::kDeltaZero);
  EXPECT_EQ(pd.delta, 0.0);
  EXPECT_FALSE(pd.mu.has_value());

  const double neu = locate([&](double w) { return pencil(s, w).kv0p_at0; }, 0.5);
  const PencilSolution pn = pencil(s, neu);
  EXPECT_EQ(pn.kind, PencilCase::kDeltaHalfPi);
  EXPECT_EQ(pn.delta, pi / 2);
  EXPECT_LT(neu, dir);
  EXPECT_EQ(pencil(s, neu * 0.99).wraps, 0);
  EXPECT_EQ(pencil(s, neu * 1.01).wraps, 1);
}

TEST(Omega1, VanishesOnConstantCoefficients) {
  for (double w : {0.2, 0.7, 1.3, 2.0, 4.0}) {
    const Omega1 o = omega1_of(constant().frame, pencil(constant(), w));
    EXPECT_NEAR(o.omega1, 0.0, 1e-12) << w;
  }
}

TEST(Omega1, SolvesTheSolvabilityCondition) {
  const Fixture& s = example();
  for (double w : {0.4, 0.627, 1.26, 1.86}) {
    const PencilSolution p = pencil(s, w);
    const Omega1 o = omega1_of(s.frame, p);
    const double lhs = p.v0_at0 * s.frame.kappa0 * o.data.f(o.omega1);
    EXPECT_NEAR(lhs, -2 * w * o.omega1, 1e-12 * (1 + std::abs(lhs))) << w;
    // g2 = (c'(0) - S'(0) h(0)) sin d + omega1 S'(0) c(0) cos d
    const double sd = std::sin(p.delta), cd = std::cos(p.delta);
    EXPECT_NEAR(o.data.g2(o.omega1),
                (s.frame.cp0 - s.frame.Sp0 * s.frame.h0) * sd + o.omega1 * s.frame.Sp0 * s.frame.c0 * cd, 1e-14);
  }
}

TEST(Omega1, ContinuousThroughDeltaZero) {
  const Fixture& s = example();
  const double dir = locate([&](double w) { return pencil(s, w).v0_at0; }, 0.5);
  const PencilSolution at = pencil(s, dir);
  ASSERT_EQ(at.kind, PencilCase::kDeltaZero);
  const double o_at = omega1_of(s.frame, at).omega1;
  const double b_at = beta0_of(at, s.frame, 0);
  for (double rel : {1e-5, -1e-5}) {
    const PencilSolution p = pencil(s, dir * (1 + rel));
    ASSERT_EQ(p.kind, PencilCase::kRegular);
    EXPECT_NEAR(beta0_of(p, s.frame, 0), b_at, 1e-4);
    EXPECT_NEAR(omega1_of(s.frame, p).omega1, o_at, 1e-4);
  }
}

TEST(Beta0, ConstantCaseAndParity) {
  const PencilSolution p = pencil(constant(), pi / 4);
  const double b = beta0_of(p, constant().frame, 4);
  EXPECT_NEAR(b, -std::sqrt(2.0) * p.v0_at0, 1e-10);
  EXPECT_EQ(beta0_of(p, constant().frame, 5), -b);
  const PencilSolution q = pencil(example(), 1.1);
  EXPECT_EQ(beta0_of(q, example().frame, 3), -beta0_of(q, example().frame, 2));
}

TEST(Quantization, ConstantClosedForm) {
  const Fixture& s = constant();
  for (double w : {0.1, 0.5, 1.2}) {
    // omega b / eps - arctan(tan(omega a)) - pi l
    const double expect = w / 0.05 - std::atan(std::tan(-w)) - 3 * pi;
    EXPECT_NEAR(quantization_residual(s.frame, s.cs, 0.05, 3, w), expect, 1e-8) << w;
  }
}

TEST(Quantization, SlopeIsAboutS0OverEps) {
  const Fixture& s = example();
  const double eps = 0.05, dw = 1e-5;
  for (double w : {0.3, 0.62, 1.2}) {
    const double slope = (quantization_residual(s.frame, s.cs, eps, 5, w + dw) -
                          quantization_residual(s.frame, s.cs, eps, 5, w - dw)) / (2 * dw);
    EXPECT_NEAR(slope / (s.frame.S0 / eps), 1.0, 0.15) << w;
  }
}

TEST(Admissible, ConstantIdentity) {
  const Fixture& s = constant();
  const double eps = 0.05;
  const AdmissibleFrequency a = admissible_frequency(s.frame, s.cs, eps, 5);
  EXPECT_NEAR(a.omega, eps * pi * 5 / (1 + eps), 1e-10);
  EXPECT_NEAR(a.omega, 0.747998, 1e-6);
  EXPECT_NEAR(a.omega / std::sqrt(eps), 3.3451499, 1e-6);
  EXPECT_NEAR(a.omega / std::sqrt(eps), std::sqrt(eigenvalue(make_instance(s.cs, eps), 5)), 1e-8);
  EXPECT_NEAR(quantization_residual(s.frame, s.cs, eps, 5, a.omega), 0.0, 1e-8);
}

TEST(Admissible, RootsAreRootsAndLargestIsChosen) {
  const Fixture& s = example();
  for (int l : {3, 5, 10}) {
    const AdmissibleFrequency a = admissible_frequency(s.frame, s.cs, 0.05, l);
    ASSERT_FALSE(a.roots.empty());
    EXPECT_EQ(a.omega, a.roots.back());
    for (double r : a.roots) EXPECT_LE(std::abs(quantization_residual(s.frame, s.cs, 0.05, l, r)), 1e-6);
  }
  EXPECT_THROW(admissible_frequency(s.frame, s.cs, 0.05, 0), ValidationError);
}

TEST(Admissible, TableFrequencies) {
  const Fixture& s = example();
  EXPECT_NEAR(admissible_frequency(s.frame, s.cs, 0.05, 5).omega, 0.6270, 5e-3);
  EXPECT_NEAR(admissible_frequency(s.frame, s.cs, 0.05, 15).omega, 1.860, 5e-3);
}

TEST(Omega1, TableValues) {
  const Fixture& s = example();
  EXPECT_NEAR(omega1_of(s.frame, pencil(s, 0.6270)).omega1, -0.22224, 5e-3);
  EXPECT_NEAR(omega1_of(s.frame, pencil(s, 1.860)).omega1, -0.02669, 5e-3);
}

TEST(FrequencyForIndex, AgreesWithLiteralWhenUnwrapped) {
  const Fixture& s = example();
  for (int n : {2, 5, 10}) {
    const AdmissibleFrequency a = frequency_for_index(s.frame, s.cs, 0.05, n);
    EXPECT_EQ(a.pencil.wraps, 0);
    EXPECT_EQ(a.l, n);
    EXPECT_NEAR(a.omega, admissible_frequency(s.frame, s.cs, 0.05, n).omega, 1e-12);
  }
  const AdmissibleFrequency w = frequency_for_index(s.frame, s.cs, 0.05, 15);
  EXPECT_EQ(w.pencil.wraps, 1);
  EXPECT_EQ(w.l, 14);
}

TEST(BuildY, TableHighFrequencyValue) {
  const Fixture& s = example();
  const HighFreqApprox y = build_Y(s.cs, s.frame, admissible_frequency(s.frame, s.cs, 0.05, 10), 0.05);
  EXPECT_NEAR(std::sqrt(y.lambda_pred), 5.51464, 5e-3);
}

TEST(BuildY, EndpointInterfaceAndQuantization) {
  const Fixture& s = example();
  const double eps = 0.05;
  for (int l = 5; l <= 15; ++l) {
    const AdmissibleFrequency a = admissible_frequency(s.frame, s.cs, eps, l);
    if (a.pencil.kind == PencilCase::kDeltaHalfPi) continue;
    const HighFreqApprox y = build_Y(s.cs, s.frame, a, eps);
    EXPECT_EQ(y.Y(1.0), 0.0);
    EXPECT_EQ(y.Y(s.cs.a), 0.0);
    double sup = 0;
    for (int i = 0; i <= 4000; ++i) sup = std::max(sup, std::abs(y.Y(-1.0 + 2.0 * i / 4000)));
    EXPECT_LE(std::abs(y.Y.right(0.0) - y.Y.left(0.0)), 10 * eps * eps * sup) << l;
    EXPECT_NEAR(y.gamma * s.frame.S0 - y.delta - pi * l, 0.0, 1e-8) << l;
    EXPECT_DOUBLE_EQ(y.lambda_pred, eps * y.gamma * y.gamma);
  }
}

TEST(BuildY, OperatorResidualShrinksWithEpsilon) {
  const Fixture& s = example();
  auto relative = [&](double eps, int l) {
    const HighFreqApprox y = build_Y(s.cs, s.frame, admissible_frequency(s.frame, s.cs, eps, l), eps);
    const double g2 = y.gamma * y.gamma;
    auto res = [&](double x) {
      const Jet j = y.Y.right.jet(x);
      const Jet k = s.cs.kappa.jet(x);
      const double r = eps * (k.d1 * j.d1 + k.value * j.d2) + eps * g2 * s.cs.rho(x) * j.value;
      return r * r;
    };
    auto ref = [&](double x) {
      const double r = eps * g2 * s.cs.rho(x) * y.Y.right(x);
      return r * r;
    };
    return std::sqrt(adaptive_quadrature(res, 0, 1, 1e-14) / adaptive_quadrature(ref, 0, 1, 1e-14));
  };
  const double coarse = relative(0.05, 10);
  const double fine = relative(0.025, 20);
  EXPECT_LT(coarse, 0.05);
  EXPECT_LT(fine, 0.75 * coarse);
}

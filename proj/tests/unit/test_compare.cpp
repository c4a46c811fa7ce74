#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dcstring/compare.hpp"
#include "dcstring/error.hpp"
#include "dcstring/lowfreq.hpp"
#include "fields.hpp"

using namespace dcstring;
using std::numbers::pi;

namespace {

ProblemInstance example(double eps = 0.05) { return make_instance(testing_support::example_set(), eps); }

const std::vector<ComparisonRow>& table_rows() {
  static const std::vector<ComparisonRow> rows = comparison_table(example(), {5, 10, 15});
  return rows;
}

}  // namespace

TEST(ComparisonTable, ConstantIdentity) {
  for (double eps : {0.1, 0.05}) {
    const ProblemInstance inst = make_instance(testing_support::constant_set(), eps);
    const std::vector<ComparisonRow> rows = comparison_table(inst, {1, 2, 3, 4});
    for (const ComparisonRow& r : rows) {
      EXPECT_NEAR(r.sqrt_exact, r.omega / std::sqrt(eps), 1e-8) << r.n;
      EXPECT_NEAR(r.omega, eps * pi * r.n / (1 + eps), 1e-10) << r.n;
      EXPECT_NEAR(r.omega1, 0.0, 1e-12);
      EXPECT_NEAR(r.sqrt_lowfreq, std::sqrt(eps) * pi * r.n, 1e-8);
      EXPECT_EQ(r.l, r.n);
    }
  }
}

TEST(ComparisonTable, EmptyIndexListRejected) { EXPECT_THROW(comparison_table(example(), {}), ValidationError); }

TEST(ComparisonTable, ShootingColumnsMatchTable) {
  const auto& rows = table_rows();
  ASSERT_EQ(rows.size(), 3u);
  const double exact[] = {2.76675, 5.52678, 8.27450};
  const double low[] = {2.88055, 5.76252, 8.64418};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(rows[i].sqrt_exact, exact[i], 2e-4) << rows[i].n;
    EXPECT_NEAR(rows[i].sqrt_lowfreq, low[i], 2e-4) << rows[i].n;
  }
}

TEST(ComparisonTable, WkbColumnsMatchTable) {
  const auto& rows = table_rows();
  ASSERT_EQ(rows.size(), 3u);
  const double omega[] = {0.6270, 1.260, 1.860};
  const double omega1[] = {-0.22224, -0.53779, -0.02669};
  const double delta[] = {-0.63509, -1.3217, -0.03770};
  const double high[] = {2.75433, 5.51464, 8.3122};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(rows[i].omega, omega[i], 5e-3) << rows[i].n;
    EXPECT_NEAR(rows[i].omega1, omega1[i], 5e-3) << rows[i].n;
    EXPECT_NEAR(rows[i].delta, delta[i], 5e-3) << rows[i].n;
    EXPECT_NEAR(rows[i].sqrt_highfreq, high[i], 5e-3) << rows[i].n;
  }
}

TEST(ComparisonTable, HighBeatsLowOnEigenvalues) {
  const std::vector<ComparisonRow> rows =
      comparison_table(example(), {5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15});
  for (const ComparisonRow& r : rows) {
    if (r.kind == PencilCase::kDeltaHalfPi) continue;
    EXPECT_LT(std::abs(r.sqrt_highfreq - r.sqrt_exact), std::abs(r.sqrt_lowfreq - r.sqrt_exact)) << r.n;
  }
}

TEST(Convergence, ConstantClosedForm) {
  const CoefficientSet cs = testing_support::constant_set();
  const std::vector<double> eps{0.1, 0.05, 0.025, 0.0125};
  for (int n : {1, 2}) {
    const ConvergenceReport rep = convergence_study(cs, n, eps, ConvergenceKind::kLowFreqEigenvalue);
    std::vector<double> expected;
    for (std::size_t i = 0; i < eps.size(); ++i) {
      const double e = eps[i];
      expected.push_back(e * pi * pi * n * n * std::abs(1 / ((1 + e) * (1 + e)) - 1.0));
      EXPECT_NEAR(rep.errors[i], expected.back(), 1e-8 * expected.back()) << n << " " << e;
    }
    // the error is eps^2 (2 - 3 eps + ...) pi^2 n^2, so the fitted slope sits a little below 2
    EXPECT_NEAR(rep.fitted_slope, loglog_slope(eps, expected), 1e-7);
    EXPECT_NEAR(rep.fitted_slope, 1.9415, 1e-3);
    const double tail = std::log(rep.errors[2] / rep.errors[3]) / std::log(2.0);
    EXPECT_GT(tail, 1.97);
  }
}

TEST(Convergence, LowFrequencyRatesOnExample) {
  const CoefficientSet cs = testing_support::example_set();
  const std::vector<double> eps{0.1, 0.05, 0.025, 0.0125};
  for (int n : {1, 2, 3}) {
    EXPECT_GE(convergence_study(cs, n, eps, ConvergenceKind::kLowFreqEigenvalue).fitted_slope, 1.9) << n;
    EXPECT_GE(convergence_study(cs, n, eps, ConvergenceKind::kLowFreqEigenfunction).fitted_slope, 1.9) << n;
  }
}

TEST(Convergence, HighFrequencyErrorsAreSmall) {
  const ConvergenceReport rep = convergence_study(testing_support::example_set(), 5, {0.1, 0.05, 0.025},
                                                  ConvergenceKind::kHighFreqEigenvalue);
  ASSERT_EQ(rep.errors.size(), 3u);
  for (double e : rep.errors) EXPECT_LT(e, 1e-2);
}

TEST(Convergence, InputValidation) {
  const CoefficientSet cs = testing_support::constant_set();
  EXPECT_THROW(convergence_study(cs, 1, {0.1, 0.05}, ConvergenceKind::kLowFreqEigenvalue), ValidationError);
  EXPECT_THROW(convergence_study(cs, 1, {0.1, 0.05, 0.05}, ConvergenceKind::kLowFreqEigenvalue), ValidationError);
  EXPECT_THROW(convergence_study(cs, 1, {0.025, 0.05, 0.1}, ConvergenceKind::kLowFreqEigenvalue), ValidationError);
}

TEST(Convergence, KindNames) {
  EXPECT_STREQ(to_string(ConvergenceKind::kLowFreqEigenvalue), "lowfreq-eigenvalue");
  EXPECT_STREQ(to_string(ConvergenceKind::kLowFreqEigenfunction), "lowfreq-eigenfunction");
  EXPECT_STREQ(to_string(ConvergenceKind::kHighFreqEigenvalue), "highfreq-eigenvalue");
}

TEST(SecondOrder, ConstantNuAndThirdOrderRemainder) {
  const CoefficientSet cs = testing_support::constant_set();
  for (int n = 1; n <= 3; ++n) {
    const LowFreqApprox ap = build_lowfreq(cs, n);
    const double nu_ref = -2 * pi * pi * n * n;
    EXPECT_NEAR(ap.nu, nu_ref, 1e-8 * std::abs(nu_ref));
    double lo = 1e300, hi = 0;
    for (double eps : {0.1, 0.05, 0.025, 0.0125}) {
      const double ratio =
          std::abs(eigenvalue(make_instance(cs, eps), n) - lowfreq_prediction(ap, eps).lambda) / (eps * eps * eps);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    // remainder / eps^3 tends to 3 pi^2 n^2
    EXPECT_LT(hi, 3.5 * pi * pi * n * n);
    EXPECT_GT(lo, 2.0 * pi * pi * n * n);
  }
}

TEST(LogLogSlope, Examples) {
  EXPECT_NEAR(loglog_slope({1, 2, 4}, {3, 12, 48}), 2.0, 1e-14);
  EXPECT_NEAR(loglog_slope({0.1, 0.01}, {1, 1}), 0.0, 1e-14);
  EXPECT_THROW(loglog_slope({1}, {1}), ValidationError);
  EXPECT_THROW(loglog_slope({1, 2}, {1, 0}), NumericalError);
}

TEST(Residual, ExactEigenpairIsNearlyExact) {
  const ProblemInstance inst = example();
  for (int n : {1, 5, 12}) {
    const ExactEigenpair ex = eigenfunction(inst, n, NormMode::kWeighted);
    const ResidualNorms r = residual_norm(inst, ex.u, ex.lambda);
    EXPECT_LT(r.interior, 1e-5 * std::max(1.0, ex.lambda)) << n;
    EXPECT_LT(r.jump0, 1e-10) << n;
    EXPECT_LT(r.jump_flux, 1e-8) << n;
  }
}

TEST(Residual, ConstantFunctionOnConstantCoefficients) {
  const ProblemInstance inst = make_instance(testing_support::constant_set(), 0.05);
  const PiecewiseFunction one = testing_support::constant_piecewise(-1, 1, 1.0);
  const ResidualNorms r = residual_norm(inst, one, 2.0);
  // (A - 2) 1 = 2 on both pieces, weights 1: sqrt(4 * 2)
  EXPECT_NEAR(r.interior, std::sqrt(8.0), 1e-10);
  EXPECT_EQ(r.jump0, 0.0);
  EXPECT_EQ(r.jump_flux, 0.0);
}

TEST(Residual, LowFrequencyQuasimodeImprovesWithEpsilon) {
  const CoefficientSet cs = testing_support::example_set();
  const LowFreqApprox ap = build_lowfreq(cs, 2);
  std::vector<double> eps{0.1, 0.05, 0.025, 0.0125}, res;
  for (double e : eps) {
    const LowFreqPrediction p = lowfreq_prediction(ap, e);
    const ResidualNorms r = residual_norm(make_instance(cs, e), p.u, p.lambda);
    EXPECT_LT(r.jump0, 1e-6 * e);
    res.push_back(r.interior);
  }
  EXPECT_GE(loglog_slope(eps, res), 1.9);
}

TEST(Alignment, SignOfInnerProduct) {
  const PiecewiseFunction one = testing_support::constant_piecewise(-1, 1, 1.0);
  EXPECT_EQ(alignment_sign(one, one.scaled(-2.0)), -1.0);
  EXPECT_EQ(alignment_sign(one, one.scaled(3.0)), 1.0);
  EXPECT_EQ(alignment_sign(one, one.scaled(0.0)), 1.0);
}

TEST(Figure, GridAndOrdering) {
  const ProblemInstance inst = example();
  for (int n : {5, 10, 15}) {
    const FigureData fd = figure_data(inst, n, 201);
    ASSERT_EQ(fd.rows.size(), 201u);
    EXPECT_EQ(fd.rows.front().x, -1.0);
    EXPECT_EQ(fd.rows.back().x, 1.0);
    EXPECT_EQ(fd.rows[100].x, 0.0);
    EXPECT_LT(fd.distance_high, fd.distance_low) << n;
    EXPECT_EQ(fd.rows.front().u_exact, 0.0);
    EXPECT_EQ(fd.rows.back().u_high, 0.0);
  }
  EXPECT_THROW(figure_data(inst, 3, 1), ValidationError);
}

TEST(Figure, LowFrequencyShapeOnStiffPart) {
  const ProblemInstance inst = example();
  const FigureData fd = figure_data(inst, 4, 101);
  const LowFreqApprox ap = build_lowfreq(inst.coeffs, 4);
  // on (a, 0) the normalised prediction is a fixed multiple of eps w
  const double scale = fd.rows[25].u_low / (0.05 * ap.w_left(fd.rows[25].x));
  for (int i = 1; i < 50; ++i) {
    EXPECT_NEAR(fd.rows[i].u_low, scale * 0.05 * ap.w_left(fd.rows[i].x), 1e-12) << i;
  }
}

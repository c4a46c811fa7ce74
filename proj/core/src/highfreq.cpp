#include "dcstring/highfreq.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "dcstring/error.hpp"
#include "dcstring/exact.hpp"
#include "dcstring/quadrature.hpp"
#include "dcstring/roots.hpp"
#include "shooting.hpp"

namespace dcstring {

namespace {

using std::numbers::pi;

std::string num(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(12);
  os << v;
  return os.str();
}

// Coefficient-only quantities on the soft part.
struct SoftLocal {
  double kappa, kappa1, rho;
  double Sp, Spp;      // S' = -sqrt(rho/kappa), S''
  double kSp_prime;    // (kappa S')'
  double c, c1, c2;    // (kappa rho)^(-1/4) and derivatives
  double kc1_prime;    // (kappa c')'
};

SoftLocal soft_local(const CoefficientSet& cs, double x) {
  const Jet K = cs.kappa.jet(x);
  const Jet R = cs.rho.jet(x);
  SoftLocal s{};
  s.kappa = K.value;
  s.kappa1 = K.d1;
  s.rho = R.value;
  const double q = R.value / K.value;
  const double q1 = (R.d1 * K.value - R.value * K.d1) / (K.value * K.value);
  s.Sp = -std::sqrt(q);
  s.Spp = -0.5 * q1 / std::sqrt(q);
  s.kSp_prime = K.d1 * s.Sp + K.value * s.Spp;
  const double P = K.value * R.value;
  const double P1 = K.d1 * R.value + K.value * R.d1;
  const double P2 = K.d2 * R.value + 2.0 * K.d1 * R.d1 + K.value * R.d2;
  s.c = std::pow(P, -0.25);
  s.c1 = -0.25 * std::pow(P, -1.25) * P1;
  s.c2 = 0.3125 * std::pow(P, -2.25) * P1 * P1 - 0.25 * std::pow(P, -1.25) * P2;
  s.kc1_prime = K.d1 * s.c1 + K.value * s.c2;
  return s;
}

// h' from the transport equation at a given h.
double transport_slope(const SoftLocal& s, double h) { return (s.kc1_prime - s.kSp_prime * h) / (2.0 * s.kappa * s.Sp); }

constexpr double kDegenerateV = 1e-10;
constexpr double kDegenerateMu = 1e-10;
constexpr double kRootResidual = 1e-6;

}  // namespace

WkbFrame build_wkb_frame(const CoefficientSet& cs, const IvpOptions& ivp) {
  auto rhs = [&cs](double x, const State<2>& y) {
    const SoftLocal s = soft_local(cs, x);
    return State<2>{s.Sp, transport_slope(s, y[1])};
  };
  auto sol = std::make_shared<const DenseSolution<2>>(integrate_ivp<2>(rhs, cs.b, 0.0, State<2>{0.0, 0.0}, ivp));
  const Interval dom{0.0, cs.b};

  SampledFunction S(
      dom, [sol](double x) { return (*sol)(x)[0]; },
      [sol, cs](double x) {
        const SoftLocal s = soft_local(cs, x);
        return Jet{(*sol)(x)[0], sol->derivative(x)[0], s.Spp};
      });
  SampledFunction c(
      dom, [cs](double x) { return soft_local(cs, x).c; },
      [cs](double x) {
        const SoftLocal s = soft_local(cs, x);
        return Jet{s.c, s.c1, s.c2};
      });
  SampledFunction h(
      dom, [sol](double x) { return (*sol)(x)[1]; },
      [sol, cs](double x) {
        // h'' by a central difference of the transport slope; one-sided at the ends.
        const double step = 1e-4 * cs.b;
        auto slope = [&](double t) { return transport_slope(soft_local(cs, t), (*sol)(t)[1]); };
        const double lo = std::max(0.0, x - step), hi = std::min(cs.b, x + step);
        return Jet{(*sol)(x)[1], sol->derivative(x)[1], (slope(hi) - slope(lo)) / (hi - lo)};
      });

  const SoftLocal s0 = soft_local(cs, 0.0);
  WkbFrame f;
  f.S0 = optical_length(cs);
  f.Sp0 = s0.Sp;
  f.c0 = s0.c;
  f.cp0 = s0.c1;
  f.h0 = sol->back()[1];
  f.kappa0 = s0.kappa;
  f.S = std::move(S);
  f.c = std::move(c);
  f.h = std::move(h);
  return f;
}

WkbResiduals wkb_residuals(const CoefficientSet& cs, const WkbFrame& f, int samples) {
  WkbResiduals r{0.0, 0.0, 0.0};
  for (int i = 0; i < samples; ++i) {
    const double x = cs.b * i / (samples - 1);
    const SoftLocal s = soft_local(cs, x);
    const double Sp = f.S.jet(x).d1;
    const Jet c = f.c.jet(x);
    const Jet h = f.h.jet(x);
    r.eikonal = std::max(r.eikonal, std::abs(s.kappa * Sp * Sp - s.rho));
    r.transport_c = std::max(r.transport_c, std::abs(2.0 * s.kappa * Sp * c.d1 + s.kSp_prime * c.value));
    r.transport_h =
        std::max(r.transport_h, std::abs(2.0 * s.kappa * Sp * h.d1 + s.kSp_prime * h.value - s.kc1_prime));
  }
  return r;
}

PencilSolution pencil_solve(const CoefficientSet& cs, const WkbFrame& f, double omega, const IvpOptions& ivp) {
  if (!(omega > 0.0)) throw ValidationError("pencil: omega must be positive, got " + num(omega));
  const double w2 = omega * omega;
  auto sol = detail::shoot_flux(cs.k, cs.r, w2, cs.a, 0.0, {0.0, cs.k(cs.a)}, ivp);

  // Pruefer angle: v = R sin(phi), k v' = R cos(phi), phi(a) = 0, phi' = cos^2/k + w^2 r sin^2 > 0.
  const ScalarField& k = cs.k;
  const ScalarField& r = cs.r;
  auto phase = integrate_ivp<1>(
      [&](double x, const State<1>& p) {
        const double sn = std::sin(p[0]), cn = std::cos(p[0]);
        return State<1>{cn * cn / k(x) + w2 * r(x) * sn * sn};
      },
      cs.a, 0.0, State<1>{0.0}, ivp);

  SampledFunction v = SampledFunction::from_flux_solution(sol, cs.k);
  const double norm =
      std::sqrt(adaptive_quadrature([&](double x) { const double t = v(x); return r(x) * t * t; }, cs.a, 0.0));

  detail::SignCounter counter;
  detail::scan(*sol, -cs.a / 4000.0, counter);

  PencilSolution p;
  p.omega = omega;
  p.v0 = v.scaled(1.0 / norm);
  p.v0_at0 = sol->back()[0] / norm;
  p.kv0p_at0 = sol->back()[1] / norm;
  p.prufer0 = phase.back()[0];
  // Neumann points sit at phi(0) = pi/2 + j pi; delta = pi/2 belongs to the lower branch.
  p.wraps = std::max(0, static_cast<int>(std::ceil(p.prufer0 / pi - 0.5)));

  const double sup = counter.sup();
  if (std::abs(sol->back()[0]) <= kDegenerateV * sup) {
    p.kind = PencilCase::kDeltaZero;
    p.delta = 0.0;
    return p;
  }
  const double mu = -p.kv0p_at0 / p.v0_at0;
  p.mu = mu;
  if (std::abs(mu) <= kDegenerateMu) {
    p.kind = PencilCase::kDeltaHalfPi;
    p.delta = pi / 2;
    return p;
  }
  // cot(delta) = mu / (omega kappa(0) |S'(0)|): the sign of delta follows the sign of mu.
  p.delta = std::atan(omega * f.kappa0 * std::abs(f.Sp0) / mu);
  return p;
}

double pencil_boundary_residual(const WkbFrame& f, const PencilSolution& p) {
  return p.kv0p_at0 * std::sin(p.delta) - p.omega * f.kappa0 * f.Sp0 * p.v0_at0 * std::cos(p.delta);
}

double beta0_of(const PencilSolution& p, const WkbFrame& f, int l) {
  const double parity = (l % 2 == 0) ? 1.0 : -1.0;
  if (p.kind == PencilCase::kDeltaZero) return parity * p.kv0p_at0 / (p.omega * f.kappa0 * f.Sp0 * f.c0);
  if (p.kind == PencilCase::kDeltaHalfPi && p.v0_at0 == 0.0) {
    throw NumericalError("beta0: delta = pi/2 with v0(0) = 0 is inconsistent");
  }
  return parity * p.v0_at0 / (f.c0 * std::sin(p.delta));
}

Omega1 omega1_of(const WkbFrame& f, const PencilSolution& p) {
  const double w = p.omega;
  const double sd = std::sin(p.delta), cd = std::cos(p.delta);
  Omega1 out;
  SolvabilityData& d = out.data;
  const double beta0 = beta0_of(p, f, 0);
  d.g1 = beta0 * f.h0 * cd / w;
  d.g2_const = (f.cp0 - f.Sp0 * f.h0) * sd;
  d.g2_lin = f.Sp0 * f.c0 * cd;

  if (p.kind == PencilCase::kDeltaZero) {
    // v1(0) = (-1)^l c2(0) with c2 = beta0 h / omega; k(0) v0'(0) carries another (-1)^l.
    out.omega1 = p.kv0p_at0 * beta0 * f.h0 / (w * 2.0 * w);
    out.closed_form = std::nan("");
    out.closed_form_agrees = false;
    return out;
  }

  // k(0)v1'(0) + mu v1(0) = kappa(0) f with
  //   f = (-1)^l (beta0 g2 sin d - omega S'(0) g1 cos d) / sin d.
  auto solvability = [&](int l) {
    const double parity = (l % 2 == 0) ? 1.0 : -1.0;
    const double b = beta0_of(p, f, l);
    const double g1 = b * f.h0 * cd / w;
    SolvabilityData s = d;
    s.g1 = g1;
    s.f_const = parity * (b * d.g2_const * sd - w * f.Sp0 * g1 * cd) / sd;
    s.f_lin = parity * b * d.g2_lin;
    return s;
  };
  const SolvabilityData even = solvability(0), odd = solvability(1);
  const double v0k = p.v0_at0 * f.kappa0;
  if (std::abs(v0k * (even.f_const - odd.f_const)) > 1e-12 * (std::abs(v0k * even.f_const) + 1e-300) ||
      std::abs(v0k * (even.f_lin - odd.f_lin)) > 1e-12 * (std::abs(v0k * even.f_lin) + 1e-300)) {
    throw NumericalError("omega1: solvability condition depends on the parity of l");
  }
  d.f_const = even.f_const;
  d.f_lin = even.f_lin;

  // v0(0) kappa(0) (f_const + f_lin omega1) = -2 omega omega1.
  const double lhs = 2.0 * w + v0k * d.f_lin;
  const double rhs = -v0k * d.f_const;
  if (std::abs(lhs) <= 1e-13 * (2.0 * w + std::abs(v0k * d.f_lin))) {
    throw NumericalError("omega1: resonant configuration at omega = " + num(w));
  }
  out.omega1 = rhs / lhs;

  const double V = p.v0_at0 * p.v0_at0;
  out.closed_form =
      (f.h0 * f.Sp0 - f.cp0 * sd * sd) * V / ((2.0 * w + f.kappa0 * f.Sp0 * cd) * f.c0 * sd);
  out.closed_form_agrees =
      std::abs(out.closed_form - out.omega1) <= 1e-6 * std::max(std::abs(out.omega1), 1e-300);
  return out;
}

double quantization_residual(const WkbFrame& f, const CoefficientSet& cs, double eps, int l, double omega,
                             const IvpOptions& ivp) {
  const PencilSolution p = pencil_solve(cs, f, omega, ivp);
  return (omega / eps + omega1_of(f, p).omega1) * f.S0 - p.delta - pi * l;
}

namespace {

struct Search {
  std::vector<double> roots;
  double lo, hi;
};

// All roots of g in [lo, hi] found by sign changes on a uniform scan, refined with
// Brent, keeping only those where |g| is small (jumps of delta or poles of omega1
// also change the sign).
template <class G>
Search find_roots(G&& g, double lo, double hi, double step) {
  Search s{{}, lo, hi};
  const int m = std::max(2, static_cast<int>(std::ceil((hi - lo) / step)));
  double x_prev = lo, g_prev = g(lo);
  for (int i = 1; i <= m; ++i) {
    const double x = lo + (hi - lo) * i / m;
    const double gx = g(x);
    if (gx == 0.0) {
      s.roots.push_back(x);
    } else if (g_prev != 0.0 && (gx > 0) != (g_prev > 0) && std::isfinite(gx) && std::isfinite(g_prev)) {
      const double root = brent_root(g, x_prev, x, 1e-14 * x);
      if (std::abs(g(root)) <= kRootResidual) s.roots.push_back(root);
    }
    x_prev = x;
    g_prev = gx;
  }
  return s;
}

AdmissibleFrequency finish(const WkbFrame& f, const CoefficientSet& cs, int n_or_l, bool by_index,
                           const Search& s, const IvpOptions& ivp) {
  AdmissibleFrequency a;
  a.roots = s.roots;
  a.omega = s.roots.back();
  a.pencil = pencil_solve(cs, f, a.omega, ivp);
  a.l = by_index ? n_or_l - a.pencil.wraps : n_or_l;
  a.delta = a.pencil.delta;
  a.omega1 = omega1_of(f, a.pencil).omega1;
  a.beta0 = beta0_of(a.pencil, f, a.l);
  return a;
}

[[noreturn]] void no_root(const char* what, int idx, double lo, double hi) {
  throw NumericalError(std::string(what) + ": no root for index " + std::to_string(idx) + " in [" + num(lo) +
                       ", " + num(hi) + "]");
}

}  // namespace

AdmissibleFrequency admissible_frequency(const WkbFrame& f, const CoefficientSet& cs, double eps, int l,
                                         const IvpOptions& ivp) {
  if (l < 1) throw ValidationError("quantization index must be >= 1");
  const double unit = eps * pi / f.S0;
  auto F = [&](double w) { return quantization_residual(f, cs, eps, l, w, ivp); };
  double lo = std::max(unit * (l - 1), 0.05 * unit), hi = unit * (l + 2);
  Search s = find_roots(F, lo, hi, 0.05 * unit);
  if (s.roots.empty()) {
    lo = std::max(lo - (hi - lo) / 2, 0.05 * unit);
    hi = hi + (hi - lo) / 2;
    s = find_roots(F, lo, hi, 0.05 * unit);
  }
  if (s.roots.empty()) no_root("admissible frequency", l, lo, hi);
  return finish(f, cs, l, false, s, ivp);
}

AdmissibleFrequency frequency_for_index(const WkbFrame& f, const CoefficientSet& cs, double eps, int n,
                                        const IvpOptions& ivp) {
  if (n < 1) throw ValidationError("eigen index must be >= 1");
  const double unit = eps * pi / f.S0;
  auto G = [&](double w) {
    const PencilSolution p = pencil_solve(cs, f, w, ivp);
    return (w / eps + omega1_of(f, p).omega1) * f.S0 - (p.delta - pi * p.wraps) - pi * n;
  };
  double hi = unit * (n + 2);
  const int wraps_hi = pencil_solve(cs, f, hi, ivp).wraps;
  double lo = std::max(unit * (n - wraps_hi - 1), 0.05 * unit);
  Search s = find_roots(G, lo, hi, 0.05 * unit);
  if (s.roots.empty()) {
    lo = std::max(lo - (hi - lo) / 2, 0.05 * unit);
    hi = hi + (hi - lo) / 2;
    s = find_roots(G, lo, hi, 0.05 * unit);
  }
  if (s.roots.empty()) no_root("frequency for index", n, lo, hi);
  return finish(f, cs, n, true, s, ivp);
}

HighFreqApprox build_Y(const CoefficientSet& cs, const WkbFrame& f, const AdmissibleFrequency& seed, double eps) {
  HighFreqApprox ap;
  ap.l = seed.l;
  ap.epsilon = eps;
  ap.omega = seed.omega;
  ap.omega1 = seed.omega1;
  ap.delta = seed.delta;
  ap.kind = seed.pencil.kind;
  ap.wraps = seed.pencil.wraps;
  ap.beta0 = seed.beta0;
  ap.gamma = seed.omega / eps + seed.omega1;
  ap.lambda_pred = eps * ap.gamma * ap.gamma;

  const double g = ap.gamma, b0 = ap.beta0, e2 = eps * ap.beta0 / ap.omega;
  const SampledFunction S = f.S, c = f.c, h = f.h;
  auto value = [=](double x) {
    const double ph = g * S(x);
    return b0 * c(x) * std::sin(ph) + e2 * h(x) * std::cos(ph);
  };
  auto jet = [=](double x) {
    const Jet s = S.jet(x), cj = c.jet(x), hj = h.jet(x);
    const double ph = g * s.value, sn = std::sin(ph), cn = std::cos(ph);
    const double p1 = g * s.d1, p2 = g * s.d2;
    // (A sin ph + B cos ph)' = (A' - B ph') sin + (B' + A ph') cos
    const double A = b0 * cj.value, A1 = b0 * cj.d1, A2 = b0 * cj.d2;
    const double B = e2 * hj.value, B1 = e2 * hj.d1, B2 = e2 * hj.d2;
    const double v = A * sn + B * cn;
    const double d1 = (A1 - B * p1) * sn + (B1 + A * p1) * cn;
    const double d2 = (A2 - B1 * p1 - B * p2 - (B1 + A * p1) * p1) * sn +
                      (B2 + A1 * p1 + A * p2 + (A1 - B * p1) * p1) * cn;
    return Jet{v, d1, d2};
  };
  ap.Y = PiecewiseFunction{seed.pencil.v0, SampledFunction({0.0, cs.b}, std::move(value), std::move(jet))};
  return ap;
}

}  // namespace dcstring

#include "dcstring/quadrature.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "dcstring/error.hpp"

namespace dcstring {

namespace {

// Kronrod nodes on [0, 1] of the symmetric 15-point rule; odd indices are the Gauss nodes.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi, value, error, abs_value;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx), f2 = f(center + dx);
    kron += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  Panel p{lo, hi, kron * half, std::abs((kron - gauss) * half), abs_sum * std::abs(half)};
  if (!std::isfinite(p.value)) throw NumericalError("adaptive_quadrature: non-finite integrand");
  return p;
}

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (lo == hi) return 0.0;
  if (lo > hi) return -adaptive_quadrature(f, hi, lo, tol);
  constexpr int kMaxPanels = 20000;
  constexpr double kUlps = 50 * std::numeric_limits<double>::epsilon();

  std::priority_queue<Panel> heap;
  Panel first = gk15(f, lo, hi);
  double total = first.value, err = first.error, abs_total = first.abs_value;
  heap.push(first);
  int panels = 1;
  while (err > std::max(tol, kUlps * abs_total)) {
    if (panels >= kMaxPanels) {
      std::ostringstream os;
      os.imbue(std::locale::classic());
      os << "adaptive_quadrature: subdivision budget exhausted on [" << lo << ", " << hi << "], error estimate "
         << err;
      throw NumericalError(os.str());
    }
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      throw NumericalError("adaptive_quadrature: interval too small to bisect");
    }
    const Panel left = gk15(f, worst.lo, mid);
    const Panel right = gk15(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    abs_total += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Re-sum to shed the drift of the running update.
  double sum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    heap.pop();
  }
  return sum;
}

}  // namespace dcstring

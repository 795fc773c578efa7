#include "lsnsum/owens_t.hpp"

#include "lsnsum/normal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace lsnsum {

namespace {

// exp(-kExpCut) is far below any relative tolerance in play.
constexpr double kExpCut = 745.0;
constexpr double kRelTol = 1e-13;
constexpr std::size_t kMaxPanels = 400;

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
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
  double value;
  double error;
};

template <class F>
Panel gk15(const F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(kronrod);
  double fv[15];
  fv[7] = fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv[j] = f1;
    fv[14 - j] = f2;
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) asc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));

  // QUADPACK error scaling.
  double err = std::abs((kronrod - gauss) * half);
  asc *= half;
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  const double round_floor = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum * half;
  err = std::max(err, round_floor);
  return {kronrod * half, err};
}

struct Interval {
  double lo;
  double hi;
  Panel panel;
};

/// Globally adaptive integral of a non-negative integrand to relative
/// accuracy kRelTol: the panel with the largest error estimate is bisected
/// until the summed estimate meets the tolerance or the budget runs out.
template <class F>
double integrate(const F& f, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  std::vector<Interval> heap;
  heap.reserve(32);
  auto by_error = [](const Interval& a, const Interval& b) { return a.panel.error < b.panel.error; };
  heap.push_back({lo, hi, gk15(f, lo, hi)});
  double value = heap.front().panel.value;
  double error = heap.front().panel.error;
  while (error > kRelTol * std::abs(value) && heap.size() < kMaxPanels) {
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Interval worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), by_error);
      break;
    }
    const Interval left{worst.lo, mid, gk15(f, worst.lo, mid)};
    const Interval right{mid, worst.hi, gk15(f, mid, worst.hi)};
    value += left.panel.value + right.panel.value - worst.panel.value;
    error += left.panel.error + right.panel.error - worst.panel.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
  }
  // Re-sum to shed the drift of the running updates.
  double total = 0.0;
  for (const Interval& iv : heap) total += iv.panel.value;
  return total;
}

// Integral over [lo, hi] of exp(-g^2 (t^2 - a^2) / 2) / (1 + t^2), t >= a.
double upper_direct(double g, double a, double lo, double hi) {
  const double g2 = g * g;
  if (g2 > 0.0) hi = std::min(hi, std::sqrt(a * a + 2.0 * kExpCut / g2));
  auto f = [g2, a](double t) { return std::exp(-0.5 * g2 * (t - a) * (t + a)) / (1.0 + t * t); };
  return integrate(f, lo, hi);
}

// Same integrand after t = 1/s, over s in [lo, hi] with 1/hi >= a.
double upper_mapped(double g, double a, double lo, double hi) {
  const double g2 = g * g;
  if (g2 > 0.0) lo = std::max(lo, 1.0 / std::sqrt(a * a + 2.0 * kExpCut / g2));
  auto f = [g2, a](double s) {
    if (s <= 0.0) return 0.0;
    const double inv = 1.0 / s;
    return std::exp(-0.5 * g2 * (inv - a) * (inv + a)) / (1.0 + s * s);
  };
  return integrate(f, lo, hi);
}

}  // namespace

namespace detail {

double owens_integral(double g, double a) {
  g = std::abs(g);
  if (!(a > 0.0)) return 0.0;
  if (std::isinf(a)) return std::sqrt(0.5 * kPi) * mills_ratio(g);
  if (a <= 1.0) {
    const double g2 = g * g;
    double hi = a;
    if (g2 > 0.0) hi = std::min(hi, std::sqrt(2.0 * kExpCut / g2));
    auto f = [g2](double t) { return std::exp(-0.5 * g2 * t * t) / (1.0 + t * t); };
    return integrate(f, 0.0, hi);
  }
  // J(g, inf) - K(g, a); K is small relative to J for a > 1.
  const double full = std::sqrt(0.5 * kPi) * mills_ratio(g);
  const double tail = std::exp(-0.5 * g * g * a * a) * upper_mapped(g, a, 0.0, 1.0 / a);
  return full - tail;
}

double owens_upper_integral_scaled(double g, double a) {
  g = std::abs(g);
  a = std::max(a, 0.0);
  if (a >= 1.0) return upper_mapped(g, a, 0.0, 1.0 / a);
  return upper_direct(g, a, a, 1.0) + upper_mapped(g, a, 0.0, 1.0);
}

}  // namespace detail

double owens_t(double h, double a) {
  if (a == 0.0 || std::isnan(a) || std::isnan(h)) return std::isnan(a) || std::isnan(h) ? std::nan("") : 0.0;
  const double g = std::abs(h);
  const double mag = std::abs(a);
  const double value = std::exp(-0.5 * g * g) / (2.0 * kPi) * detail::owens_integral(g, mag);
  return a < 0.0 ? -value : value;
}

}  // namespace lsnsum

#include "fockdecay/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "fockdecay/errors.hpp"

namespace fockdecay::quad {

namespace {

constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd Kronrod nodes kNodes[1], [3], [5], [7].
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

Panel kronrod_only(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kKronrod[7] * fc;
  double gauss = kGauss[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrod[i] * pair;
    if (i % 2 == 1) gauss += kGauss[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

// The Kronrod-Gauss difference alone can vanish by accident on a panel with a
// kink. The panel error is therefore the larger of that difference and the
// change between the whole-panel rule and the two half-panel rules; the value
// reported is the half-panel sum.
Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const Panel whole = kronrod_only(f, a, b);
  const Panel left = kronrod_only(f, a, mid);
  const Panel right = kronrod_only(f, mid, b);
  const double halves = left.value + right.value;
  const double err = std::max({whole.error, left.error + right.error, std::abs(whole.value - halves)});
  return {a, b, halves, err};
}

bool by_error(const Panel& lhs, const Panel& rhs) { return lhs.error < rhs.error; }

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts, int initial_panels) {
  if (!std::isfinite(a) || !std::isfinite(b) || b < a)
    throw DomainError("integrate: need finite a <= b");
  if (initial_panels < 1) initial_panels = 1;

  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }

  std::vector<Panel> heap;
  heap.reserve(static_cast<std::size_t>(initial_panels) * 4);
  const double width = (b - a) / initial_panels;
  for (int i = 0; i < initial_panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == initial_panels) ? b : a + (i + 1) * width;
    heap.push_back(gauss_kronrod(f, lo, hi));
  }
  std::make_heap(heap.begin(), heap.end(), by_error);

  auto totals = [&heap]() {
    double value = 0.0;
    double error = 0.0;
    for (const Panel& p : heap) {
      value += p.value;
      error += p.error;
    }
    return std::pair{value, error};
  };

  auto [value, error] = totals();
  int splits = 0;
  while (error > std::max(opts.abs_tol, opts.rel_tol * std::abs(value))) {
    if (splits >= opts.max_subdivisions) break;
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    // Panel already at floating-point resolution: keep it and stop refining.
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 64.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(worst.a), std::abs(worst.b))) {
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), by_error);
      break;
    }
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
    ++splits;
    // Resum periodically so the running totals do not drift.
    if (splits % 64 == 0) std::tie(value, error) = totals();
  }
  std::tie(value, error) = totals();
  result.value = value;
  result.abs_error = error;
  result.subdivisions = static_cast<int>(heap.size());
  result.converged = error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
  return result;
}

}  // namespace fockdecay::quad

#include "fockdecay/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fockdecay/errors.hpp"
#include "fockdecay/kernels.hpp"
#include "fockdecay/parallel.hpp"
#include "fockdecay/quadrature.hpp"
#include "fockdecay/specfn.hpp"
#include "fockdecay/states.hpp"

namespace fockdecay {

namespace {

constexpr double kRootTol = 1e-12;
constexpr int kMaxBisections = 200;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// One polynomial in either basis; derivative() keeps the basis.
struct BasisPoly {
  bool laguerre = false;
  std::vector<double> c;

  double operator()(double u) const {
    if (laguerre) return kernels::laguerre_series_at(c, u);
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
    return acc;
  }

  BasisPoly derivative() const {
    BasisPoly d{laguerre, {}};
    if (c.size() <= 1) return d;
    d.c.assign(c.size() - 1, 0.0);
    if (laguerre) {
      // L_m' = -sum_{k<m} L_k
      double tail = 0.0;
      for (std::size_t k = c.size() - 1; k-- > 0;) {
        tail += c[k + 1];
        d.c[k] = -tail;
      }
    } else {
      for (std::size_t k = 0; k + 1 < c.size(); ++k) d.c[k] = (k + 1.0) * c[k + 1];
    }
    return d;
  }

  void trim() {
    while (!c.empty() && c.back() == 0.0) c.pop_back();
  }
};

double bisect(const BasisPoly& f, double a, double b, int sa) {
  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (a + b);
    if (b - a <= kRootTol || mid <= a || mid >= b) return mid;
    const double fm = f(mid);
    if (std::isnan(fm)) throw ConvergenceError("find_sign_roots: polynomial evaluated to NaN");
    const int sm = sign_of(fm);
    if (sm == 0) return mid;
    if (sm == sa) {
      a = mid;
    } else {
      b = mid;
    }
  }
  throw ConvergenceError("find_sign_roots: bisection did not converge in 200 iterations");
}

// Sign changes of f on [lo, hi], given that f is monotone between
// consecutive entries of `critical`.
std::vector<double> sign_changes(const BasisPoly& f, double lo, double hi,
                                 const std::vector<double>& critical) {
  std::vector<double> knots;
  knots.reserve(critical.size() + 2);
  knots.push_back(lo);
  for (double x : critical)
    if (x > lo && x < hi) knots.push_back(x);
  knots.push_back(hi);

  std::vector<double> values(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) values[i] = f(knots[i]);

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const int sa = sign_of(values[i]);
    const int sb = sign_of(values[i + 1]);
    if (sa * sb < 0) {
      roots.push_back(bisect(f, knots[i], knots[i + 1], sa));
    } else if (sb == 0 && i + 2 < knots.size()) {
      // Exact zero on an interior knot counts if the sign flips across it.
      const double left = f(0.5 * (knots[i] + knots[i + 1]));
      const double right = f(0.5 * (knots[i + 1] + knots[i + 2]));
      if (sign_of(left) * sign_of(right) < 0) roots.push_back(knots[i + 1]);
    }
  }
  return roots;
}

std::vector<double> monomial_from_laguerre(std::span<const double> b) {
  // L_m(u) = sum_j C(m,j) (-u)^j / j!, so q_j = (-1)^j / j! sum_{m>=j} b_m C(m,j).
  // Each term is formed from its log magnitude to keep C(m,j) / j! in range.
  const int n = static_cast<int>(b.size()) - 1;
  std::vector<double> q(b.size(), 0.0);
  for (int j = 0; j <= n; ++j) {
    double sum = 0.0;
    for (int m = j; m <= n; ++m) {
      if (b[m] == 0.0) continue;
      const double log_mag =
          std::log(std::abs(b[m])) + specfn::log_binomial(m, j) - std::lgamma(j + 1.0);
      const double sign = ((b[m] < 0.0) != (j % 2 == 1)) ? -1.0 : 1.0;
      sum += sign * std::exp(log_mag);
    }
    q[j] = sum;
  }
  return q;
}

std::vector<double> signed_weights(int n, double tau) {
  std::vector<double> b = mixture_coefficients(n, tau);
  for (std::size_t m = 1; m < b.size(); m += 2) b[m] = -b[m];
  return b;
}

// d_k with \int_s^\infty e^{-t} Q(2t) dt = e^{-s} sum_k d_k L_k(2s), using
// \int_s^\infty e^{-t} L_m(2t) dt = e^{-s} [L_m(2s) + 2 sum_{k<m} (-1)^{m-k} L_k(2s)].
std::vector<double> tail_weights(std::span<const double> b) {
  std::vector<double> d(b.size());
  double alternating = 0.0;  // sum_{m>k} (-1)^{m-k} b_m
  for (std::size_t k = b.size(); k-- > 0;) {
    d[k] = b[k] + 2.0 * alternating;
    alternating = -b[k] - alternating;
  }
  return d;
}

EtaResult eta_by_quadrature(int n, double tau, double tol) {
  const std::vector<double> b = signed_weights(n, tau);
  auto negative_part = [&b](double s) {
    const double q = kernels::laguerre_series_at(b, 2.0 * s);
    return q < 0.0 ? -std::exp(-s) * q : 0.0;
  };
  const double upper = 4.0 * n + 20.0;
  quad::QuadratureOptions opts;
  opts.abs_tol = tol;
  // Panels narrower than the smallest lobe, so no negative region can fall
  // between the nodes of its first Kronrod rule.
  const double width = std::min(0.02, 0.5 / (n + 1.0));
  const auto panels = static_cast<int>(std::ceil(upper / width));
  const auto res = quad::integrate(negative_part, 0.0, upper, opts, panels);
  if (!res.converged)
    throw ConvergenceError("negative_volume: adaptive quadrature did not reach tolerance");
  return {res.value, EtaMethod::quadrature, res.abs_error};
}

// Breakpoints in s = u/2 and the sign of Q on each piece.
struct Pieces {
  std::vector<double> edges;  // 0, roots/2..., +inf
  std::vector<int> signs;
};

Pieces pieces_of(const RadialPolynomial& poly) {
  Pieces p;
  p.edges.push_back(0.0);
  for (double u : poly.roots) p.edges.push_back(0.5 * u);
  p.edges.push_back(std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i + 1 < p.edges.size(); ++i) {
    const double a = p.edges[i];
    const double b = p.edges[i + 1];
    const double probe = std::isinf(b) ? a + 1.0 : 0.5 * (a + b);
    p.signs.push_back(sign_of(poly.evaluate(2.0 * probe)));
  }
  return p;
}

}  // namespace

std::string to_string(EtaMethod method) {
  return method == EtaMethod::semi_analytic ? "semi-analytic" : "quadrature";
}

RadialPolynomial RadialPolynomial::from_monomial(std::vector<double> coeffs) {
  RadialPolynomial poly;
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  poly.degree = coeffs.empty() ? 0 : static_cast<int>(coeffs.size()) - 1;
  poly.coeffs = std::move(coeffs);
  return poly;
}

double RadialPolynomial::evaluate(double u) const {
  if (!laguerre_weights.empty()) return kernels::laguerre_series_at(laguerre_weights, u);
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
  return acc;
}

std::vector<double> find_sign_roots(const RadialPolynomial& poly) {
  BasisPoly base;
  base.laguerre = !poly.laguerre_weights.empty();
  base.c = base.laguerre ? poly.laguerre_weights : poly.coeffs;
  for (double v : base.c)
    if (!std::isfinite(v)) throw DomainError("find_sign_roots: non-finite coefficient");
  base.trim();
  if (base.c.size() <= 1) return {};

  const double hi = poly.search_limit();

  std::vector<BasisPoly> chain{base};
  while (chain.back().c.size() > 1) {
    BasisPoly d = chain.back().derivative();
    d.trim();
    chain.push_back(std::move(d));
  }

  std::vector<double> critical;  // sign changes of the next-higher derivative
  for (std::size_t level = chain.size() - 1; level-- > 0;)
    critical = sign_changes(chain[level], 0.0, hi, critical);

  // Beyond the window the polynomial must keep one sign.
  const int tail_sign = sign_of(base(hi));
  for (int i = 1; i <= 64; ++i) {
    const double u = hi + hi * i / 64.0;
    const int s = sign_of(base(u));
    if (s != 0 && tail_sign != 0 && s != tail_sign)
      throw ConvergenceError("find_sign_roots: sign change beyond the search window");
  }

  std::vector<double> roots;
  for (double r : critical)
    if (r > 0.0) roots.push_back(r);
  return roots;
}

RadialPolynomial radial_polynomial(int n, double tau) {
  RadialPolynomial poly;
  poly.degree = n;
  poly.laguerre_weights = signed_weights(n, tau);
  poly.coeffs = monomial_from_laguerre(poly.laguerre_weights);
  poly.roots = find_sign_roots(poly);
  return poly;
}

EtaResult negative_volume(int n, double tau, const EtaOptions& opts) {
  if (opts.force_quadrature) return eta_by_quadrature(n, tau, opts.quad_tol);

  RadialPolynomial poly;
  try {
    poly = radial_polynomial(n, tau);
  } catch (const ConvergenceError&) {
    return eta_by_quadrature(n, tau, opts.quad_tol);
  }

  const std::vector<double> d = tail_weights(poly.laguerre_weights);
  auto tail = [&d](double s) {
    if (std::isinf(s)) return 0.0;
    return std::exp(-s) * kernels::laguerre_series_at(d, 2.0 * s);
  };

  const Pieces pieces = pieces_of(poly);
  double eta = 0.0;
  int negative_pieces = 0;
  for (std::size_t i = 0; i < pieces.signs.size(); ++i) {
    if (pieces.signs[i] >= 0) continue;
    const double piece = tail(pieces.edges[i]) - tail(pieces.edges[i + 1]);
    eta += std::max(0.0, -piece);
    ++negative_pieces;
  }

  double scale = 0.0;
  for (double v : d) scale += std::abs(v);
  const double err = 8.0 * std::numeric_limits<double>::epsilon() * (n + 1.0) * scale *
                     std::max(1, 2 * negative_pieces);
  return {eta, EtaMethod::semi_analytic, err};
}

double negative_volume_monomial(int n, double tau) {
  const RadialPolynomial poly = radial_polynomial(n, tau);
  // \int_a^b e^{-s} (2s)^k ds = 2^k [Gamma(k+1, a) - Gamma(k+1, b)]
  auto antiderivative_tail = [&poly](double s) {
    if (std::isinf(s)) return 0.0;
    double acc = 0.0;
    double pow2 = 1.0;
    for (int k = 0; k <= poly.degree; ++k) {
      acc += poly.coeffs[k] * pow2 * specfn::upper_incomplete_gamma(k, s);
      pow2 *= 2.0;
    }
    return acc;
  };
  const Pieces pieces = pieces_of(poly);
  double eta = 0.0;
  for (std::size_t i = 0; i < pieces.signs.size(); ++i) {
    if (pieces.signs[i] >= 0) continue;
    const double piece =
        antiderivative_tail(pieces.edges[i]) - antiderivative_tail(pieces.edges[i + 1]);
    eta += std::max(0.0, -piece);
  }
  return eta;
}

bool SweepTable::all_ok() const {
  return std::all_of(cells.begin(), cells.end(), [](const SweepCell& c) { return c.ok; });
}

SweepTable eta_sweep(std::span<const int> n_values, std::span<const double> tau_values,
                     const EtaOptions& opts, unsigned threads) {
  SweepTable table;
  table.n_values.assign(n_values.begin(), n_values.end());
  table.tau_values.assign(tau_values.begin(), tau_values.end());
  table.cells.resize(n_values.size() * tau_values.size());
  const std::size_t width = n_values.size();
  parallel_for(
      table.cells.size(),
      [&](std::size_t idx) {
        SweepCell& cell = table.cells[idx];
        const int n = table.n_values[idx % width];
        const double tau = table.tau_values[idx / width];
        try {
          cell.eta = negative_volume(n, tau, opts);
          cell.purity = purity(n, tau);
          cell.ok = true;
        } catch (const std::exception& e) {
          cell.ok = false;
          cell.error = e.what();
        }
      },
      threads);
  return table;
}

SweepTable eta_sweep(int n_max, std::span<const double> tau_values, const EtaOptions& opts,
                     unsigned threads) {
  if (n_max < 0) throw DomainError("eta_sweep: n_max must be non-negative");
  if (n_max > kMaxLevel) throw RangeError("eta_sweep: n_max exceeds supported maximum 50");
  std::vector<int> levels(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) levels[n] = n;
  return eta_sweep(levels, tau_values, opts, threads);
}

PeakResult peak_of(std::span<const int> n_values, std::span<const double> eta_values) {
  if (n_values.empty() || n_values.size() != eta_values.size())
    throw DomainError("peak_of: need matching non-empty level and eta lists");
  std::size_t best = 0;
  for (std::size_t i = 1; i < eta_values.size(); ++i)
    if (eta_values[i] > eta_values[best]) best = i;
  return {n_values[best], best == 0 || best + 1 == n_values.size(), eta_values[best]};
}

std::vector<PeakResult> peak_curve(std::span<const double> tau_values, int n_max,
                                   const EtaOptions& opts) {
  const SweepTable table = eta_sweep(n_max, tau_values, opts);
  std::vector<PeakResult> peaks;
  peaks.reserve(tau_values.size());
  std::vector<double> row(table.n_values.size());
  for (std::size_t t = 0; t < tau_values.size(); ++t) {
    for (std::size_t i = 0; i < table.n_values.size(); ++i) {
      const SweepCell& cell = table.at(t, i);
      if (!cell.ok) throw ConvergenceError("peak_curve: sweep cell failed: " + cell.error);
      row[i] = cell.eta.value;
    }
    peaks.push_back(peak_of(table.n_values, row));
  }
  return peaks;
}

PeakResult peak_state(double tau, int n_max, const EtaOptions& opts) {
  if (!(tau > 0.0)) throw DomainError("peak_state: tau must be positive");
  const double taus[] = {tau};
  return peak_curve(taus, n_max, opts).front();
}

}  // namespace fockdecay

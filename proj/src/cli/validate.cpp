#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "csv.hpp"
#include "fockdecay/cli.hpp"
#include "fockdecay/metrics.hpp"
#include "fockdecay/oracles.hpp"
#include "fockdecay/parallel.hpp"
#include "fockdecay/states.hpp"
#include "fockdecay/validation.hpp"

namespace fockdecay::validation {

namespace {

CheckResult numeric_check(std::string name, double max_error, double tolerance,
                          const ValidationOptions& opts) {
  const double tol = opts.tolerance.value_or(tolerance);
  return {std::move(name), max_error, tol, max_error < tol, true};
}

CheckResult structural_check(std::string name, double violation) {
  return {std::move(name), violation, 0.0, violation == 0.0, false};
}

std::vector<double> tau_range(double first, double last, double step) {
  std::vector<double> v;
  const int count = static_cast<int>(std::floor((last - first) / step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) v.push_back(first + i * step);
  return v;
}

double max_over(std::size_t count, auto&& fn) {
  std::vector<double> errors(count, 0.0);
  parallel_for(count, [&](std::size_t i) { errors[i] = fn(i); });
  double worst = 0.0;
  for (double e : errors) worst = std::max(worst, std::isnan(e) ? INFINITY : e);
  return worst;
}

}  // namespace

std::vector<CheckResult> run_checks(const ValidationOptions& opts) {
  std::vector<CheckResult> checks;

  // Rate equations against closed-form populations.
  {
    const double taus[] = {0.1, 0.5, 1.0, 2.0};
    double drift = 0.0;
    double worst = 0.0;
    for (int n = 0; n <= 15; ++n) {
      for (double tau : taus) {
        const auto ode = oracles::integrate_lindblad(n, tau, 0.0, {n + 1, 1e-3});
        const auto exact = populations(n, tau);
        for (int k = 0; k <= n; ++k) worst = std::max(worst, std::abs(ode.populations[k] - exact[k]));
        drift = std::max(drift, ode.max_norm_drift);
      }
    }
    checks.push_back(numeric_check("ode_vs_closed_form", worst, 1e-7, opts));
    checks.push_back(numeric_check("ode_probability_conservation", drift, 1e-9, opts));
  }

  // Hankel inversion of chi against the mixture.
  {
    const double taus[] = {0.0, 0.15, 0.3};
    const std::size_t radii = 121;  // r in [0, 6], step 0.05
    const double worst = max_over(11 * 3 * radii, [&](std::size_t idx) {
      const int n = static_cast<int>(idx / (3 * radii));
      const double tau = taus[(idx / radii) % 3];
      const double r = 0.05 * static_cast<double>(idx % radii);
      const DecoherenceParams params{n, tau, 0.0};
      return std::abs(oracles::hankel_wigner(params, r) - wigner_t(params, {r, 0.0}));
    });
    checks.push_back(numeric_check("hankel_vs_mixture", worst, 1e-8, opts));
  }

  {
    const double taus[] = {0.0, 0.15, 0.3};
    const double worst = max_over(11 * 3, [&](std::size_t idx) {
      const int n = static_cast<int>(idx / 3);
      const double tau = taus[idx % 3];
      return std::abs(oracles::phase_space_purity(n, tau) - purity(n, tau));
    });
    checks.push_back(numeric_check("purity_agreement", worst, 1e-8, opts));
  }

  {
    double worst = 0.0;
    for (int b = 0; b <= 30; ++b)
      for (int a = 0; a <= b; ++a) {
        const auto value = oracles::alternating_binomial_identity(a, b);
        worst = std::max(worst, std::abs(static_cast<double>(value - (a == b ? 1 : 0))));
      }
    checks.push_back(numeric_check("alternating_binomial_identity", worst, 0.5, opts));
  }

  {
    std::vector<oracles::TransformPoint> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back({0.25 * i});
    const ChiForm form = opts.break_sign ? ChiForm::flipped : ChiForm::corrected;
    double worst = 0.0;
    for (int n = 0; n <= 5; ++n)
      for (double nbar : {0.0, 0.5})
        worst = std::max(worst, oracles::diffusion_residual(n, 0.2, nbar, grid, form));
    checks.push_back(numeric_check("diffusion_residual", std::isfinite(worst) ? worst : INFINITY,
                                   1e-5, opts));
  }

  // Semi-analytic eta against adaptive quadrature.
  {
    const std::vector<double> taus = tau_range(0.0, 0.5, 0.05);
    const double worst = max_over(21 * taus.size(), [&](std::size_t idx) {
      const int n = static_cast<int>(idx / taus.size());
      const double tau = taus[idx % taus.size()];
      const double semi = negative_volume(n, tau).value;
      EtaOptions quad;
      quad.force_quadrature = true;
      return std::abs(semi - negative_volume(n, tau, quad).value);
    });
    checks.push_back(numeric_check("eta_semi_analytic_vs_quadrature", worst, 1e-8, opts));
  }

  {
    double worst = 0.0;
    for (int n = 0; n <= 20; ++n) worst = std::max(worst, negative_volume(n, 10.0).value);
    checks.push_back(numeric_check("eta_vanishes_at_large_tau", worst, 1e-6, opts));
  }

  {
    double violation = 0.0;
    double prev = negative_volume(0, 0.0).value;
    for (int n = 1; n <= 20; ++n) {
      const double cur = negative_volume(n, 0.0).value;
      if (!(cur > prev)) violation += 1.0;
      prev = cur;
    }
    checks.push_back(structural_check("eta_strictly_increasing_at_tau0", violation));
  }

  {
    const double taus[] = {0.15, 0.20, 0.25, 0.30};
    const auto peaks = peak_curve(taus, 20);
    double violation = 0.0;
    for (const PeakResult& p : peaks)
      if (p.boundary) violation += 1.0;
    checks.push_back(structural_check("eta_interior_peak", violation));

    EtaOptions coarse;
    coarse.force_quadrature = true;
    coarse.quad_tol = 1e-8;
    EtaOptions fine = coarse;
    fine.quad_tol = 1e-12;
    const auto peaks_coarse = peak_curve(taus, 20, coarse);
    const auto peaks_fine = peak_curve(taus, 20, fine);
    double mismatch = 0.0;
    for (std::size_t i = 0; i < peaks.size(); ++i)
      mismatch += std::abs(peaks_coarse[i].n_star - peaks_fine[i].n_star) +
                  std::abs(peaks[i].n_star - peaks_fine[i].n_star);
    checks.push_back(structural_check("peak_tolerance_stability", mismatch));
  }

  return checks;
}

std::string to_json(const std::vector<CheckResult>& checks) {
  nlohmann::ordered_json report;
  report["tool"] = std::string("fockdecay ") + FOCKDECAY_VERSION;
  bool all = true;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const CheckResult& c : checks) {
    nlohmann::ordered_json entry;
    entry["check"] = c.name;
    entry["max_error"] = std::isfinite(c.max_error) ? nlohmann::ordered_json(c.max_error)
                                                    : nlohmann::ordered_json("inf");
    entry["tolerance"] = c.tolerance;
    entry["pass"] = c.pass;
    list.push_back(entry);
    all = all && c.pass;
  }
  report["passed"] = all;
  report["checks"] = list;
  return report.dump(2) + "\n";
}

}  // namespace fockdecay::validation

namespace fockdecay::cli {

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  validation::ValidationOptions opts;
  opts.tolerance = cfg.tolerance;
  opts.break_sign = cfg.break_sign;
  std::vector<validation::CheckResult> checks;
  try {
    checks = validation::run_checks(opts);
  } catch (const std::exception& e) {
    err << "error: validation aborted: " << e.what() << "\n";
    return kExitFailure;
  }
  const std::string json = validation::to_json(checks);
  if (cfg.out.empty() || cfg.out == "-") {
    out << json;
  } else {
    std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
    if (!(file << json)) {
      err << "error: cannot write " << cfg.out << "\n";
      return kExitFailure;
    }
  }
  for (const auto& c : checks)
    if (!c.pass) err << "FAIL " << c.name << ": max_error " << c.max_error << " >= tolerance " << c.tolerance << "\n";
  const bool all = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  return all ? kExitOk : kExitFailure;
}

}  // namespace fockdecay::cli

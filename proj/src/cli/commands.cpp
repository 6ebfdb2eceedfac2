#include <cmath>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "csv.hpp"
#include "fockdecay/cli.hpp"
#include "fockdecay/errors.hpp"
#include "fockdecay/metrics.hpp"
#include "fockdecay/oracles.hpp"
#include "fockdecay/parallel.hpp"
#include "fockdecay/states.hpp"

namespace fockdecay::cli {

namespace {

EtaOptions eta_options(const RunConfig& cfg) {
  EtaOptions opts;
  if (cfg.tolerance && *cfg.tolerance > 0.0) opts.quad_tol = *cfg.tolerance;
  return opts;
}

std::vector<double> grid_axis(double extent, double step) {
  const auto half = static_cast<long>(std::floor(extent / step + 1e-9));
  std::vector<double> axis;
  axis.reserve(static_cast<std::size_t>(2 * half + 1));
  for (long i = -half; i <= half; ++i) axis.push_back(static_cast<double>(i) * step);
  return axis;
}

// W on every grid point for one parameter set. Zero temperature uses the
// batch mixture kernel; nbar > 0 inverts the characteristic function once per
// distinct radius.
std::vector<double> grid_values(const DecoherenceParams& params, const std::vector<double>& axis) {
  const std::size_t side = axis.size();
  std::vector<double> r2(side * side);
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j) r2[i * side + j] = PhasePoint{axis[i], axis[j]}.r2();

  std::vector<double> w(r2.size());
  if (params.nbar == 0.0) {
    MixtureState(params).wigner_radial(r2, w);
    return w;
  }
  std::map<double, double> cache;
  for (double v : r2) cache.emplace(v, 0.0);
  std::vector<std::map<double, double>::iterator> slots;
  slots.reserve(cache.size());
  for (auto it = cache.begin(); it != cache.end(); ++it) slots.push_back(it);
  parallel_for(slots.size(), [&](std::size_t i) {
    slots[i]->second = oracles::hankel_wigner(params, std::sqrt(slots[i]->first));
  });
  for (std::size_t i = 0; i < r2.size(); ++i) w[i] = cache.at(r2[i]);
  return w;
}

}  // namespace

std::string grid_file_name(int n, double tau, double nbar) {
  if (nbar == 0.0) return fmt::format("wigner_n{}_tau{}.csv", n, tau);
  return fmt::format("wigner_n{}_tau{}_nbar{}.csv", n, tau, nbar);
}

int cmd_grid(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::vector<double> axis = grid_axis(cfg.grid_extent, cfg.grid_step);
  const std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path(".") : std::filesystem::path(cfg.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    err << "error: cannot create output directory " << dir << ": " << ec.message() << "\n";
    return kExitFailure;
  }
  for (int n : cfg.n_values) {
    for (double tau : cfg.tau_values) {
      const DecoherenceParams params{n, tau, cfg.nbar};
      RunConfig stamp = cfg;
      stamp.n_values = {n};
      stamp.tau_values = {tau};
      CsvBuffer csv(metadata_line(stamp), {"x", "p", "W"});
      std::vector<double> w;
      try {
        w = grid_values(params, axis);
      } catch (const std::exception& e) {
        err << "error: n=" << n << " tau=" << tau << ": " << e.what() << "\n";
        return kExitFailure;
      }
      const std::size_t side = axis.size();
      for (std::size_t i = 0; i < side; ++i)
        for (std::size_t j = 0; j < side; ++j)
          csv.add_row({format_real(axis[i]), format_real(axis[j]), format_real(w[i * side + j])});
      const auto path = dir / grid_file_name(n, tau, cfg.nbar);
      if (!csv.flush(path.string(), out, err)) return kExitFailure;
      out << path.string() << "\n";
    }
  }
  return kExitOk;
}

int cmd_eta(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SweepTable table = eta_sweep(cfg.n_values, cfg.tau_values, eta_options(cfg));
  if (!table.all_ok() && !cfg.keep_going) {
    for (const SweepCell& cell : table.cells)
      if (!cell.ok) err << "error: " << cell.error << "\n";
    return kExitFailure;
  }
  CsvBuffer csv(metadata_line(cfg), {"n", "tau", "eta", "method", "error_estimate"});
  for (std::size_t i = 0; i < table.n_values.size(); ++i) {
    for (std::size_t t = 0; t < table.tau_values.size(); ++t) {
      const SweepCell& cell = table.at(t, i);
      const std::string n = std::to_string(table.n_values[i]);
      const std::string tau = format_real(table.tau_values[t]);
      if (cell.ok) {
        csv.add_row({n, tau, format_real(cell.eta.value), to_string(cell.eta.method),
                     format_real(cell.eta.error_estimate)});
      } else {
        csv.add_row({n, tau, "nan", "failed", "nan"});
      }
    }
  }
  return csv.flush(cfg.out, out, err) ? kExitOk : kExitFailure;
}

int cmd_peak(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SweepTable table = eta_sweep(cfg.n_max, cfg.tau_values, eta_options(cfg));
  if (!table.all_ok() && !cfg.keep_going) {
    for (const SweepCell& cell : table.cells)
      if (!cell.ok) err << "error: " << cell.error << "\n";
    return kExitFailure;
  }
  CsvBuffer csv(metadata_line(cfg), {"tau", "n_star", "boundary_flag", "eta_at_peak"});
  std::vector<double> row(table.n_values.size());
  for (std::size_t t = 0; t < table.tau_values.size(); ++t) {
    bool row_ok = true;
    for (std::size_t i = 0; i < table.n_values.size(); ++i) {
      const SweepCell& cell = table.at(t, i);
      row_ok = row_ok && cell.ok;
      row[i] = cell.ok ? cell.eta.value : -1.0;
    }
    const PeakResult peak = peak_of(table.n_values, row);
    if (!row_ok) {
      csv.add_row({format_real(table.tau_values[t]), "nan", "nan", "nan"});
      continue;
    }
    csv.add_row({format_real(table.tau_values[t]), std::to_string(peak.n_star),
                 peak.boundary ? "1" : "0", format_real(peak.eta_at_peak)});
  }
  return csv.flush(cfg.out, out, err) ? kExitOk : kExitFailure;
}

int cmd_populations(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::string> columns{"n", "tau", "k", "p_k"};
  if (cfg.oracle) {
    columns.push_back("p_k_ode");
    columns.push_back("abs_diff");
  }
  CsvBuffer csv(metadata_line(cfg), columns);
  for (int n : cfg.n_values) {
    for (double tau : cfg.tau_values) {
      std::vector<double> p;
      std::vector<double> ode;
      try {
        p = populations(n, tau);
        if (cfg.oracle) ode = oracles::lindblad_populations(n, tau, 0.0, {n + 1, 1e-3});
      } catch (const std::exception& e) {
        err << "error: n=" << n << " tau=" << tau << ": " << e.what() << "\n";
        if (!cfg.keep_going) return kExitFailure;
        continue;
      }
      for (int k = 0; k <= n; ++k) {
        std::vector<std::string> row{std::to_string(n), format_real(tau), std::to_string(k),
                                     format_real(p[k])};
        if (cfg.oracle) {
          row.push_back(format_real(ode[k]));
          row.push_back(format_real(std::abs(ode[k] - p[k])));
        }
        csv.add_row(row);
      }
    }
  }
  return csv.flush(cfg.out, out, err) ? kExitOk : kExitFailure;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.command) {
    case Command::grid:
      return cmd_grid(cfg, out, err);
    case Command::eta:
      return cmd_eta(cfg, out, err);
    case Command::peak:
      return cmd_peak(cfg, out, err);
    case Command::populations:
      return cmd_populations(cfg, out, err);
    case Command::validate:
      return cmd_validate(cfg, out, err);
  }
  return kExitUsage;
}

}  // namespace fockdecay::cli

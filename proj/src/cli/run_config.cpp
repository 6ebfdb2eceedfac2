#include <cmath>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "fockdecay/cli.hpp"
#include "fockdecay/states.hpp"

namespace fockdecay::cli {

namespace {

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw UsageError("not a number: '" + text + "'");
  return value;
}

std::vector<double> range(double first, double last, double step) {
  if (!(step > 0.0)) throw UsageError("range step must be positive");
  std::vector<double> values;
  if (last < first) return values;
  const auto count = static_cast<long>(std::floor((last - first) / step + 1e-9)) + 1;
  values.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) values.push_back(first + static_cast<double>(i) * step);
  return values;
}

std::vector<int> levels_upto(int n_max) {
  std::vector<int> v;
  for (int n = 0; n <= n_max; ++n) v.push_back(n);
  return v;
}

void apply_preset(RunConfig& cfg, const std::string& preset, bool has_n, bool has_tau) {
  auto expect = [&](Command c) {
    if (cfg.command != c)
      throw UsageError("preset " + preset + " belongs to the '" + to_string(c) + "' command");
  };
  if (preset == "fig1a") {
    expect(Command::grid);
    if (!has_n) cfg.n_values = {1, 4, 7};
    if (!has_tau) cfg.tau_values = {0.0, 0.15, 0.3};
  } else if (preset == "fig1b") {
    expect(Command::eta);
    if (!has_n) cfg.n_values = {1, 4, 7};
    if (!has_tau) cfg.tau_values = range(0.0, 1.0, 0.01);
  } else if (preset == "fig1c") {
    expect(Command::eta);
    if (!has_n) cfg.n_values = levels_upto(cfg.n_max);
    if (!has_tau) cfg.tau_values = {0.15, 0.20, 0.25, 0.30};
  } else if (preset == "fig2a") {
    expect(Command::peak);
    if (!has_tau) cfg.tau_values = range(0.01, 0.5, 0.01);
  } else if (preset == "fig2b") {
    expect(Command::populations);
    if (!has_n) cfg.n_values = {1, 3};
    if (!has_tau) cfg.tau_values = range(0.0, 3.0, 0.01);
  } else {
    throw UsageError("unknown preset '" + preset + "'");
  }
}

std::string default_preset(Command command) {
  switch (command) {
    case Command::grid:
      return "fig1a";
    case Command::eta:
      return "fig1c";
    case Command::peak:
      return "fig2a";
    case Command::populations:
      return "fig2b";
    case Command::validate:
      break;
  }
  return {};
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += fmt::format("{}", values[i]);
  }
  return s;
}

}  // namespace

std::string to_string(Command command) {
  switch (command) {
    case Command::grid:
      return "grid";
    case Command::eta:
      return "eta";
    case Command::peak:
      return "peak";
    case Command::populations:
      return "populations";
    case Command::validate:
      return "validate";
  }
  return "unknown";
}

std::vector<double> parse_tau_spec(const std::string& spec) {
  const auto first = spec.find(':');
  if (first == std::string::npos) return {parse_real(spec)};
  const auto second = spec.find(':', first + 1);
  if (second == std::string::npos || spec.find(':', second + 1) != std::string::npos)
    throw UsageError("tau range must look like a:b:step, got '" + spec + "'");
  return range(parse_real(spec.substr(0, first)),
               parse_real(spec.substr(first + 1, second - first - 1)),
               parse_real(spec.substr(second + 1)));
}

void finalize(RunConfig& cfg) {
  const bool has_n = !cfg.n_values.empty();
  const bool has_tau = !cfg.tau_values.empty();
  if (cfg.command != Command::validate) {
    const std::string preset = cfg.preset.value_or(default_preset(cfg.command));
    apply_preset(cfg, preset, has_n, has_tau);
  }

  if (cfg.n_max < 0 || cfg.n_max > kMaxLevel) throw UsageError("--n-max must lie in [0, 50]");
  for (int n : cfg.n_values)
    if (n < 0 || n > kMaxLevel) throw UsageError("--n values must lie in [0, 50]");
  for (double t : cfg.tau_values)
    if (!std::isfinite(t) || t < 0.0 || t > kMaxTau)
      throw UsageError("--tau values must lie in [0, 50]");
  if (!std::isfinite(cfg.nbar) || cfg.nbar < 0.0) throw UsageError("--nbar must be non-negative");
  if (cfg.tolerance && !(*cfg.tolerance >= 0.0)) throw UsageError("--tol must be non-negative");

  switch (cfg.command) {
    case Command::grid:
      if (!(cfg.grid_step > 0.0) || !(cfg.grid_extent > 0.0))
        throw UsageError("--grid-extent and --grid-step must be positive");
      if (cfg.grid_extent / cfg.grid_step > 5000.0) throw UsageError("grid too fine");
      break;
    case Command::peak:
      if (cfg.tau_values.empty()) throw UsageError("peak needs a non-empty tau grid");
      for (double t : cfg.tau_values)
        if (!(t > 0.0)) throw UsageError("peak needs strictly positive tau values");
      [[fallthrough]];
    case Command::eta:
    case Command::populations:
      if (cfg.nbar > 0.0)
        throw UsageError("closed-form " + to_string(cfg.command) + " requires --nbar 0");
      break;
    case Command::validate:
      break;
  }
  if (cfg.command != Command::validate && cfg.command != Command::peak && cfg.tau_values.empty())
    throw UsageError("empty tau grid");
}

std::string metadata_line(const RunConfig& cfg) {
  std::string line = fmt::format("# fockdecay {} command={}", FOCKDECAY_VERSION, to_string(cfg.command));
  if (cfg.preset) line += " preset=" + *cfg.preset;
  switch (cfg.command) {
    case Command::peak:
      line += fmt::format(" n_max={}", cfg.n_max);
      break;
    case Command::validate:
      break;
    default:
      line += " n=" + join(cfg.n_values);
      break;
  }
  if (cfg.command != Command::validate) line += " tau=" + join(cfg.tau_values);
  line += fmt::format(" nbar={}", cfg.nbar);
  if (cfg.command == Command::grid)
    line += fmt::format(" grid_extent={} grid_step={}", cfg.grid_extent, cfg.grid_step);
  if (cfg.tolerance) line += fmt::format(" tol={}", *cfg.tolerance);
  if (cfg.oracle) line += " oracle=1";
  if (cfg.keep_going) line += " keep_going=1";
  if (cfg.break_sign) line += " break_sign=1";
  return line;
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  return fmt::format("{:.16e}", value);
}

}  // namespace fockdecay::cli

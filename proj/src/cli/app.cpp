#include <CLI11.hpp>

#include <ostream>

#include "fockdecay/cli.hpp"
#include "fockdecay/errors.hpp"

namespace fockdecay::cli {

namespace {

struct RawFlags {
  std::vector<int> n;
  std::optional<int> n_max;
  std::vector<std::string> tau;
  double nbar = 0.0;
  std::optional<double> grid_extent;
  std::optional<double> grid_step;
  std::optional<double> tol;
  std::string out;
  std::optional<std::string> preset;
  bool oracle = false;
  bool keep_going = false;
  bool break_sign = false;
};

void add_common(CLI::App& sub, RawFlags& f) {
  sub.add_option("--n", f.n, "Initial Fock level (repeatable)");
  sub.add_option("--n-max", f.n_max, "Largest Fock level in a sweep (default 20)");
  sub.add_option("--tau", f.tau, "gamma*t value or inclusive range a:b:step (repeatable)");
  sub.add_option("--nbar", f.nbar, "Mean thermal photon number (default 0)");
  sub.add_option("--grid-extent", f.grid_extent, "Half-width of the square phase-space grid");
  sub.add_option("--grid-step", f.grid_step, "Grid spacing");
  sub.add_option("--tol", f.tol, "Tolerance override");
  sub.add_option("--out", f.out, "Output file (directory for grid); stdout if omitted");
  sub.add_option("--preset", f.preset, "Figure preset")
      ->check(CLI::IsMember({"fig1a", "fig1b", "fig1c", "fig2a", "fig2b"}));
  sub.add_flag("--oracle", f.oracle, "Add ODE-integrated populations");
  sub.add_flag("--keep-going", f.keep_going, "Record failed cells and continue");
  sub.add_flag("--break-sign", f.break_sign, "Flip the characteristic-function exponent sign (negative control)");
}

}  // namespace

int main(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decoherence of Fock states: Wigner negativity, populations, validation", "fockdecay"};
  app.require_subcommand(1);
  RawFlags flags;
  const std::pair<const char*, Command> commands[] = {
      {"grid", Command::grid},
      {"eta", Command::eta},
      {"peak", Command::peak},
      {"populations", Command::populations},
      {"validate", Command::validate}};
  const char* descriptions[] = {
      "Dump W(x, p) on a square grid, one CSV per (n, tau)",
      "Negative volume sweep over (n, tau)",
      "Peak eigenstate n*(tau)",
      "Occupation probabilities p_k(tau)",
      "Run the oracle and metric checks, write a JSON report"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].first, descriptions[i]);
    add_common(*sub, flags);
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  RunConfig cfg;
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (subs[i]->parsed()) cfg.command = commands[i].second;
  cfg.preset = flags.preset;
  cfg.n_values = flags.n;
  if (flags.n_max) cfg.n_max = *flags.n_max;
  cfg.nbar = flags.nbar;
  if (flags.grid_extent) cfg.grid_extent = *flags.grid_extent;
  if (flags.grid_step) cfg.grid_step = *flags.grid_step;
  cfg.tolerance = flags.tol;
  cfg.out = flags.out;
  cfg.oracle = flags.oracle;
  cfg.keep_going = flags.keep_going;
  cfg.break_sign = flags.break_sign;

  try {
    bool tau_given = false;
    for (const std::string& spec : flags.tau) {
      tau_given = true;
      for (double t : parse_tau_spec(spec)) cfg.tau_values.push_back(t);
    }
    if (tau_given && cfg.tau_values.empty()) throw UsageError("--tau produced an empty grid");
    finalize(cfg);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    return run(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace fockdecay::cli

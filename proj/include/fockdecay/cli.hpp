#pragma once

// Command-line front end: figure-data CSV dumps and the validation report.
//
// Exit codes are a stable contract: 0 success, 1 compute or validation
// failure, 2 usage error.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fockdecay::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

enum class Command { grid, eta, peak, populations, validate };

std::string to_string(Command command);

struct RunConfig {
  Command command = Command::validate;
  std::optional<std::string> preset;
  std::vector<int> n_values;
  int n_max = 20;
  std::vector<double> tau_values;
  double nbar = 0.0;
  double grid_extent = 5.0;
  double grid_step = 0.05;
  std::optional<double> tolerance;
  std::string out;  // file for single-table commands ("" = stdout), directory for grid
  bool oracle = false;
  bool keep_going = false;
  bool break_sign = false;
};

/// Thrown for configuration problems; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses one --tau argument: a number or an inclusive range "a:b:step".
std::vector<double> parse_tau_spec(const std::string& spec);

/// Fills preset/command defaults and checks ranges. Throws UsageError.
void finalize(RunConfig& cfg);

/// "# fockdecay <version> command=... key=value ..." metadata line.
std::string metadata_line(const RunConfig& cfg);

/// 17 significant digits, scientific.
std::string format_real(double value);

int cmd_grid(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_eta(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_peak(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_populations(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Grid file name for one (n, tau, nbar) triple.
std::string grid_file_name(int n, double tau, double nbar);

/// Dispatches a finalized config.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full entry point: parse args (args[0] is the program name), run, return exit code.
int main(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fockdecay::cli

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fockdecay/cli.hpp"
#include "fockdecay/states.hpp"

namespace fs = std::filesystem;
using namespace fockdecay;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "fockdecay");
  std::ostringstream out, err;
  const int code = cli::main(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const char* env = std::getenv("FOCKDECAY_TEST_TMP");
  fs::path dir = env ? fs::path(env) : fs::temp_directory_path() / "fockdecay_cli_tests";
  dir /= name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text, std::string* header = nullptr) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      if (header) *header = line;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parse_tau_spec") {
  CHECK(cli::parse_tau_spec("0.25") == std::vector<double>{0.25});
  const auto r = cli::parse_tau_spec("0:1:0.25");
  REQUIRE(r.size() == 5);
  CHECK(r.back() == doctest::Approx(1.0));
  CHECK(cli::parse_tau_spec("0:1:0.01").size() == 101);
  CHECK(cli::parse_tau_spec("1:0:0.1").empty());
  CHECK_THROWS_AS(cli::parse_tau_spec("abc"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_tau_spec("0:1:0"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_tau_spec("0:1"), cli::UsageError);
}

TEST_CASE("format_real") {
  CHECK(cli::format_real(0.5) == "5.0000000000000000e-01");
  CHECK(cli::format_real(std::nan("")) == "nan");
}

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({"eta", "--tau", "1:0:0.1"}).code == cli::kExitUsage);
  CHECK(invoke({"eta", "--no-such-flag"}).code == cli::kExitUsage);
  CHECK(invoke({"eta", "--nbar", "0.5", "--tau", "0.1"}).code == cli::kExitUsage);
  CHECK(invoke({"peak", "--tau", "0"}).code == cli::kExitUsage);
  CHECK(invoke({"eta", "--preset", "fig2a"}).code == cli::kExitUsage);
  CHECK(invoke({"eta", "--preset", "nonsense"}).code == cli::kExitUsage);
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"--help"}).code == cli::kExitOk);
}

TEST_CASE("grid dumps") {
  const fs::path dir = scratch("grid");
  const Run run = invoke({"grid", "--n", "0", "--n", "1", "--n", "7", "--tau", "0", "--tau", "0.3",
                          "--out", dir.string()});
  REQUIRE(run.code == cli::kExitOk);
  CHECK(fs::exists(dir / cli::grid_file_name(1, 0.0, 0.0)));

  std::string header;
  const auto n1 = csv_rows(slurp(dir / cli::grid_file_name(1, 0.0, 0.0)), &header);
  CHECK(header == "x,p,W");
  CHECK(n1.size() == 201 * 201);
  bool saw_origin = false;
  for (const auto& row : n1)
    if (std::stod(row[0]) == 0.0 && std::stod(row[1]) == 0.0) {
      saw_origin = true;
      CHECK(std::abs(std::stod(row[2]) + 1.0 / std::numbers::pi) < 1e-15);
    }
  CHECK(saw_origin);

  for (const auto& row : csv_rows(slurp(dir / cli::grid_file_name(0, 0.3, 0.0))))
    CHECK(std::stod(row[2]) >= 0.0);

  double riemann = 0.0;
  for (const auto& row : csv_rows(slurp(dir / cli::grid_file_name(7, 0.3, 0.0)))) {
    const double x = std::stod(row[0]), p = std::stod(row[1]), w = std::stod(row[2]);
    CHECK(w == wigner_t({7, 0.3, 0.0}, {x, p}));
    riemann += w * 0.05 * 0.05;
  }
  CHECK(std::abs(riemann - 1.0) < 1e-3);
}

TEST_CASE("grid at finite temperature goes through the transform") {
  const fs::path dir = scratch("grid_nbar");
  const Run run = invoke({"grid", "--n", "1", "--tau", "0.5", "--nbar", "0.2", "--grid-extent", "1",
                          "--grid-step", "0.5", "--out", dir.string()});
  REQUIRE(run.code == cli::kExitOk);
  const auto rows = csv_rows(slurp(dir / cli::grid_file_name(1, 0.5, 0.2)));
  CHECK(rows.size() == 25);
}

TEST_CASE("eta preset fig1c") {
  const Run run = invoke({"eta", "--preset", "fig1c"});
  REQUIRE(run.code == cli::kExitOk);
  std::string header;
  const auto rows = csv_rows(run.out, &header);
  CHECK(header == "n,tau,eta,method,error_estimate");
  REQUIRE(rows.size() == 84);
  bool found = false;
  for (const auto& row : rows)
    if (row[0] == "1" && std::stod(row[1]) == 0.15) {
      found = true;
      CHECK(std::stod(row[2]) > 0.0);
    }
  CHECK(found);

  const Run at0 = invoke({"eta", "--n", "1", "--tau", "0"});
  const auto r0 = csv_rows(at0.out);
  REQUIRE(r0.size() == 1);
  CHECK(std::abs(std::stod(r0[0][2]) - 0.2130613) < 1e-6);
}

TEST_CASE("out-of-range levels are rejected before computing") {
  CHECK(invoke({"eta", "--n", "60", "--tau", "0.1"}).code == cli::kExitUsage);
  CHECK(invoke({"eta", "--n", "1", "--n", "60", "--tau", "0.1", "--keep-going"}).code == cli::kExitUsage);
  CHECK(invoke({"eta", "--n-max", "51"}).code == cli::kExitUsage);
}

TEST_CASE("peak command") {
  const Run run = invoke({"peak", "--tau", "0.15", "--tau", "0.3"});
  REQUIRE(run.code == cli::kExitOk);
  const auto rows = csv_rows(run.out);
  REQUIRE(rows.size() == 2);
  CHECK(std::stoi(rows[0][1]) >= std::stoi(rows[1][1]));
  CHECK(rows[0][2] == "0");
}

TEST_CASE("populations") {
  const Run run = invoke({"populations", "--n", "1", "--tau", "0:2:0.5"});
  REQUIRE(run.code == cli::kExitOk);
  const auto rows = csv_rows(run.out);
  REQUIRE(rows.size() == 10);
  for (const auto& row : rows)
    if (row[2] == "1") CHECK(std::abs(std::stod(row[3]) - std::exp(-std::stod(row[1]))) < 1e-15);

  const Run preset = invoke({"populations", "--preset", "fig2b"});
  REQUIRE(preset.code == cli::kExitOk);
  std::map<std::pair<std::string, std::string>, double> sums;
  for (const auto& row : csv_rows(preset.out)) sums[{row[0], row[1]}] += std::stod(row[3]);
  CHECK(sums.size() == 2 * 301);
  for (const auto& [key, total] : sums) CHECK(std::abs(total - 1.0) < 1e-12);

  // n = 3 at tau = ln 2: survival 1/2 per quantum.
  const Run half = invoke({"populations", "--n", "3", "--tau", std::to_string(std::log(2.0))});
  const auto h = csv_rows(half.out);
  REQUIRE(h.size() == 4);
  const double expect[] = {0.125, 0.375, 0.375, 0.125};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(std::stod(h[k][3]) - expect[k]) < 1e-6);

  std::string header;
  const Run ode = invoke({"populations", "--n", "3", "--tau", "0.5", "--oracle"});
  const auto o = csv_rows(ode.out, &header);
  CHECK(header == "n,tau,k,p_k,p_k_ode,abs_diff");
  for (const auto& row : o) CHECK(std::stod(row[5]) < 1e-7);
}

TEST_CASE("validate") {
  const fs::path dir = scratch("validate");
  const Run ok = invoke({"validate", "--out", (dir / "report.json").string()});
  CHECK(ok.code == cli::kExitOk);
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(report["passed"] == true);
  CHECK(report["checks"].size() >= 8);
  for (const auto& check : report["checks"]) {
    CHECK(check.contains("check"));
    CHECK(check.contains("max_error"));
    CHECK(check.contains("tolerance"));
    CHECK(check["pass"] == true);
  }

  const Run broken = invoke({"validate", "--break-sign"});
  CHECK(broken.code == cli::kExitFailure);
  const auto b = nlohmann::json::parse(broken.out);
  CHECK(b["passed"] == false);
  bool diffusion_failed = false;
  for (const auto& check : b["checks"])
    if (check["check"] == "diffusion_residual") diffusion_failed = !check["pass"].get<bool>();
  CHECK(diffusion_failed);
  CHECK(broken.err.find("diffusion_residual") != std::string::npos);

  const Run zero = invoke({"validate", "--tol", "0"});
  CHECK(zero.code == cli::kExitFailure);
}

TEST_CASE("output is reproducible and stamped") {
  const Run a = invoke({"eta", "--preset", "fig1b"});
  const Run b = invoke({"eta", "--preset", "fig1b"});
  REQUIRE(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("# fockdecay ", 0) == 0);
  CHECK(a.out.find("command=eta") != std::string::npos);

  const fs::path dir = scratch("stamp");
  const fs::path file = dir / "peak.csv";
  REQUIRE(invoke({"peak", "--tau", "0.2", "--out", file.string()}).code == cli::kExitOk);
  CHECK(slurp(file).rfind("# fockdecay ", 0) == 0);
}

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dqw/coin.hpp"
#include "dqw/localize.hpp"
#include "dqw/types.hpp"

namespace dqw {

// Angle argument: either a symbolic pi-fraction per the grammar
// [-] [INT] "pi" ["/" INT], or decimal radians. Symbolic values resolve
// exactly so special-angle dispatch is not lost to decimal rounding.
struct ThetaExpr {
  std::string text;
  double radians = 0.0;
  bool symbolic = false;
  long long num = 0;  // numerator of the pi multiple (sign included)
  long long den = 1;
  friend bool operator==(const ThetaExpr&, const ThetaExpr&) = default;
};

ThetaExpr parse_theta(const std::string& s);

struct RunConfig {
  std::string subcommand;
  std::optional<CoinClass> cls;
  std::optional<ThetaExpr> theta;
  std::optional<std::pair<double, double>> xy;
  int n = 50;
  std::string init_text = "s=1,r=0,coin=uniform";
  InitialCondition init = make_init_uniform(1, 0);
  long T = 300;
  unsigned long long t_max = 1000;
  unsigned long long q_max = 10000;
  int grid = 60;
  double tol = 1e-8;
  std::vector<DihedralVertex> vertices;
  std::vector<int> ns;
  std::string method;  // period: auto|theorem|spectral|brute, localize: direct|spectral|limit
  std::string out = "-";
  std::string format;  // "" = subcommand default, else csv|json
  bool parallel = false;
  bool eigenvalue_power = false;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Build a validated RunConfig from CLI tokens (without the program name).
// Malformed input throws InputError; --help throws HelpRequested.
struct HelpRequested {
  std::string message;
};
RunConfig parse_config(const std::vector<std::string>& argv);

// Canonical token list; parse_config(render_config(c)) == c.
std::vector<std::string> render_config(const RunConfig& c);

InitialCondition parse_init(const std::string& text);
std::vector<DihedralVertex> parse_vertices(const std::string& text, int n);

// Execute a parsed config, writing results per --out/--format.
void run_config(const RunConfig& c, std::ostream& stdout_stream);

// Full entry point: parse, run, map errors to exit codes
// (0 ok, 2 usage/input, 3 I/O, 4 numerical/capacity).
int run_cli(const std::vector<std::string>& argv, std::ostream& stdout_stream,
            std::ostream& stderr_stream);

}  // namespace dqw

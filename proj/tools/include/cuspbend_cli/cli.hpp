#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cuspbend::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string subcommand;
  /// Input file, "-" for stdin.
  std::string input = "-";
  /// Output file; empty writes to the output stream.
  std::string out;
  std::size_t n = 3;
  double tol = 1e-9;
  std::uint64_t seed = 1;
  bool exact = false;
  /// sweep: "start:stop:steps" over s (applied to every slot).
  std::string grid = "0:2:21";
  /// sweep: b for every slot ("1") or a comma list of n-1 values.
  std::string b = "1";
  /// sweep: optional SVG chart of a^-1 against s.
  std::string svg;
  /// verify: suite name or "all".
  std::string suite = "all";
  /// verify: test hook adding 1e-3 noise to H(psi) generators.
  bool perturb = false;
};

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 1;
  std::vector<double> points() const;
};

/// Throws std::invalid_argument on malformed text.
Grid parse_grid(const std::string& text);

/// 17 significant digits, '.' decimal point, "inf"/"nan" for non-finite.
std::string format_double(double x);

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_bend(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);
int run_classify(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);
int run_hilbert(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and dispatches.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace cuspbend::cli

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kalmar/types.hpp"

namespace kalmar::cli {

enum class OutputFormat { text, csv };

/// Settings shared by all subcommands. Flags override the environment
/// variables KALMAR_CACHE and KALMAR_SIEVE_BOUND, which override defaults.
struct RunConfig {
  Real precision = 1e-13L;
  std::uint64_t sieve_bound = 10'000'000;
  Real kappa = 1.5L;
  unsigned omega_max = 12;
  std::string cache_path;
  OutputFormat output_format = OutputFormat::text;
  unsigned worker_count = 1;
  int digits = 12;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitResource = 2;

/// Runs one subcommand. args excludes the program name. Tables and values go
/// to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Invariant suite behind `kalmar verify`.
std::vector<CheckResult> run_invariant_suite(const RunConfig& config);

}  // namespace kalmar::cli

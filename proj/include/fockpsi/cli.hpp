#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fockpsi {

/// Settings shared by all commands. Read from a flat key=value file via
/// --config; explicit command-line flags override file values.
struct RunConfig {
  std::string weight = "linear";
  int n = 1;
  int N = 8;                    // truncation degree for matrices
  int rmax = 160;               // highest moment index; linear weight overflows past 170
  double tol = 1e-12;           // moment quadrature tolerance
  double check_tol = 1e-9;      // algebraic conditions
  double series_tol = 1e-7;     // kernel-series conditions
  double defect_tol = 1e-8;     // truncated-matrix defects
  double tail_tol = 1e-12;      // kernel series truncation
  int max_terms = 150;          // kernel series terms (clamped to the moment table)
  int samples = 64;
  std::uint64_t seed = 20240917;
  std::string output;           // empty: standard output
  std::string format;           // csv | json; empty: command default
};

/// Parses key=value lines ('#' starts a comment). Unknown keys and
/// non-positive sizes or tolerances throw InputError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
void validate(const RunConfig& cfg);

/// Runs one command (args excludes the program name). Returns 0 on success,
/// 1 on a failed verdict, threshold or numerical failure, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fockpsi

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kglab {

/// Every parameter of a run. Sections of the config file are noted per group;
/// `docs/experiments.md` lists the keys each experiment reads.
struct RunConfig {
  // [run]
  std::string experiment;
  std::uint64_t seed = 20240601;
  std::string out;
  bool strict = false;
  int jobs = 1;

  // [grid]
  int dim = 1;
  int n = 256;
  double half_width = 20.0;

  // [stepper]
  double dt = 1e-3;
  double t_final = 1.0;
  int stride = 1;
  bool dealias = true;
  double blowup_threshold = 10.0;
  int mu = 1;

  // [limit]
  double theta = 1.0 / 16.0;
  std::vector<double> lambda_list{4.0, 8.0, 16.0};
  double t_mid = 1.0;
  double dt_kg = 0.01;
  int limit_stride = 1;
  double sigma = 6.0;
  double amplitude = 1.0;
  /// When positive in a focusing run, rescales the datum to this fraction of
  /// the mass bound (2 C_d)^{-d/4} ||Q||.
  double mass_fraction = 0.0;
  bool ledger = true;
  bool linear = false;

  // [scan]
  std::vector<double> amplitudes{0.5, 0.9, 1.0, 1.05, 1.1};
  std::string shape = "ground-state";

  // [tables]
  std::vector<int> dims{1, 2, 3};
  int max_index = 64;
  int samples = 20;
  std::vector<int> scales{2, 4, 8};
  std::vector<double> cutoffs{1.0, 2.0, 4.0};
  std::vector<double> times{-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0};

  bool operator==(const RunConfig&) const = default;
};

struct ConfigError {
  int line = 0;  // 0 when the error is not tied to a line
  std::string message;
};

struct ParseResult {
  RunConfig config;
  std::vector<ConfigError> errors;
  /// Unknown keys ignored in lenient mode.
  std::vector<ConfigError> warnings;
  bool ok() const { return errors.empty(); }
};

/// Parses the line-oriented format:
///
///   # comment
///   [section]
///   key = value
///
/// Lists are comma separated and booleans are true/false. Keys before the
/// first header belong to [run]. Every error carries its line number.
ParseResult parse_config(const std::string& text, bool strict = false);

/// Semantic checks on a parsed config; returns the failures.
std::vector<ConfigError> validate_config(const RunConfig& config);

/// Writes every field, so parse_config(write_config(c)) == c.
std::string write_config(const RunConfig& config);

std::string format_errors(const std::vector<ConfigError>& errors);

}  // namespace kglab

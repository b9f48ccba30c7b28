#pragma once

#include <deque>
#include <filesystem>
#include <string>
#include <vector>

#include "kglab/config.hpp"

namespace kglab {

/// One asserted invariant of an experiment.
struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// A CSV table. Cells are preformatted so reruns write identical bytes.
class Table {
 public:
  Table(std::string file, std::vector<std::string> columns);

  const std::string& file() const { return file_; }
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_.size(); }

  /// Appends a row; the cell count must match the header.
  void add_row(std::vector<std::string> cells);
  std::string csv() const;

 private:
  std::string file_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Shortest round-trip text for a double (%.17g); "nan" and "inf" as such.
std::string cell(double v);
std::string cell(long v);
std::string cell(int v);
std::string cell(bool v);
std::string cell(std::string v);

struct ExperimentReport {
  std::string experiment;
  std::vector<Check> checks;
  std::deque<Table> tables;  // references from table() stay valid
  /// Grids and other derived settings, copied into the manifest.
  std::vector<std::pair<std::string, std::string>> settings;

  bool passed() const;
  void check(std::string name, bool passed, double value, double tolerance, std::string detail = {});
  /// Appends a table and returns it; earlier references remain valid.
  Table& table(std::string file, std::vector<std::string> columns);
  void set(std::string key, std::string value);
};

/// Machine-readable failure list: one "check,value,tolerance,detail" line per failed check.
std::string failure_list(const ExperimentReport& report);

/// Writes every table, manifest.txt and failures.csv into `dir` (created if needed).
/// The timestamp appears only in the manifest.
void write_report(const ExperimentReport& report, const RunConfig& config, const std::filesystem::path& dir);

/// Build identification from `git describe` at configure time.
std::string build_version();

}  // namespace kglab

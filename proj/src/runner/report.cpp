#include "kglab/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "kglab/log.hpp"

#ifndef KGLAB_GIT_DESCRIBE
#define KGLAB_GIT_DESCRIBE "unknown"
#endif

namespace kglab {
namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  os << text;
  if (!os) throw Error("write failed for " + path.string());
}

}  // namespace

Table::Table(std::string file, std::vector<std::string> columns) : file_(std::move(file)), columns_(std::move(columns)) {}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size())
    throw Error("table " + file_ + ": row has " + std::to_string(cells.size()) + " cells, header has " +
                std::to_string(columns_.size()));
  rows_.push_back(std::move(cells));
}

std::string Table::csv() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(cells[i]);
    }
    out += '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return out;
}

std::string cell(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
std::string cell(long v) { return std::to_string(v); }
std::string cell(int v) { return std::to_string(v); }
std::string cell(bool v) { return v ? "true" : "false"; }
std::string cell(std::string v) { return v; }

bool ExperimentReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

void ExperimentReport::check(std::string name, bool passed, double value, double tolerance, std::string detail) {
  checks.push_back({std::move(name), passed, value, tolerance, std::move(detail)});
}

Table& ExperimentReport::table(std::string file, std::vector<std::string> columns) {
  tables.emplace_back(std::move(file), std::move(columns));
  return tables.back();
}

void ExperimentReport::set(std::string key, std::string value) { settings.emplace_back(std::move(key), std::move(value)); }

std::string failure_list(const ExperimentReport& report) {
  std::string out = "check,value,tolerance,detail\n";
  for (const auto& c : report.checks) {
    if (c.passed) continue;
    out += csv_escape(c.name) + ',' + cell(c.value) + ',' + cell(c.tolerance) + ',' + csv_escape(c.detail) + '\n';
  }
  return out;
}

void write_report(const ExperimentReport& report, const RunConfig& config, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& t : report.tables) write_file(dir / t.file(), t.csv());
  write_file(dir / "failures.csv", failure_list(report));

  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));

  std::string m;
  m += "experiment: " + report.experiment + '\n';
  m += "build: " + build_version() + '\n';
  m += "timestamp: " + std::string(stamp) + '\n';
  m += "seed: " + std::to_string(config.seed) + '\n';
  m += "result: " + std::string(report.passed() ? "pass" : "fail") + '\n';
  m += "\n# settings\n";
  for (const auto& [k, v] : report.settings) m += k + ": " + v + '\n';
  m += "\n# checks (name, passed, value, tolerance)\n";
  for (const auto& c : report.checks)
    m += c.name + ", " + (c.passed ? "pass" : "FAIL") + ", " + cell(c.value) + ", " + cell(c.tolerance) +
         (c.detail.empty() ? "" : ", " + c.detail) + '\n';
  m += "\n# outputs\n";
  for (const auto& t : report.tables) m += t.file() + '\n';
  m += "\n# config (reparses to the same run)\n";
  m += write_config(config);
  write_file(dir / "manifest.txt", m);
}

std::string build_version() { return KGLAB_GIT_DESCRIBE; }

}  // namespace kglab

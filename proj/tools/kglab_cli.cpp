// kglab <experiment> --config <path> [--out <dir>] [--strict] [--seed <u64>] [--jobs <n>]
//
// Exit codes: 0 all checks pass, 1 a check failed or the run aborted, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kglab/config.hpp"
#include "kglab/experiments.hpp"
#include "kglab/log.hpp"
#include "kglab/report.hpp"

namespace {

void print_registry(std::ostream& os) {
  os << "experiments:\n";
  for (const auto& e : kglab::list_experiments()) os << "  " << e.name << "  " << e.summary << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Klein-Gordon / Schroedinger limit experiments"};
  std::string experiment, config_path, out;
  bool strict = false, list = false;
  std::uint64_t seed = 0;
  int jobs = 0;
  app.add_option("experiment", experiment, "experiment name");
  app.add_option("--config", config_path, "config file");
  app.add_option("--out", out, "output directory (default $KGLAB_OUT/<experiment>)");
  app.add_flag("--strict", strict, "reject unknown config keys and promote warnings to errors");
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--list", list, "print the experiment registry");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (list) {
    print_registry(std::cout);
    return 0;
  }
  if (experiment.empty() || !kglab::find_experiment(experiment)) {
    std::cerr << (experiment.empty() ? "no experiment given" : "unknown experiment '" + experiment + "'") << "\n";
    print_registry(std::cerr);
    return 2;
  }

  kglab::RunConfig config;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "cannot read config " << config_path << '\n';
      return 2;
    }
    std::stringstream text;
    text << in.rdbuf();
    const kglab::ParseResult parsed = kglab::parse_config(text.str(), strict);
    for (const auto& w : parsed.warnings) std::cerr << config_path << ": warning: line " << w.line << ": " << w.message << '\n';
    if (!parsed.ok()) {
      std::cerr << config_path << ": invalid config\n" << kglab::format_errors(parsed.errors);
      return 2;
    }
    config = parsed.config;
    if (!config.experiment.empty() && config.experiment != experiment)
      std::cerr << "note: running '" << experiment << "'; config names '" << config.experiment << "'\n";
  }
  config.experiment = experiment;
  if (strict) config.strict = true;
  if (seed_opt->count()) config.seed = seed;
  if (jobs > 0) config.jobs = jobs;
  if (!out.empty()) config.out = out;
  if (config.out.empty()) {
    const char* env = std::getenv("KGLAB_OUT");
    config.out = (std::filesystem::path(env && *env ? env : "kglab_out") / experiment).string();
  }
  if (const auto errors = kglab::validate_config(config); !errors.empty()) {
    std::cerr << "invalid config\n" << kglab::format_errors(errors);
    return 2;
  }

  if (config.strict) kglab::set_warning_handler([](const std::string& m) { throw kglab::Error(m); });
  try {
    const kglab::ExperimentReport report = kglab::run_experiment(config);
    kglab::write_report(report, config, config.out);
    for (const auto& c : report.checks)
      std::printf("%-4s %s  value=%.6g  tol=%.6g%s%s\n", c.passed ? "ok" : "FAIL", c.name.c_str(), c.value,
                  c.tolerance, c.detail.empty() ? "" : "  ", c.detail.c_str());
    std::printf("%s: %s (outputs in %s)\n", experiment.c_str(), report.passed() ? "pass" : "fail", config.out.c_str());
    if (!report.passed()) {
      std::fputs(kglab::failure_list(report).c_str(), stderr);
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << experiment << ": aborted: " << e.what() << '\n';
    return 1;
  }
}

#pragma once

#include <span>
#include <string_view>

#include "kglab/config.hpp"
#include "kglab/report.hpp"

namespace kglab {

using ExperimentFn = ExperimentReport (*)(const RunConfig&);

struct ExperimentInfo {
  std::string_view name;
  std::string_view summary;
  ExperimentFn run;
};

std::span<const ExperimentInfo> list_experiments();
/// nullptr for an unknown name.
const ExperimentInfo* find_experiment(std::string_view name);

/// Runs config.experiment. Throws Error for an unknown name or an invalid config.
ExperimentReport run_experiment(const RunConfig& config);

}  // namespace kglab

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "mpsim/scenario/experiment.hpp"

namespace mpsim {

// Configuration rejection with the offending field's path, e.g.
// "flows[1].algorithm".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Parses and validates a JSON experiment document. Unknown keys are rejected;
// defaults: seed=1, duration=60, trace_interval=0.1, alpha_total=10.
scenario::ExperimentSpec parse_config(const std::string& text);

scenario::ExperimentSpec load_config_file(const std::filesystem::path& path);

}  // namespace mpsim

#pragma once

#include <filesystem>
#include <string>

#include "mpsim/scenario/experiment.hpp"
#include "mpsim/scenario/runner.hpp"

namespace mpsim::scenario {

// Fixed-width decimal formatting (9 significant digits) so repeated runs
// diff byte-for-byte.
std::string format_number(double value);

std::string trace_csv(const RunResult& result);
std::string throughput_csv(const ExperimentSpec& spec, const RunResult& result);
std::string summary_json(const RunSummary& summary);

// Writes trace.csv, throughput.csv and summary.json into out_dir, creating it
// first. Throws std::runtime_error when the directory or files cannot be
// written.
void write_artifacts(const std::filesystem::path& out_dir, const ExperimentSpec& spec,
                     const RunResult& result);

}  // namespace mpsim::scenario

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "mpsim/config.hpp"
#include "mpsim/scenario/artifacts.hpp"
#include "mpsim/scenario/runner.hpp"

namespace {

void print_summary(const mpsim::scenario::RunSummary& summary) {
  std::cout << "seed " << summary.seed << "  simulated " << summary.total_simulated_s
            << " s  jain " << mpsim::scenario::format_number(summary.jain_index) << "\n";
  for (const auto& flow : summary.flows) {
    std::cout << "  flow " << flow.id << " (" << mpsim::scenario::to_string(flow.kind) << "/"
              << mpsim::cc::to_string(flow.algorithm) << "): goodput "
              << mpsim::scenario::format_number(flow.goodput_bps / 1e6) << " Mb/s";
    if (flow.subflows.size() > 1) {
      std::cout << " [";
      for (std::size_t s = 0; s < flow.subflows.size(); ++s) {
        if (s) std::cout << ", ";
        std::cout << mpsim::scenario::format_number(flow.subflows[s].goodput_bps / 1e6);
      }
      std::cout << "]";
    }
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic packet-level multipath transport simulator"};

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  bool quiet = false;
  int repeat = 1;

  app.add_option("--config", config_path, "experiment config (JSON)")->required();
  app.add_option("--seed", seed, "override the config seed");
  app.add_option("--out", out_dir, "output directory for trace/throughput/summary files");
  app.add_flag("--quiet", quiet, "suppress the per-flow report");
  app.add_option("--repeat", repeat, "run N consecutive seeds into seed_<n> subdirectories")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  mpsim::scenario::ExperimentSpec spec;
  try {
    spec = mpsim::load_config_file(config_path);
  } catch (const mpsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  if (seed) spec.seed = *seed;

  try {
    for (int i = 0; i < repeat; ++i) {
      mpsim::scenario::ExperimentSpec run_spec = spec;
      run_spec.seed = spec.seed + static_cast<std::uint64_t>(i);
      std::filesystem::path dir = out_dir;
      if (repeat > 1) dir /= "seed_" + std::to_string(run_spec.seed);
      const auto result = mpsim::scenario::run_experiment(run_spec);
      mpsim::scenario::write_artifacts(dir, run_spec, result);
      if (!quiet) print_summary(result.summary);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

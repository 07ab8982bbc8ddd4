#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpsim/cc/cc_state.hpp"
#include "mpsim/scenario/experiment.hpp"
#include "mpsim/scenario/metrics.hpp"

namespace mpsim::scenario {

struct TraceRow {
  double time = 0.0;
  std::uint32_t flow = 0;
  std::uint32_t subflow = 0;
  double cwnd = 0.0;
  double ssthresh = 0.0;
  double srtt_ms = 0.0;
  cc::Phase phase = cc::Phase::SlowStart;
};

struct SubflowSummary {
  std::size_t path = 0;
  double mean_cwnd = 0.0;       // trace samples after warm-up
  double goodput_bps = 0.0;     // payload bits after warm-up
  std::uint64_t loss_events = 0;
  std::uint64_t rto_events = 0;
  std::uint64_t delivered_segments = 0;
};

struct FlowSummary {
  std::uint32_t id = 0;
  FlowKind kind = FlowKind::Mptcp;
  cc::Algorithm algorithm = cc::Algorithm::Lia;
  double goodput_bps = 0.0;
  std::vector<SubflowSummary> subflows;
};

struct LinkSummary {
  std::string name;
  double rate_bps = 0.0;
  double mean_queue_delay_s = 0.0;  // waiting time, warm-up excluded
  std::uint64_t drops = 0;
  double delivered_bits = 0.0;      // whole run
};

struct RunSummary {
  std::uint64_t seed = 0;
  std::string rng_algorithm;
  double duration_s = 0.0;
  double warmup_s = 0.0;
  double total_simulated_s = 0.0;
  double jain_index = 0.0;  // across all flows' goodputs
  std::vector<FlowSummary> flows;
  std::vector<LinkSummary> links;
};

struct RunResult {
  std::vector<TraceRow> trace;
  std::vector<Delivery> deliveries;
  RunSummary summary;
};

// Executes one experiment; deterministic given (spec, spec.seed).
RunResult run_experiment(const ExperimentSpec& spec);

}  // namespace mpsim::scenario

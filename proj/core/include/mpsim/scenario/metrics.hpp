#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mpsim::scenario {

// One cumulative-point advance at the receiver.
struct Delivery {
  double time = 0.0;
  std::uint32_t flow = 0;
  std::uint32_t subflow = 0;
  double bits = 0.0;  // payload bits
};

// (sum x)^2 / (n * sum x^2). Throws std::domain_error when empty, when any
// rate is negative, or when all rates are zero.
double jain_index(std::span<const double> rates);

struct ThroughputPoint {
  double time = 0.0;  // interval end
  double bps = 0.0;
};

// Per-flow delivered payload bits per interval, divided by the interval.
// Binning preserves totals: sum(series) * interval == total bits per flow.
std::vector<std::vector<ThroughputPoint>> throughput_series(std::span<const Delivery> deliveries,
                                                            double interval_s, double duration_s,
                                                            std::size_t flow_count);

}  // namespace mpsim::scenario

#include "mpsim/scenario/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mpsim::scenario {

double jain_index(std::span<const double> rates) {
  if (rates.empty()) throw std::domain_error("jain_index needs at least one rate");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : rates) {
    if (x < 0.0) throw std::domain_error("jain_index needs non-negative rates");
    sum += x;
    sum_sq += x * x;
  }
  if (sum_sq == 0.0) throw std::domain_error("jain_index undefined for all-zero rates");
  return sum * sum / (static_cast<double>(rates.size()) * sum_sq);
}

std::vector<std::vector<ThroughputPoint>> throughput_series(std::span<const Delivery> deliveries,
                                                            double interval_s, double duration_s,
                                                            std::size_t flow_count) {
  if (!(interval_s > 0.0)) throw std::invalid_argument("interval must be positive");
  const std::size_t bins =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(duration_s / interval_s)));
  std::vector<std::vector<ThroughputPoint>> series(flow_count);
  for (auto& flow_series : series) {
    flow_series.resize(bins);
    for (std::size_t i = 0; i < bins; ++i)
      flow_series[i].time = static_cast<double>(i + 1) * interval_s;
  }
  for (const auto& d : deliveries) {
    if (d.flow >= flow_count) continue;
    const std::size_t bin =
        std::min(bins - 1, static_cast<std::size_t>(std::floor(d.time / interval_s)));
    series[d.flow][bin].bps += d.bits / interval_s;
  }
  return series;
}

}  // namespace mpsim::scenario

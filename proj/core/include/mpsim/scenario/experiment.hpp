#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mpsim/cc/cc_state.hpp"

namespace mpsim::scenario {

enum class TopologyKind { SharedBottleneck, DisjointPaths, PartiallyShared };
enum class FlowKind { Mptcp, Sptcp };

std::string_view to_string(TopologyKind t);
std::string_view to_string(FlowKind k);

struct LinkParams {
  double rate_bps = 10e6;
  double prop_delay_s = 0.02;      // one way
  std::size_t queue_capacity = 0;  // packets; 0 = bandwidth-delay product, min 10
};

struct FlowSpec {
  FlowKind kind = FlowKind::Mptcp;
  cc::Algorithm algorithm = cc::Algorithm::Lia;
  std::vector<std::size_t> subflow_paths;  // path index per subflow
  double start_time_s = 0.0;
};

// Declarative scenario input; the whole run is a pure function of this plus
// the seed.
struct ExperimentSpec {
  TopologyKind topology = TopologyKind::SharedBottleneck;
  std::vector<LinkParams> paths;          // one bottleneck per path
  std::optional<LinkParams> shared_link;  // extra common hop, PartiallyShared only
  std::vector<FlowSpec> flows;
  double duration_s = 60.0;
  std::uint64_t seed = 1;
  double trace_interval_s = 0.1;
  double alpha_total = cc::kDefaultAlphaTotal;
  double start_jitter_s = 0.01;     // uniform start offset, breaks phase locks
  double access_rate_factor = 10.0; // access/reverse links stay non-bottleneck
};

// Fraction of the run discarded as transient before computing mean metrics.
inline constexpr double kWarmupFraction = 0.2;

std::size_t default_queue_capacity(const LinkParams& params);

}  // namespace mpsim::scenario

#pragma once

#include <memory>
#include <vector>

#include "mpsim/scenario/experiment.hpp"
#include "mpsim/sim/link.hpp"

namespace mpsim::scenario {

// Links plus per-subflow hop chains. Every subflow gets a private access link
// (non-bottleneck by construction); acks return on one generously sized
// reverse link per path, so they are never dropped by default.
struct BuiltTopology {
  struct SubflowWiring {
    std::vector<sim::Link*> forward;
    std::vector<sim::Link*> reverse;
    std::size_t path = 0;
  };

  std::vector<std::unique_ptr<sim::Link>> links;
  std::vector<std::vector<SubflowWiring>> wiring;  // [flow][subflow]
  std::vector<sim::Link*> path_bottlenecks;        // by path id
  sim::Link* shared_bottleneck = nullptr;          // PartiallyShared only
};

BuiltTopology build_shared_bottleneck(const ExperimentSpec& spec, sim::EventQueue& queue);
BuiltTopology build_disjoint_paths(const ExperimentSpec& spec, sim::EventQueue& queue);
BuiltTopology build_partially_shared(const ExperimentSpec& spec, sim::EventQueue& queue);

// Dispatches on spec.topology.
BuiltTopology build_topology(const ExperimentSpec& spec, sim::EventQueue& queue);

}  // namespace mpsim::scenario

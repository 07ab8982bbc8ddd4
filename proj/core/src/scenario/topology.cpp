#include "mpsim/scenario/topology.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mpsim::scenario {

std::string_view to_string(TopologyKind t) {
  switch (t) {
    case TopologyKind::SharedBottleneck: return "shared_bottleneck";
    case TopologyKind::DisjointPaths: return "disjoint_paths";
    case TopologyKind::PartiallyShared: return "partially_shared";
  }
  return "?";
}

std::string_view to_string(FlowKind k) {
  return k == FlowKind::Mptcp ? "mptcp" : "sptcp";
}

std::size_t default_queue_capacity(const LinkParams& params) {
  if (params.queue_capacity > 0) return params.queue_capacity;
  const double rtt = 2.0 * params.prop_delay_s;
  const double bdp_packets = params.rate_bps * rtt / (8.0 * sim::kDataPacketBytes);
  return std::max<std::size_t>(10, static_cast<std::size_t>(std::ceil(bdp_packets)));
}

namespace {

constexpr std::size_t kAccessQueueCapacity = 1000;
constexpr std::size_t kReverseQueueCapacity = 100000;

void check_mapping(const ExperimentSpec& spec) {
  if (spec.flows.empty()) throw std::invalid_argument("no flows configured");
  if (spec.paths.empty()) throw std::invalid_argument("no paths configured");
  for (std::size_t f = 0; f < spec.flows.size(); ++f) {
    const auto& flow = spec.flows[f];
    if (flow.subflow_paths.empty())
      throw std::invalid_argument("flow " + std::to_string(f) + " has no subflows");
    for (std::size_t s = 0; s < flow.subflow_paths.size(); ++s)
      if (flow.subflow_paths[s] >= spec.paths.size())
        throw std::invalid_argument("flow " + std::to_string(f) + " subflow " +
                                    std::to_string(s) + " maps to unknown path " +
                                    std::to_string(flow.subflow_paths[s]));
  }
}

// Common skeleton: per-path bottleneck + reverse link, per-subflow access
// link, optional shared second hop on every forward chain.
BuiltTopology build(const ExperimentSpec& spec, sim::EventQueue& queue, bool with_shared_hop) {
  check_mapping(spec);
  BuiltTopology topo;

  sim::Link* shared = nullptr;
  double shared_prop = 0.0;
  if (with_shared_hop) {
    if (!spec.shared_link)
      throw std::invalid_argument("partially_shared topology needs shared_link");
    const auto& p = *spec.shared_link;
    topo.links.push_back(std::make_unique<sim::Link>(queue, "shared", p.rate_bps,
                                                     p.prop_delay_s,
                                                     default_queue_capacity(p)));
    shared = topo.links.back().get();
    shared_prop = p.prop_delay_s;
    topo.shared_bottleneck = shared;
  }

  std::vector<sim::Link*> reverse_by_path;
  for (std::size_t p = 0; p < spec.paths.size(); ++p) {
    const auto& params = spec.paths[p];
    topo.links.push_back(std::make_unique<sim::Link>(queue, "path" + std::to_string(p),
                                                     params.rate_bps, params.prop_delay_s,
                                                     default_queue_capacity(params)));
    topo.path_bottlenecks.push_back(topo.links.back().get());
    topo.links.push_back(std::make_unique<sim::Link>(
        queue, "path" + std::to_string(p) + ".rev", spec.access_rate_factor * params.rate_bps,
        params.prop_delay_s + shared_prop, kReverseQueueCapacity));
    reverse_by_path.push_back(topo.links.back().get());
  }

  topo.wiring.resize(spec.flows.size());
  for (std::size_t f = 0; f < spec.flows.size(); ++f) {
    const auto& flow = spec.flows[f];
    topo.wiring[f].resize(flow.subflow_paths.size());
    for (std::size_t s = 0; s < flow.subflow_paths.size(); ++s) {
      const std::size_t p = flow.subflow_paths[s];
      const auto& params = spec.paths[p];
      topo.links.push_back(std::make_unique<sim::Link>(
          queue, "f" + std::to_string(f) + ".s" + std::to_string(s) + ".access",
          spec.access_rate_factor * params.rate_bps, 0.0, kAccessQueueCapacity));
      auto& wiring = topo.wiring[f][s];
      wiring.path = p;
      wiring.forward = {topo.links.back().get(), topo.path_bottlenecks[p]};
      if (shared) wiring.forward.push_back(shared);
      wiring.reverse = {reverse_by_path[p]};
    }
  }
  return topo;
}

}  // namespace

BuiltTopology build_shared_bottleneck(const ExperimentSpec& spec, sim::EventQueue& queue) {
  if (spec.paths.size() != 1)
    throw std::invalid_argument("shared_bottleneck topology needs exactly one path");
  return build(spec, queue, false);
}

BuiltTopology build_disjoint_paths(const ExperimentSpec& spec, sim::EventQueue& queue) {
  return build(spec, queue, false);
}

BuiltTopology build_partially_shared(const ExperimentSpec& spec, sim::EventQueue& queue) {
  return build(spec, queue, true);
}

BuiltTopology build_topology(const ExperimentSpec& spec, sim::EventQueue& queue) {
  switch (spec.topology) {
    case TopologyKind::SharedBottleneck: return build_shared_bottleneck(spec, queue);
    case TopologyKind::DisjointPaths: return build_disjoint_paths(spec, queue);
    case TopologyKind::PartiallyShared: return build_partially_shared(spec, queue);
  }
  throw std::logic_error("unknown topology");
}

}  // namespace mpsim::scenario

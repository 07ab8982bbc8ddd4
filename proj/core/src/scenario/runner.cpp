#include "mpsim/scenario/runner.hpp"

#include <deque>
#include <memory>
#include <stdexcept>

#include "mpsim/scenario/topology.hpp"
#include "mpsim/sim/rng.hpp"
#include "mpsim/transport/receiver.hpp"
#include "mpsim/transport/sender.hpp"

namespace mpsim::scenario {

namespace {

void validate(const ExperimentSpec& spec) {
  if (!(spec.duration_s > 0.0)) throw std::invalid_argument("duration must be positive");
  if (!(spec.trace_interval_s > 0.0))
    throw std::invalid_argument("trace_interval must be positive");
  for (const auto& flow : spec.flows)
    if (flow.kind == FlowKind::Sptcp && flow.subflow_paths.size() != 1)
      throw std::invalid_argument("sptcp flows have exactly one subflow");
}

}  // namespace

RunResult run_experiment(const ExperimentSpec& spec) {
  validate(spec);

  sim::EventQueue queue;
  BuiltTopology topo = build_topology(spec, queue);
  sim::SeededRng rng(spec.seed);

  const double warmup = kWarmupFraction * spec.duration_s;
  for (auto& link : topo.links) link->set_stats_start(warmup);

  RunResult result;

  std::vector<std::unique_ptr<transport::MpSender>> senders;
  std::vector<std::unique_ptr<transport::MpReceiver>> receivers;
  std::deque<sim::Route> routes;  // stable storage: send_packet keeps references

  for (std::size_t f = 0; f < spec.flows.size(); ++f) {
    const auto& flow = spec.flows[f];
    const auto flow_id = static_cast<std::uint32_t>(f);
    auto sender = std::make_unique<transport::MpSender>(
        queue, flow_id, flow.algorithm, spec.alpha_total, flow.subflow_paths.size());
    auto receiver = std::make_unique<transport::MpReceiver>(flow_id, flow.subflow_paths.size());

    receiver->set_delivery_hook(
        [&result, flow_id](std::uint32_t subflow, std::uint64_t segments, double now) {
          result.deliveries.push_back(Delivery{
              now, flow_id, subflow,
              static_cast<double>(segments) * 8.0 * sim::kSegmentPayloadBytes});
        });

    // Wire forward data routes and the matching reverse ack routes.
    std::vector<const sim::Route*> forward(flow.subflow_paths.size());
    std::vector<const sim::Route*> reverse(flow.subflow_paths.size());
    for (std::size_t s = 0; s < flow.subflow_paths.size(); ++s) {
      transport::MpReceiver* rcv = receiver.get();
      routes.push_back(sim::Route{topo.wiring[f][s].forward,
                                  [rcv](const sim::Packet& p, double now) { rcv->on_data(p, now); }});
      forward[s] = &routes.back();
      transport::MpSender* snd = sender.get();
      routes.push_back(sim::Route{topo.wiring[f][s].reverse,
                                  [snd](const sim::Packet& p, double now) { snd->deliver_ack(p, now); }});
      reverse[s] = &routes.back();
    }
    sender->set_transmit([forward](std::size_t subflow, const sim::Packet& pkt) {
      sim::send_packet(*forward[subflow], pkt);
    });
    receiver->set_ack_sink([reverse](const sim::Packet& ack) {
      sim::send_packet(*reverse[ack.subflow], ack);
    });

    const double start = flow.start_time_s + rng.next_double() * spec.start_jitter_s;
    transport::MpSender* snd = sender.get();
    queue.schedule(start, sim::EventKind::Timer, [snd](double now) { snd->start(now); });

    senders.push_back(std::move(sender));
    receivers.push_back(std::move(receiver));
  }

  // Periodic cwnd/ssthresh/srtt sampling.
  const auto samples =
      static_cast<std::uint64_t>(spec.duration_s / spec.trace_interval_s + 1e-9);
  for (std::uint64_t k = 1; k <= samples; ++k) {
    const double at = static_cast<double>(k) * spec.trace_interval_s;
    queue.schedule(at, sim::EventKind::RoundProbe, [&senders, &result](double now) {
      for (std::uint32_t f = 0; f < senders.size(); ++f) {
        const auto& conn = senders[f]->connection();
        for (std::uint32_t s = 0; s < conn.cc.subflows.size(); ++s) {
          const auto& sf = conn.cc.subflows[s];
          result.trace.push_back(
              TraceRow{now, f, s, sf.cwnd, sf.ssthresh, sf.srtt * 1000.0, sf.phase});
        }
      }
    });
  }

  queue.run_until(spec.duration_s);

  // Summarize.
  RunSummary& summary = result.summary;
  summary.seed = spec.seed;
  summary.rng_algorithm = std::string(sim::SeededRng::kAlgorithm);
  summary.duration_s = spec.duration_s;
  summary.warmup_s = warmup;
  summary.total_simulated_s = queue.now();

  const double measured = spec.duration_s - warmup;
  std::vector<double> flow_goodputs;
  for (std::size_t f = 0; f < spec.flows.size(); ++f) {
    FlowSummary fs;
    fs.id = static_cast<std::uint32_t>(f);
    fs.kind = spec.flows[f].kind;
    fs.algorithm = spec.flows[f].algorithm;
    fs.subflows.resize(spec.flows[f].subflow_paths.size());
    for (std::size_t s = 0; s < fs.subflows.size(); ++s) {
      fs.subflows[s].path = spec.flows[f].subflow_paths[s];
      fs.subflows[s].loss_events = senders[f]->connection().subflow_txs[s].loss_events;
      fs.subflows[s].rto_events = senders[f]->connection().subflow_txs[s].rto_events;
      fs.subflows[s].delivered_segments = receivers[f]->delivered_segments(s);
    }
    summary.flows.push_back(std::move(fs));
  }
  for (const auto& d : result.deliveries) {
    if (d.time < warmup) continue;
    summary.flows[d.flow].goodput_bps += d.bits / measured;
    summary.flows[d.flow].subflows[d.subflow].goodput_bps += d.bits / measured;
  }
  std::vector<std::vector<double>> cwnd_sums(spec.flows.size());
  std::vector<std::vector<std::uint64_t>> cwnd_counts(spec.flows.size());
  for (std::size_t f = 0; f < spec.flows.size(); ++f) {
    cwnd_sums[f].resize(spec.flows[f].subflow_paths.size(), 0.0);
    cwnd_counts[f].resize(spec.flows[f].subflow_paths.size(), 0);
  }
  for (const auto& row : result.trace) {
    if (row.time < warmup) continue;
    cwnd_sums[row.flow][row.subflow] += row.cwnd;
    ++cwnd_counts[row.flow][row.subflow];
  }
  for (std::size_t f = 0; f < spec.flows.size(); ++f) {
    for (std::size_t s = 0; s < summary.flows[f].subflows.size(); ++s)
      if (cwnd_counts[f][s] > 0)
        summary.flows[f].subflows[s].mean_cwnd =
            cwnd_sums[f][s] / static_cast<double>(cwnd_counts[f][s]);
    flow_goodputs.push_back(summary.flows[f].goodput_bps);
  }
  summary.jain_index = jain_index(flow_goodputs);

  for (const auto& link : topo.links)
    summary.links.push_back(LinkSummary{link->name(), link->rate_bps(),
                                        link->mean_queue_delay_s(), link->drops(),
                                        link->delivered_bits()});
  return result;
}

}  // namespace mpsim::scenario

#include "mpsim/transport/receiver.hpp"

#include <stdexcept>

namespace mpsim::transport {

MpReceiver::MpReceiver(std::uint32_t flow, std::size_t subflow_count)
    : flow_(flow), subflows_(subflow_count) {}

void MpReceiver::on_data(const sim::Packet& packet, double now) {
  if (packet.subflow >= subflows_.size()) throw std::out_of_range("unknown subflow");
  auto& rx = subflows_[packet.subflow];

  std::uint64_t advanced = 0;
  if (packet.seq == rx.expected) {
    ++rx.expected;
    ++advanced;
    while (!rx.out_of_order.empty() && *rx.out_of_order.begin() == rx.expected) {
      rx.out_of_order.erase(rx.out_of_order.begin());
      ++rx.expected;
      ++advanced;
    }
  } else if (packet.seq > rx.expected) {
    rx.out_of_order.insert(packet.seq);
  }
  // packet.seq < expected: stale retransmit, just re-ack the current point

  if (advanced > 0) {
    rx.delivered += advanced;
    if (delivery_hook_) delivery_hook_(packet.subflow, advanced, now);
  }

  sim::Packet ack;
  ack.size_bytes = sim::kAckPacketBytes;
  ack.flow = flow_;
  ack.subflow = packet.subflow;
  ack.seq = rx.expected;
  ack.is_ack = true;
  ack.timestamp_sent = now;
  ack.echo_timestamp = packet.timestamp_sent;
  if (ack_sink_) ack_sink_(ack);
}

std::uint64_t MpReceiver::delivered_segments(std::size_t subflow) const {
  return subflows_.at(subflow).delivered;
}

std::uint64_t MpReceiver::delivered_segments_total() const {
  std::uint64_t total = 0;
  for (const auto& rx : subflows_) total += rx.delivered;
  return total;
}

}  // namespace mpsim::transport

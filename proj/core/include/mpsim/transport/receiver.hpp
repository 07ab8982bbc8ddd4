#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "mpsim/sim/packet.hpp"

namespace mpsim::transport {

// Per-subflow cumulative reassembly. Every data packet is answered with an
// immediate cumulative ACK; out-of-order data re-acks the current point.
class MpReceiver {
 public:
  using AckSink = std::function<void(const sim::Packet& ack)>;
  using DeliveryHook =
      std::function<void(std::uint32_t subflow, std::uint64_t segments, double now)>;

  MpReceiver(std::uint32_t flow, std::size_t subflow_count);

  void set_ack_sink(AckSink sink) { ack_sink_ = std::move(sink); }
  void set_delivery_hook(DeliveryHook hook) { delivery_hook_ = std::move(hook); }

  void on_data(const sim::Packet& packet, double now);

  std::uint64_t delivered_segments(std::size_t subflow) const;
  std::uint64_t delivered_segments_total() const;

 private:
  struct SubflowRx {
    std::uint64_t expected = 0;             // next in-order segment
    std::set<std::uint64_t> out_of_order;   // buffered beyond the gap
    std::uint64_t delivered = 0;
  };

  std::uint32_t flow_;
  std::vector<SubflowRx> subflows_;
  AckSink ack_sink_;
  DeliveryHook delivery_hook_;
};

}  // namespace mpsim::transport

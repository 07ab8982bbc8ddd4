#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <string>

#include "mpsim/sim/event_queue.hpp"
#include "mpsim/sim/packet.hpp"

namespace mpsim::sim {

// Unidirectional point-to-point link: fixed rate, propagation delay and a
// droptail FIFO counted in packets. The packet in service is not part of the
// queue. Delivery happens serialization + propagation after service starts.
class Link {
 public:
  Link(EventQueue& queue, std::string name, double rate_bps, double prop_delay_s,
       std::size_t queue_capacity);

  using Deliver = std::function<void(const Packet&, double now)>;

  // False when the droptail queue is full; the packet is counted as dropped.
  bool enqueue(const Packet& packet, Deliver deliver);

  double serialization_time(int size_bytes) const {
    return 8.0 * static_cast<double>(size_bytes) / rate_bps_;
  }

  const std::string& name() const { return name_; }
  double rate_bps() const { return rate_bps_; }
  double prop_delay_s() const { return prop_delay_s_; }
  std::size_t queue_capacity() const { return capacity_; }
  std::size_t queue_len() const { return fifo_.size(); }
  bool busy() const { return busy_; }
  double busy_until() const { return busy_until_; }

  // Queue-delay samples taken before this time are excluded from the mean.
  void set_stats_start(double t) { stats_start_ = t; }

  std::uint64_t drops() const { return drops_; }
  double delivered_bits() const { return delivered_bits_; }
  double mean_queue_delay_s() const {
    return wait_samples_ == 0 ? 0.0 : wait_sum_ / static_cast<double>(wait_samples_);
  }

 private:
  struct Queued {
    Packet packet;
    Deliver deliver;
    double enqueue_time;
  };

  void begin_service(double now);

  EventQueue& queue_;
  std::string name_;
  double rate_bps_;
  double prop_delay_s_;
  std::size_t capacity_;

  std::deque<Queued> fifo_;
  bool busy_ = false;
  double busy_until_ = 0.0;

  double stats_start_ = 0.0;
  std::uint64_t drops_ = 0;
  double delivered_bits_ = 0.0;
  double wait_sum_ = 0.0;
  std::uint64_t wait_samples_ = 0;
};

// A unidirectional chain of links ending at a sink. Drops along the chain
// lose the packet silently; the return value reports the first hop only.
struct Route {
  std::vector<Link*> links;
  std::function<void(const Packet&, double now)> sink;
};

bool send_packet(const Route& route, const Packet& packet, std::size_t hop = 0);

}  // namespace mpsim::sim

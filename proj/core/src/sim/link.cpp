#include "mpsim/sim/link.hpp"

#include <stdexcept>
#include <utility>

namespace mpsim::sim {

Link::Link(EventQueue& queue, std::string name, double rate_bps, double prop_delay_s,
           std::size_t queue_capacity)
    : queue_(queue),
      name_(std::move(name)),
      rate_bps_(rate_bps),
      prop_delay_s_(prop_delay_s),
      capacity_(queue_capacity) {}

bool Link::enqueue(const Packet& packet, Deliver deliver) {
  if (fifo_.size() >= capacity_) {
    ++drops_;
    return false;
  }
  const double now = queue_.now();
  fifo_.push_back(Queued{packet, std::move(deliver), now});
  if (!busy_) begin_service(now);
  return true;
}

void Link::begin_service(double now) {
  Queued item = std::move(fifo_.front());
  fifo_.pop_front();
  if (item.enqueue_time >= stats_start_) {
    wait_sum_ += now - item.enqueue_time;
    ++wait_samples_;
  }
  busy_ = true;
  busy_until_ = now + serialization_time(item.packet.size_bytes);
  queue_.schedule(busy_until_, EventKind::TransmitComplete,
                  [this, item = std::move(item)](double t) mutable {
                    delivered_bits_ += 8.0 * static_cast<double>(item.packet.size_bytes);
                    queue_.schedule(t + prop_delay_s_, EventKind::PacketArrival,
                                    [item = std::move(item)](double arrival) {
                                      item.deliver(item.packet, arrival);
                                    });
                    if (!fifo_.empty())
                      begin_service(t);
                    else
                      busy_ = false;
                  });
}

bool send_packet(const Route& route, const Packet& packet, std::size_t hop) {
  if (hop >= route.links.size()) throw std::logic_error("send_packet past the last hop");
  return route.links[hop]->enqueue(packet, [&route, hop](const Packet& p, double now) {
    if (hop + 1 < route.links.size())
      send_packet(route, p, hop + 1);
    else
      route.sink(p, now);
  });
}

}  // namespace mpsim::sim

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mpsim/cc/cc_state.hpp"
#include "mpsim/sim/event_queue.hpp"
#include "mpsim/sim/packet.hpp"

namespace mpsim::transport {

inline constexpr double kMinRto = 0.2;       // seconds; desk-scale floor
inline constexpr double kMaxRto = 60.0;
inline constexpr double kInitialRto = 1.0;   // before the first RTT sample
inline constexpr std::uint32_t kDupAckThreshold = 3;

// Per-subflow send state. Sequence numbers count whole segments.
struct SubflowTx {
  std::uint64_t next_seq = 0;
  std::uint64_t highest_acked = 0;
  std::uint32_t dup_ack_count = 0;
  double rtt_var = 0.0;
  double rto = kInitialRto;                    // current interval incl. backoff
  std::optional<std::uint64_t> recovery_point; // engaged while in fast recovery
  std::uint64_t rto_epoch = 0;                 // invalidates superseded timers

  std::uint64_t segments_sent = 0;
  std::uint64_t retransmits = 0;
  std::uint64_t loss_events = 0;  // fast-retransmit episodes
  std::uint64_t rto_events = 0;

  std::uint64_t in_flight() const { return next_seq - highest_acked; }
};

struct MpConnection {
  std::vector<SubflowTx> subflow_txs;
  cc::ConnectionCcState cc;
  bool bulk_source = true;  // infinite backlog
  std::uint64_t delivered_segments = 0;
};

// Subflow with window space and the smallest srtt; ties go to the lowest id.
std::optional<std::size_t> schedule_next(const MpConnection& conn);

// Bulk multipath sender. Packet emission is delegated to a transmit callback
// so the surrounding topology stays out of the transport layer.
class MpSender {
 public:
  using TransmitFn = std::function<void(std::size_t subflow, const sim::Packet&)>;

  MpSender(sim::EventQueue& queue, std::uint32_t flow_id, cc::Algorithm algorithm,
           double alpha_total, std::size_t subflow_count);

  void set_transmit(TransmitFn fn) { transmit_ = std::move(fn); }

  // Opens the connection and sends the initial window.
  void start(double now);

  // Entry point for acks coming back off the reverse path.
  void deliver_ack(const sim::Packet& ack, double now);

  const MpConnection& connection() const { return conn_; }
  bool started() const { return started_; }

 private:
  void pump(double now);
  void send_segment(std::size_t r, std::uint64_t seq, bool retransmission, double now);
  void enter_fast_recovery(std::size_t r, double now);
  void handle_rto(std::size_t r, std::uint64_t epoch, double now);
  void arm_rto(std::size_t r, double now);
  void update_rto(SubflowTx& tx, const cc::SubflowCcState& sf, double sample);

  sim::EventQueue& queue_;
  std::uint32_t flow_id_;
  MpConnection conn_;
  TransmitFn transmit_;
  bool started_ = false;
};

}  // namespace mpsim::transport

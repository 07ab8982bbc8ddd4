#include "mpsim/transport/sender.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mpsim/cc/laws.hpp"

namespace mpsim::transport {

std::optional<std::size_t> schedule_next(const MpConnection& conn) {
  std::optional<std::size_t> best;
  for (std::size_t r = 0; r < conn.subflow_txs.size(); ++r) {
    if (static_cast<double>(conn.subflow_txs[r].in_flight()) >= conn.cc.subflows[r].cwnd)
      continue;
    if (!best || conn.cc.subflows[r].srtt < conn.cc.subflows[*best].srtt) best = r;
  }
  return best;
}

MpSender::MpSender(sim::EventQueue& queue, std::uint32_t flow_id, cc::Algorithm algorithm,
                   double alpha_total, std::size_t subflow_count)
    : queue_(queue), flow_id_(flow_id) {
  if (subflow_count == 0) throw std::invalid_argument("connection needs at least one subflow");
  conn_.subflow_txs.resize(subflow_count);
  conn_.cc.subflows.resize(subflow_count);
  conn_.cc.algorithm = algorithm;
  conn_.cc.alpha_total = alpha_total;
}

void MpSender::start(double now) {
  if (started_) return;
  started_ = true;
  pump(now);
}

void MpSender::pump(double now) {
  if (!started_) return;
  while (auto r = schedule_next(conn_)) {
    auto& tx = conn_.subflow_txs[*r];
    const bool was_idle = tx.in_flight() == 0;
    send_segment(*r, tx.next_seq, false, now);
    if (was_idle) arm_rto(*r, now);
  }
}

void MpSender::send_segment(std::size_t r, std::uint64_t seq, bool retransmission, double now) {
  auto& tx = conn_.subflow_txs[r];
  sim::Packet pkt;
  pkt.flow = flow_id_;
  pkt.subflow = static_cast<std::uint32_t>(r);
  pkt.seq = seq;
  pkt.timestamp_sent = now;
  if (!retransmission) ++tx.next_seq;
  ++tx.segments_sent;
  if (retransmission) ++tx.retransmits;
  conn_.cc.subflows[r].bytes_since_last_loss += sim::kSegmentPayloadBytes;
  if (transmit_) transmit_(r, pkt);
}

void MpSender::deliver_ack(const sim::Packet& ack, double now) {
  const std::size_t r = ack.subflow;
  if (r >= conn_.subflow_txs.size()) throw std::out_of_range("ack for unknown subflow");
  auto& tx = conn_.subflow_txs[r];
  auto& sf = conn_.cc.subflows[r];

  if (ack.seq < tx.highest_acked) return;  // stale

  if (ack.seq == tx.highest_acked) {
    if (tx.in_flight() == 0) return;
    ++tx.dup_ack_count;
    if (tx.dup_ack_count == kDupAckThreshold && !tx.recovery_point) enter_fast_recovery(r, now);
    return;
  }

  // New data acknowledged.
  const std::uint64_t newly = ack.seq - tx.highest_acked;
  tx.highest_acked = ack.seq;
  conn_.delivered_segments += newly;
  tx.dup_ack_count = 0;

  const double sample = now - ack.echo_timestamp;
  if (sample > 0.0) {
    sf = cc::update_rtt(sf, sample);
    update_rto(tx, sf, sample);
  }

  // Partial ack while recovering: the next hole was lost as well.
  if (tx.recovery_point && tx.highest_acked < *tx.recovery_point)
    send_segment(r, tx.highest_acked, true, now);

  for (std::uint64_t i = 0; i < newly; ++i) {
    if (sf.phase == cc::Phase::SlowStart && sf.cwnd >= sf.ssthresh)
      sf.phase = cc::Phase::CongestionAvoidance;
    if (sf.phase == cc::Phase::SlowStart)
      sf = cc::slow_start_ack(sf);
    else if (sf.phase == cc::Phase::CongestionAvoidance)
      sf.cwnd = cc::on_ack(conn_.cc, r);
    // fast recovery: no growth until the recovery point clears
  }

  if (tx.recovery_point && tx.highest_acked >= *tx.recovery_point) {
    tx.recovery_point.reset();
    sf.phase = cc::Phase::CongestionAvoidance;
  }

  // One full window acknowledged: the transmission round is over. The next
  // round spans whatever is outstanding once the window refills.
  const bool round_complete = tx.highest_acked >= sf.round_marker;
  if (round_complete) sf = cc::on_round_end(conn_.cc, r);

  arm_rto(r, now);
  pump(now);
  if (round_complete) conn_.cc.subflows[r].round_marker = conn_.subflow_txs[r].next_seq;
}

void MpSender::enter_fast_recovery(std::size_t r, double now) {
  auto& tx = conn_.subflow_txs[r];
  auto& sf = conn_.cc.subflows[r];
  tx.recovery_point = tx.next_seq;
  sf = cc::on_loss(conn_.cc, r);
  sf.phase = cc::Phase::FastRecovery;
  ++tx.loss_events;
  send_segment(r, tx.highest_acked, true, now);
  arm_rto(r, now);
}

void MpSender::handle_rto(std::size_t r, std::uint64_t epoch, double now) {
  auto& tx = conn_.subflow_txs[r];
  if (epoch != tx.rto_epoch) return;  // superseded
  if (tx.in_flight() == 0) return;
  auto& sf = conn_.cc.subflows[r];

  sf.ssthresh = std::max(cc::kMinSsthresh, sf.cwnd / 2.0);
  sf.cwnd = 1.0;
  sf.phase = cc::Phase::SlowStart;
  sf.bytes_between_last_two_losses = sf.bytes_since_last_loss;  // timeout is a loss event
  sf.bytes_since_last_loss = 0;
  sf = cc::reset_round_stats(sf);
  sf.round_marker = tx.next_seq;

  tx.recovery_point.reset();
  tx.dup_ack_count = 0;
  ++tx.rto_events;
  tx.rto = std::min(tx.rto * 2.0, kMaxRto);

  send_segment(r, tx.highest_acked, true, now);
  arm_rto(r, now);
}

void MpSender::arm_rto(std::size_t r, double now) {
  auto& tx = conn_.subflow_txs[r];
  ++tx.rto_epoch;
  if (tx.in_flight() == 0) return;
  queue_.schedule(now + tx.rto, sim::EventKind::Timer,
                  [this, r, epoch = tx.rto_epoch](double t) { handle_rto(r, epoch, t); });
}

void MpSender::update_rto(SubflowTx& tx, const cc::SubflowCcState& sf, double sample) {
  if (sf.rtt_samples <= 1)
    tx.rtt_var = sample / 2.0;
  else
    tx.rtt_var = 0.75 * tx.rtt_var + 0.25 * std::abs(sf.srtt - sample);
  tx.rto = std::clamp(sf.srtt + 4.0 * tx.rtt_var, kMinRto, kMaxRto);
}

}  // namespace mpsim::transport

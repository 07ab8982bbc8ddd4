#include "mpsim/cc/laws.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mpsim::cc {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Reno: return "reno";
    case Algorithm::Lia: return "lia";
    case Algorithm::Olia: return "olia";
    case Algorithm::Balia: return "balia";
    case Algorithm::WVegas: return "wvegas";
  }
  return "?";
}

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::SlowStart: return "slow_start";
    case Phase::CongestionAvoidance: return "congestion_avoidance";
    case Phase::FastRecovery: return "fast_recovery";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_string(std::string_view name) {
  if (name == "reno") return Algorithm::Reno;
  if (name == "lia") return Algorithm::Lia;
  if (name == "olia") return Algorithm::Olia;
  if (name == "balia") return Algorithm::Balia;
  if (name == "wvegas") return Algorithm::WVegas;
  return std::nullopt;
}

double ConnectionCcState::total_cwnd() const {
  double sum = 0.0;
  for (const auto& sf : subflows) sum += sf.cwnd;
  return sum;
}

namespace {

const SubflowCcState& subflow_at(const ConnectionCcState& conn, std::size_t r) {
  if (r >= conn.subflows.size()) throw std::out_of_range("subflow index out of range");
  return conn.subflows[r];
}

// Coupled aggregates range over subflows with a measured RTT only.
double coupled_window_sum(const ConnectionCcState& conn) {
  double sum = 0.0;
  for (const auto& sf : conn.subflows)
    if (sf.rtt_measured()) sum += sf.cwnd;
  return sum;
}

double coupled_rate_sum(const ConnectionCcState& conn) {
  double sum = 0.0;
  for (const auto& sf : conn.subflows)
    if (sf.rtt_measured()) sum += sf.cwnd / sf.srtt;
  return sum;
}

double reno_increment_cwnd(const SubflowCcState& sf) { return sf.cwnd + 1.0 / sf.cwnd; }

bool contains(const std::vector<std::size_t>& ids, std::size_t r) {
  return std::find(ids.begin(), ids.end(), r) != ids.end();
}

void require_measured(const ConnectionCcState& conn) {
  for (const auto& sf : conn.subflows)
    if (sf.rtt_measured()) return;
  throw std::logic_error("no subflow has an RTT sample");
}

}  // namespace

SubflowCcState update_rtt(SubflowCcState s, double sample_s) {
  if (!(sample_s > 0.0)) throw std::invalid_argument("rtt sample must be positive");
  if (s.rtt_samples == 0) {
    s.srtt = sample_s;
    s.rtt_min = sample_s;
  } else {
    s.srtt = s.srtt * (7.0 / 8.0) + sample_s / 8.0;
    s.rtt_min = std::min(s.rtt_min, sample_s);
  }
  ++s.rtt_samples;
  s.rtt_round_sum += sample_s;
  ++s.rtt_round_samples;
  s.rtt_round_avg = s.rtt_round_sum / static_cast<double>(s.rtt_round_samples);
  return s;
}

SubflowCcState reset_round_stats(SubflowCcState s) {
  s.rtt_round_sum = 0.0;
  s.rtt_round_samples = 0;
  return s;
}

SubflowCcState slow_start_ack(SubflowCcState s) {
  if (s.cwnd >= s.ssthresh) {
    s.phase = Phase::CongestionAvoidance;
    return s;
  }
  s.cwnd += 1.0;
  if (s.cwnd >= s.ssthresh) s.phase = Phase::CongestionAvoidance;
  return s;
}

SubflowCcState standard_loss_halve(SubflowCcState s) {
  s.cwnd = std::max(kMinCwnd, s.cwnd / 2.0);
  s.ssthresh = std::max(kMinSsthresh, s.cwnd);
  s.bytes_between_last_two_losses = s.bytes_since_last_loss;
  s.bytes_since_last_loss = 0;
  return s;
}

double lia_alpha(const ConnectionCcState& conn) {
  require_measured(conn);
  double best = 0.0;
  for (const auto& sf : conn.subflows)
    if (sf.rtt_measured()) best = std::max(best, sf.cwnd / (sf.srtt * sf.srtt));
  const double rate_sum = coupled_rate_sum(conn);
  return coupled_window_sum(conn) * best / (rate_sum * rate_sum);
}

double lia_on_ack(const ConnectionCcState& conn, std::size_t r) {
  const auto& sf = subflow_at(conn, r);
  if (!sf.rtt_measured()) return reno_increment_cwnd(sf);
  const double alpha = lia_alpha(conn);
  return sf.cwnd + std::min(alpha / coupled_window_sum(conn), 1.0 / sf.cwnd);
}

OliaSets olia_classify(const ConnectionCcState& conn) {
  if (conn.subflows.empty()) throw std::logic_error("olia_classify on empty connection");
  OliaSets sets;
  bool any = false;
  double max_cwnd = 0.0;
  std::uint64_t max_bytes = 0;
  for (const auto& sf : conn.subflows) {
    if (!sf.rtt_measured()) continue;
    if (!any || sf.cwnd > max_cwnd) max_cwnd = sf.cwnd;
    max_bytes = std::max(max_bytes,
                         std::max(sf.bytes_since_last_loss, sf.bytes_between_last_two_losses));
    any = true;
  }
  for (std::size_t r = 0; r < conn.subflows.size(); ++r) {
    const auto& sf = conn.subflows[r];
    if (!sf.rtt_measured()) continue;
    if (sf.cwnd == max_cwnd) sets.max_window.push_back(r);
    if (std::max(sf.bytes_since_last_loss, sf.bytes_between_last_two_losses) == max_bytes)
      sets.best.push_back(r);
  }
  for (std::size_t r : sets.best)
    if (!contains(sets.max_window, r)) sets.collected.push_back(r);
  return sets;
}

double olia_alpha(const ConnectionCcState& conn, std::size_t r, const OliaSets& sets) {
  std::size_t paths = 0;
  for (const auto& sf : conn.subflows)
    if (sf.rtt_measured()) ++paths;
  if (paths == 0) return 0.0;
  const double inv_paths = 1.0 / static_cast<double>(paths);
  if (contains(sets.collected, r)) return inv_paths / static_cast<double>(sets.collected.size());
  if (contains(sets.max_window, r) && !sets.collected.empty())
    return -inv_paths / static_cast<double>(sets.max_window.size());
  return 0.0;
}

double olia_on_ack(const ConnectionCcState& conn, std::size_t r) {
  const auto& sf = subflow_at(conn, r);
  if (!sf.rtt_measured()) return reno_increment_cwnd(sf);
  const double alpha = olia_alpha(conn, r, olia_classify(conn));
  const double rate_sum = coupled_rate_sum(conn);
  const double inc = (sf.cwnd / (sf.srtt * sf.srtt)) / (rate_sum * rate_sum) + alpha / sf.cwnd;
  return std::max(kMinCwnd, sf.cwnd + inc);
}

double balia_alpha(const ConnectionCcState& conn, std::size_t r) {
  const auto& sf = subflow_at(conn, r);
  if (!sf.rtt_measured()) return 1.0;
  double max_rate = 0.0;
  for (const auto& k : conn.subflows)
    if (k.rtt_measured()) max_rate = std::max(max_rate, k.cwnd / k.srtt);
  return max_rate / (sf.cwnd / sf.srtt);
}

double balia_on_ack(const ConnectionCcState& conn, std::size_t r) {
  const auto& sf = subflow_at(conn, r);
  if (!sf.rtt_measured()) return reno_increment_cwnd(sf);
  const double alpha = balia_alpha(conn, r);
  const double rate = sf.cwnd / sf.srtt;
  const double rate_sum = coupled_rate_sum(conn);
  const double inc =
      (rate / sf.srtt) / (rate_sum * rate_sum) * ((1.0 + alpha) / 2.0) * ((4.0 + alpha) / 5.0);
  return sf.cwnd + inc;
}

SubflowCcState balia_on_loss(const ConnectionCcState& conn, std::size_t r) {
  SubflowCcState s = subflow_at(conn, r);
  const double alpha = balia_alpha(conn, r);
  s.cwnd = std::max(kMinCwnd, s.cwnd - (s.cwnd / 2.0) * std::min(alpha, 1.5));
  s.ssthresh = std::max(kMinSsthresh, s.cwnd);
  s.bytes_between_last_two_losses = s.bytes_since_last_loss;
  s.bytes_since_last_loss = 0;
  return s;
}

double wvegas_delta(const SubflowCcState& s) {
  if (!s.rtt_measured() || !s.round_rtt_measured())
    throw std::logic_error("wvegas_delta requires RTT samples");
  return (s.cwnd / s.rtt_min - s.cwnd / s.rtt_round_avg) * s.rtt_min;
}

std::vector<double> wvegas_weights(const ConnectionCcState& conn) {
  std::vector<double> weights(conn.subflows.size(), 0.0);
  double rate_sum = 0.0;
  for (const auto& sf : conn.subflows)
    if (sf.round_rtt_measured()) rate_sum += sf.cwnd / sf.rtt_round_avg;
  if (rate_sum <= 0.0) throw std::logic_error("wvegas_weights requires round RTT samples");
  for (std::size_t r = 0; r < conn.subflows.size(); ++r) {
    const auto& sf = conn.subflows[r];
    if (sf.round_rtt_measured()) weights[r] = (sf.cwnd / sf.rtt_round_avg) / rate_sum;
  }
  return weights;
}

SubflowCcState wvegas_on_round(const ConnectionCcState& conn, std::size_t r) {
  SubflowCcState s = subflow_at(conn, r);
  if (!s.rtt_measured() || !s.round_rtt_measured())
    throw std::logic_error("wvegas_on_round before any RTT sample");

  const double delta = wvegas_delta(s);
  if (delta > s.vegas_alpha) s.vegas_alpha = wvegas_weights(conn)[r] * conn.alpha_total;

  if (delta > s.vegas_alpha)
    s.cwnd -= 1.0;
  else if (delta < s.vegas_alpha)
    s.cwnd += 1.0;
  s.cwnd = std::max(kMinCwnd, s.cwnd);

  // Queue-delay tracking: q_r ratchets down to the smallest diff seen.
  const double diff = s.rtt_round_avg - s.rtt_min;
  if (!s.queue_delay_est || *s.queue_delay_est > diff) s.queue_delay_est = diff;
  // Back off when the queue has grown to twice the tracked estimate. A zero
  // diff means an empty queue, not congestion.
  if (diff > 0.0 && diff >= 2.0 * *s.queue_delay_est)
    s.cwnd = std::max(kMinCwnd, s.cwnd * s.rtt_min / (2.0 * s.rtt_round_avg));

  return reset_round_stats(std::move(s));
}

double on_ack(const ConnectionCcState& conn, std::size_t r) {
  switch (conn.algorithm) {
    case Algorithm::Reno: return reno_increment_cwnd(subflow_at(conn, r));
    case Algorithm::Lia: return lia_on_ack(conn, r);
    case Algorithm::Olia: return olia_on_ack(conn, r);
    case Algorithm::Balia: return balia_on_ack(conn, r);
    case Algorithm::WVegas: return subflow_at(conn, r).cwnd;  // grows per round
  }
  throw std::logic_error("unknown algorithm");
}

SubflowCcState on_loss(const ConnectionCcState& conn, std::size_t r) {
  if (conn.algorithm == Algorithm::Balia) return balia_on_loss(conn, r);
  return standard_loss_halve(subflow_at(conn, r));
}

SubflowCcState on_round_end(const ConnectionCcState& conn, std::size_t r) {
  if (conn.algorithm == Algorithm::WVegas &&
      subflow_at(conn, r).phase == Phase::CongestionAvoidance)
    return wvegas_on_round(conn, r);
  return reset_round_stats(subflow_at(conn, r));
}

}  // namespace mpsim::cc

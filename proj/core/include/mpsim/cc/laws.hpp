#pragma once

#include <cstddef>
#include <vector>

#include "mpsim/cc/cc_state.hpp"

// Pure congestion-avoidance laws: every function maps explicit state to new
// state and touches nothing else. Subflows without an RTT sample are excluded
// from the coupled aggregates until measured; an ACK on such a subflow falls
// back to the plain Reno increment.
namespace mpsim::cc {

// Throws std::invalid_argument for a non-positive sample.
SubflowCcState update_rtt(SubflowCcState s, double sample_s);

// Clears the per-round RTT accumulator; rtt_round_avg keeps the last mean.
SubflowCcState reset_round_stats(SubflowCcState s);

SubflowCcState slow_start_ack(SubflowCcState s);
SubflowCcState standard_loss_halve(SubflowCcState s);

// LIA: one alpha for the whole connection.
double lia_alpha(const ConnectionCcState& conn);
double lia_on_ack(const ConnectionCcState& conn, std::size_t r);  // new cwnd_r

// OLIA: per-subflow alpha driven by the W/B/C classification.
OliaSets olia_classify(const ConnectionCcState& conn);
double olia_alpha(const ConnectionCcState& conn, std::size_t r, const OliaSets& sets);
double olia_on_ack(const ConnectionCcState& conn, std::size_t r);

// BALIA: alpha is the best-rate-to-own-rate ratio, >= 1.
double balia_alpha(const ConnectionCcState& conn, std::size_t r);
double balia_on_ack(const ConnectionCcState& conn, std::size_t r);
SubflowCcState balia_on_loss(const ConnectionCcState& conn, std::size_t r);

// wVegas: round-driven, delay-based.
double wvegas_delta(const SubflowCcState& s);
std::vector<double> wvegas_weights(const ConnectionCcState& conn);
SubflowCcState wvegas_on_round(const ConnectionCcState& conn, std::size_t r);

// Algorithm dispatch used by the transport layer. on_ack returns the new
// cwnd for one acked segment in congestion avoidance; wVegas grows per round
// instead and leaves the window unchanged here.
double on_ack(const ConnectionCcState& conn, std::size_t r);
SubflowCcState on_loss(const ConnectionCcState& conn, std::size_t r);
SubflowCcState on_round_end(const ConnectionCcState& conn, std::size_t r);

}  // namespace mpsim::cc

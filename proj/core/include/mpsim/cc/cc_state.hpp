#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace mpsim::cc {

enum class Algorithm { Reno, Lia, Olia, Balia, WVegas };
enum class Phase { SlowStart, CongestionAvoidance, FastRecovery };

std::string_view to_string(Algorithm a);
std::string_view to_string(Phase p);
std::optional<Algorithm> algorithm_from_string(std::string_view name);

inline constexpr double kMinCwnd = 1.0;       // segments
inline constexpr double kMinSsthresh = 2.0;   // segments
inline constexpr double kInitialCwnd = 2.0;
inline constexpr double kInitialSsthresh = 1e9;  // slow start runs until the first loss
inline constexpr double kDefaultAlphaTotal = 10.0;
inline constexpr double kInitialVegasAlpha = 2.0;

// Per-subflow congestion state. Windows are fractional segments, times are
// seconds. RTT fields are valid once the matching sample counter is nonzero.
struct SubflowCcState {
  double cwnd = kInitialCwnd;
  double ssthresh = kInitialSsthresh;

  double srtt = 0.0;           // EWMA, gain 1/8
  double rtt_min = 0.0;        // lifetime minimum
  double rtt_round_avg = 0.0;  // mean RTT of the current (or last completed) round
  double rtt_round_sum = 0.0;
  std::uint64_t rtt_round_samples = 0;
  std::uint64_t rtt_samples = 0;

  // Loss-epoch byte counters used by OLIA's subflow classification.
  std::uint64_t bytes_since_last_loss = 0;
  std::uint64_t bytes_between_last_two_losses = 0;

  std::optional<double> queue_delay_est;        // q_r; empty before the first round
  double vegas_alpha = kInitialVegasAlpha;      // per-subflow diff target, segments

  Phase phase = Phase::SlowStart;
  std::uint64_t round_marker = 0;  // highest seq outstanding when the round began

  bool rtt_measured() const { return rtt_samples > 0; }
  bool round_rtt_measured() const { return rtt_round_samples > 0; }
};

// The coupled view: every subflow of one connection plus the algorithm choice.
struct ConnectionCcState {
  std::vector<SubflowCcState> subflows;
  Algorithm algorithm = Algorithm::Lia;
  double alpha_total = kDefaultAlphaTotal;  // wVegas aggregate diff target, segments

  // Always recomputed; never cached.
  double total_cwnd() const;
};

// OLIA subflow classification. Ties keep every maximizer.
struct OliaSets {
  std::vector<std::size_t> max_window;  // subflows with the largest cwnd
  std::vector<std::size_t> best;        // largest transmitted-bytes estimate
  std::vector<std::size_t> collected;   // best \ max_window
};

}  // namespace mpsim::cc

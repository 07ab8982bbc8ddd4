#include <stdexcept>

#include "doctest.h"

#include "mpsim/cc/laws.hpp"

using namespace mpsim::cc;

namespace {

SubflowCcState measured_subflow(double cwnd, double srtt) {
  SubflowCcState s;
  s.cwnd = cwnd;
  s.srtt = srtt;
  s.rtt_min = srtt;
  s.rtt_round_avg = srtt;
  s.rtt_round_sum = srtt;
  s.rtt_round_samples = 1;
  s.rtt_samples = 1;
  s.phase = Phase::CongestionAvoidance;
  return s;
}

ConnectionCcState connection(Algorithm alg, std::initializer_list<SubflowCcState> subflows) {
  ConnectionCcState conn;
  conn.algorithm = alg;
  conn.subflows = subflows;
  return conn;
}

}  // namespace

TEST_CASE("update_rtt: first sample initializes every estimate") {
  SubflowCcState s;
  s = update_rtt(s, 0.100);
  CHECK(s.srtt == doctest::Approx(0.100).epsilon(1e-12));
  CHECK(s.rtt_min == doctest::Approx(0.100).epsilon(1e-12));
  CHECK(s.rtt_round_avg == doctest::Approx(0.100).epsilon(1e-12));
  CHECK(s.rtt_samples == 1);
}

TEST_CASE("update_rtt: EWMA gain 1/8") {
  SubflowCcState s = measured_subflow(10, 0.100);
  s = update_rtt(s, 0.180);
  CHECK(s.srtt == doctest::Approx(0.110).epsilon(1e-12));  // 7/8*0.1 + 0.18/8
}

TEST_CASE("update_rtt: minimum tracks downward only") {
  SubflowCcState s = measured_subflow(10, 0.100);
  s = update_rtt(s, 0.080);
  CHECK(s.rtt_min == doctest::Approx(0.080).epsilon(1e-12));
  s = update_rtt(s, 0.500);
  CHECK(s.rtt_min == doctest::Approx(0.080).epsilon(1e-12));
}

TEST_CASE("update_rtt: round mean accumulates until reset") {
  SubflowCcState s;
  s = update_rtt(s, 0.100);
  s = update_rtt(s, 0.200);
  CHECK(s.rtt_round_avg == doctest::Approx(0.150).epsilon(1e-12));
  s = reset_round_stats(s);
  CHECK(s.rtt_round_samples == 0);
  CHECK(s.rtt_round_avg == doctest::Approx(0.150).epsilon(1e-12));  // keeps last mean
  s = update_rtt(s, 0.300);
  CHECK(s.rtt_round_avg == doctest::Approx(0.300).epsilon(1e-12));
}

TEST_CASE("update_rtt: rejects non-positive samples") {
  SubflowCcState s;
  CHECK_THROWS_AS(update_rtt(s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(update_rtt(s, -0.1), std::invalid_argument);
}

TEST_CASE("lia_alpha: single subflow reduces to 1") {
  auto conn = connection(Algorithm::Lia, {measured_subflow(10, 0.1)});
  CHECK(lia_alpha(conn) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lia_alpha: two equal subflows") {
  auto conn = connection(Algorithm::Lia, {measured_subflow(10, 0.1), measured_subflow(10, 0.1)});
  CHECK(lia_alpha(conn) == doctest::Approx(0.5).epsilon(1e-12));  // 20*1000/40000
}

TEST_CASE("lia_alpha: heterogeneous subflows") {
  auto conn = connection(Algorithm::Lia, {measured_subflow(10, 0.1), measured_subflow(20, 0.2)});
  CHECK(lia_alpha(conn) == doctest::Approx(0.75).epsilon(1e-12));  // 30*1000/40000
}

TEST_CASE("lia_on_ack: single subflow gets the Reno increment") {
  auto conn = connection(Algorithm::Lia, {measured_subflow(10, 0.1)});
  CHECK(lia_on_ack(conn, 0) - 10.0 == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("lia_on_ack: coupled increment on equal subflows") {
  auto conn = connection(Algorithm::Lia, {measured_subflow(10, 0.1), measured_subflow(10, 0.1)});
  CHECK(lia_on_ack(conn, 0) - 10.0 == doctest::Approx(0.025).epsilon(1e-9));
}

TEST_CASE("lia_on_ack: min() picks the multipath term") {
  auto conn = connection(Algorithm::Lia, {measured_subflow(10, 0.1), measured_subflow(20, 0.2)});
  CHECK(lia_on_ack(conn, 0) - 10.0 == doctest::Approx(0.025).epsilon(1e-9));  // min(0.75/30, 0.1)
}

TEST_CASE("olia_classify: best subflow also has the largest window") {
  auto a = measured_subflow(20, 0.1);
  a.bytes_since_last_loss = 5'000'000;
  auto b = measured_subflow(10, 0.1);
  b.bytes_since_last_loss = 1'000'000;
  auto sets = olia_classify(connection(Algorithm::Olia, {a, b}));
  CHECK(sets.max_window == std::vector<std::size_t>{0});
  CHECK(sets.best == std::vector<std::size_t>{0});
  CHECK(sets.collected.empty());
}

TEST_CASE("olia_classify: best subflow with the smaller window is collected") {
  auto a = measured_subflow(20, 0.1);
  a.bytes_since_last_loss = 1'000'000;
  auto b = measured_subflow(10, 0.1);
  b.bytes_since_last_loss = 5'000'000;
  auto sets = olia_classify(connection(Algorithm::Olia, {a, b}));
  CHECK(sets.max_window == std::vector<std::size_t>{0});
  CHECK(sets.best == std::vector<std::size_t>{1});
  CHECK(sets.collected == std::vector<std::size_t>{1});
}

TEST_CASE("olia_classify: singleton connection") {
  auto sets = olia_classify(connection(Algorithm::Olia, {measured_subflow(10, 0.1)}));
  CHECK(sets.max_window == std::vector<std::size_t>{0});
  CHECK(sets.best == std::vector<std::size_t>{0});
  CHECK(sets.collected.empty());
}

TEST_CASE("olia_classify: byte estimate uses the larger of the two epochs") {
  auto a = measured_subflow(10, 0.1);
  a.bytes_since_last_loss = 0;  // just lost
  a.bytes_between_last_two_losses = 9'000'000;
  auto b = measured_subflow(10, 0.1);
  b.bytes_since_last_loss = 5'000'000;
  auto sets = olia_classify(connection(Algorithm::Olia, {a, b}));
  CHECK(sets.best == std::vector<std::size_t>{0});
}

TEST_CASE("olia_alpha: two subflows, one collected") {
  auto conn = connection(Algorithm::Olia, {measured_subflow(20, 0.1), measured_subflow(10, 0.1)});
  OliaSets sets;
  sets.max_window = {0};
  sets.best = {1};
  sets.collected = {1};
  CHECK(olia_alpha(conn, 1, sets) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(olia_alpha(conn, 0, sets) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("olia_alpha: empty collected set zeroes every alpha") {
  auto conn = connection(Algorithm::Olia, {measured_subflow(20, 0.1), measured_subflow(10, 0.1)});
  OliaSets sets;
  sets.max_window = {0};
  sets.best = {0};
  CHECK(olia_alpha(conn, 0, sets) == 0.0);
  CHECK(olia_alpha(conn, 1, sets) == 0.0);
}

TEST_CASE("olia_alpha: three subflows split the transfer") {
  auto conn = connection(Algorithm::Olia, {measured_subflow(20, 0.1), measured_subflow(10, 0.1),
                                           measured_subflow(10, 0.1)});
  OliaSets sets;
  sets.max_window = {0};
  sets.best = {1, 2};
  sets.collected = {1, 2};
  CHECK(olia_alpha(conn, 1, sets) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(olia_alpha(conn, 2, sets) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(olia_alpha(conn, 0, sets) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("olia_on_ack: single subflow reduces to Reno") {
  auto conn = connection(Algorithm::Olia, {measured_subflow(10, 0.1)});
  CHECK(olia_on_ack(conn, 0) - 10.0 == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("olia_on_ack: equal subflows with empty collected set") {
  auto conn = connection(Algorithm::Olia, {measured_subflow(10, 0.1), measured_subflow(10, 0.1)});
  // equal windows and equal (zero) byte counters: C is empty
  CHECK(olia_on_ack(conn, 0) - 10.0 == doctest::Approx(0.025).epsilon(1e-9));
  CHECK(olia_on_ack(conn, 1) - 10.0 == doctest::Approx(0.025).epsilon(1e-9));
}

TEST_CASE("olia_on_ack: collected subflow accelerates, max-window subflow brakes") {
  auto a = measured_subflow(20, 0.1);
  a.bytes_since_last_loss = 1'000'000;
  auto b = measured_subflow(10, 0.1);
  b.bytes_since_last_loss = 5'000'000;
  auto conn = connection(Algorithm::Olia, {a, b});
  // frozen oracle: 1000/90000 + 0.5/10 and 2000/90000 - 0.5/20
  CHECK(olia_on_ack(conn, 1) - 10.0 == doctest::Approx(0.06111111111111111).epsilon(1e-9));
  CHECK(olia_on_ack(conn, 0) - 20.0 == doctest::Approx(-0.0027777777777777853).epsilon(1e-9));
}

TEST_CASE("balia_alpha: paper reductions and rate ratios") {
  auto single = connection(Algorithm::Balia, {measured_subflow(10, 0.1)});
  CHECK(balia_alpha(single, 0) == doctest::Approx(1.0).epsilon(1e-12));

  auto equal = connection(Algorithm::Balia, {measured_subflow(10, 0.1), measured_subflow(10, 0.1)});
  CHECK(balia_alpha(equal, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(balia_alpha(equal, 1) == doctest::Approx(1.0).epsilon(1e-12));

  auto skewed = connection(Algorithm::Balia, {measured_subflow(20, 0.1), measured_subflow(10, 0.1)});
  CHECK(balia_alpha(skewed, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(balia_alpha(skewed, 1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("balia_on_ack: single subflow reduces to Reno") {
  auto conn = connection(Algorithm::Balia, {measured_subflow(10, 0.1)});
  CHECK(balia_on_ack(conn, 0) - 10.0 == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("balia_on_ack: equal subflows") {
  auto conn = connection(Algorithm::Balia, {measured_subflow(10, 0.1), measured_subflow(10, 0.1)});
  CHECK(balia_on_ack(conn, 0) - 10.0 == doctest::Approx(0.025).epsilon(1e-9));
}

TEST_CASE("balia_on_ack: slower subflow gets the boosted increment") {
  auto conn = connection(Algorithm::Balia, {measured_subflow(10, 0.1), measured_subflow(10, 0.2)});
  // x=(100,50): alpha_2=2, (50/0.2)/22500 * 1.5 * 1.2
  CHECK(balia_on_ack(conn, 1) - 10.0 == doctest::Approx(0.02).epsilon(1e-9));
}

TEST_CASE("balia_on_loss: alpha=1 halves like standard TCP") {
  auto conn = connection(Algorithm::Balia, {measured_subflow(10, 0.1)});
  auto s = balia_on_loss(conn, 0);
  CHECK(s.cwnd == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(s.ssthresh == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("balia_on_loss: alpha=2 is capped at the 3/2 multiplier") {
  auto conn = connection(Algorithm::Balia, {measured_subflow(20, 0.1), measured_subflow(10, 0.1)});
  auto s = balia_on_loss(conn, 1);  // alpha_2 = 2
  CHECK(s.cwnd == doctest::Approx(2.5).epsilon(1e-12));  // 10 - 5*1.5
}

TEST_CASE("balia_on_loss: floor clamp at one segment") {
  auto conn = connection(Algorithm::Balia, {measured_subflow(6, 0.1), measured_subflow(2, 0.1)});
  // x=(60,20): alpha_2 = 3 -> capped at 3/2; 2 - 1*1.5 = 0.5 -> clamp
  auto s = balia_on_loss(conn, 1);
  CHECK(s.cwnd == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.ssthresh == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("balia_on_loss: rolls the loss-epoch byte counters") {
  auto a = measured_subflow(10, 0.1);
  a.bytes_since_last_loss = 1'000'000;
  a.bytes_between_last_two_losses = 2'000'000;
  auto conn = connection(Algorithm::Balia, {a});
  auto s = balia_on_loss(conn, 0);
  CHECK(s.bytes_since_last_loss == 0);
  CHECK(s.bytes_between_last_two_losses == 1'000'000);
}

TEST_CASE("standard_loss_halve: plain halving") {
  auto s = standard_loss_halve(measured_subflow(10, 0.1));
  CHECK(s.cwnd == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(s.ssthresh == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("standard_loss_halve: clamps at one segment") {
  auto s = standard_loss_halve(measured_subflow(1.5, 0.1));
  CHECK(s.cwnd == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.ssthresh == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("standard_loss_halve: rolls the loss-epoch byte counters") {
  auto in = measured_subflow(64, 0.1);
  in.bytes_since_last_loss = 1'000'000;
  in.bytes_between_last_two_losses = 2'000'000;
  auto s = standard_loss_halve(in);
  CHECK(s.cwnd == doctest::Approx(32.0).epsilon(1e-12));
  CHECK(s.bytes_since_last_loss == 0);
  CHECK(s.bytes_between_last_two_losses == 1'000'000);
}

TEST_CASE("slow_start_ack: exponential growth below ssthresh") {
  SubflowCcState s;
  s.cwnd = 2;
  s.ssthresh = 64;
  s = slow_start_ack(s);
  CHECK(s.cwnd == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s.phase == Phase::SlowStart);
}

TEST_CASE("slow_start_ack: crossing ssthresh flips the phase") {
  SubflowCcState s;
  s.cwnd = 63.5;
  s.ssthresh = 64;
  s = slow_start_ack(s);
  CHECK(s.cwnd == doctest::Approx(64.5).epsilon(1e-12));
  CHECK(s.phase == Phase::CongestionAvoidance);
}

TEST_CASE("slow_start_ack: already at ssthresh moves straight to avoidance") {
  SubflowCcState s;
  s.cwnd = 10;
  s.ssthresh = 10;
  s = slow_start_ack(s);
  CHECK(s.cwnd == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(s.phase == Phase::CongestionAvoidance);
}

TEST_CASE("wvegas_delta: no queueing means zero diff") {
  auto s = measured_subflow(10, 0.1);
  CHECK(wvegas_delta(s) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("wvegas_delta: frozen oracle values") {
  auto s = measured_subflow(10, 0.1);
  s.rtt_min = 0.1;
  s.rtt_round_avg = 0.125;
  CHECK(wvegas_delta(s) == doctest::Approx(2.0).epsilon(1e-9));

  auto t = measured_subflow(20, 0.05);
  t.rtt_min = 0.05;
  t.rtt_round_avg = 0.1;
  CHECK(wvegas_delta(t) == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("wvegas_delta: requires samples") {
  SubflowCcState s;
  CHECK_THROWS_AS(wvegas_delta(s), std::logic_error);
}

TEST_CASE("wvegas_weights: single subflow carries all the weight") {
  auto conn = connection(Algorithm::WVegas, {measured_subflow(10, 0.1)});
  auto w = wvegas_weights(conn);
  REQUIRE(w.size() == 1);
  CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("wvegas_weights: proportional to round-average rates") {
  auto equal = connection(Algorithm::WVegas, {measured_subflow(10, 0.1), measured_subflow(10, 0.1)});
  auto w = wvegas_weights(equal);
  CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(0.5).epsilon(1e-12));

  auto skewed = connection(Algorithm::WVegas, {measured_subflow(30, 0.1), measured_subflow(10, 0.1)});
  w = wvegas_weights(skewed);
  CHECK(w[0] == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(w[1] == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("wvegas_on_round: empty queue grows the window by one") {
  auto conn = connection(Algorithm::WVegas, {measured_subflow(10, 0.1)});
  auto s = wvegas_on_round(conn, 0);
  CHECK(s.cwnd == doctest::Approx(11.0).epsilon(1e-12));
  CHECK(s.rtt_round_samples == 0);  // round stats reset
}

TEST_CASE("wvegas_on_round: queue growth past twice the estimate backs off") {
  auto sf = measured_subflow(12, 0.1);
  sf.rtt_min = 0.1;
  sf.rtt_round_avg = 0.3;
  sf.queue_delay_est = 0.05;
  sf.vegas_alpha = 8.0;  // equals delta: the +-1 step holds the window
  auto conn = connection(Algorithm::WVegas, {sf});
  auto s = wvegas_on_round(conn, 0);
  CHECK(s.cwnd == doctest::Approx(2.0).epsilon(1e-9));  // 12 * 0.1/0.6
  CHECK(*s.queue_delay_est == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("wvegas_on_round: first round seeds the queue estimate without backoff") {
  auto sf = measured_subflow(2, 0.1);
  sf.rtt_min = 0.1;
  sf.rtt_round_avg = 0.15;
  REQUIRE(!sf.queue_delay_est.has_value());
  auto conn = connection(Algorithm::WVegas, {sf});
  auto s = wvegas_on_round(conn, 0);
  REQUIRE(s.queue_delay_est.has_value());
  CHECK(*s.queue_delay_est == doctest::Approx(0.05).epsilon(1e-9));
  // delta = 2/3 < alpha=2 so the window grew; no multiplicative cut (0.05 < 0.1)
  CHECK(s.cwnd == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("wvegas_on_round: rejected before any RTT sample") {
  ConnectionCcState conn;
  conn.algorithm = Algorithm::WVegas;
  conn.subflows.resize(1);
  CHECK_THROWS_AS(wvegas_on_round(conn, 0), std::logic_error);
}

TEST_CASE("dispatch: on_ack routes to the selected law") {
  auto reno = connection(Algorithm::Reno, {measured_subflow(10, 0.1)});
  CHECK(on_ack(reno, 0) - 10.0 == doctest::Approx(0.1).epsilon(1e-12));

  auto vegas = connection(Algorithm::WVegas, {measured_subflow(10, 0.1)});
  CHECK(on_ack(vegas, 0) == doctest::Approx(10.0).epsilon(1e-12));  // round-driven

  auto lia = connection(Algorithm::Lia, {measured_subflow(10, 0.1), measured_subflow(10, 0.1)});
  CHECK(on_ack(lia, 0) - 10.0 == doctest::Approx(0.025).epsilon(1e-9));
}

TEST_CASE("dispatch: on_loss uses the BALIA response only for BALIA") {
  auto balia = connection(Algorithm::Balia, {measured_subflow(20, 0.1), measured_subflow(10, 0.1)});
  CHECK(on_loss(balia, 1).cwnd == doctest::Approx(2.5).epsilon(1e-12));

  auto lia = connection(Algorithm::Lia, {measured_subflow(20, 0.1), measured_subflow(10, 0.1)});
  CHECK(on_loss(lia, 1).cwnd == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("dispatch: on_round_end runs wVegas only in congestion avoidance") {
  auto sf = measured_subflow(10, 0.1);
  auto vegas = connection(Algorithm::WVegas, {sf});
  CHECK(on_round_end(vegas, 0).cwnd == doctest::Approx(11.0).epsilon(1e-12));

  sf.phase = Phase::SlowStart;
  auto slow = connection(Algorithm::WVegas, {sf});
  auto out = on_round_end(slow, 0);
  CHECK(out.cwnd == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(out.rtt_round_samples == 0);

  auto lia = connection(Algorithm::Lia, {measured_subflow(10, 0.1)});
  CHECK(on_round_end(lia, 0).cwnd == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("unmeasured subflows fall back to Reno and leave coupled sums") {
  SubflowCcState fresh;  // no RTT sample yet
  fresh.cwnd = 4;
  auto conn = connection(Algorithm::Lia, {measured_subflow(10, 0.1), fresh});
  // ack on the unmeasured subflow: plain 1/w
  CHECK(lia_on_ack(conn, 1) - 4.0 == doctest::Approx(0.25).epsilon(1e-12));
  // ack on the measured subflow: the coupled sums see only itself
  CHECK(lia_on_ack(conn, 0) - 10.0 == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(olia_on_ack(conn, 0) - 10.0 == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(balia_on_ack(conn, 0) - 10.0 == doctest::Approx(0.1).epsilon(1e-9));
}

#include <benchmark/benchmark.h>

#include "mpsim/cc/laws.hpp"
#include "mpsim/scenario/runner.hpp"
#include "mpsim/sim/event_queue.hpp"
#include "mpsim/sim/rng.hpp"

namespace {

mpsim::cc::ConnectionCcState eight_subflow_connection() {
  mpsim::sim::SeededRng rng(5);
  mpsim::cc::ConnectionCcState conn;
  for (int i = 0; i < 8; ++i) {
    mpsim::cc::SubflowCcState s;
    s.cwnd = rng.uniform(2.0, 80.0);
    s.srtt = s.rtt_min = s.rtt_round_avg = rng.uniform(0.01, 0.2);
    s.rtt_samples = s.rtt_round_samples = 1;
    s.bytes_since_last_loss = rng.next_u64() % 1'000'000;
    s.phase = mpsim::cc::Phase::CongestionAvoidance;
    conn.subflows.push_back(s);
  }
  return conn;
}

void BM_EventQueueChurn(benchmark::State& state) {
  for (auto _ : state) {
    mpsim::sim::EventQueue q;
    long fired = 0;
    for (int i = 0; i < 1000; ++i)
      q.schedule(0.001 * i, mpsim::sim::EventKind::Timer, [&fired](double) { ++fired; });
    q.run_until(10.0);
    benchmark::DoNotOptimize(fired);
  }
}
BENCHMARK(BM_EventQueueChurn);

void BM_LiaOnAck(benchmark::State& state) {
  const auto conn = eight_subflow_connection();
  std::size_t r = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mpsim::cc::lia_on_ack(conn, r));
    r = (r + 1) % conn.subflows.size();
  }
}
BENCHMARK(BM_LiaOnAck);

void BM_OliaOnAck(benchmark::State& state) {
  const auto conn = eight_subflow_connection();
  std::size_t r = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mpsim::cc::olia_on_ack(conn, r));
    r = (r + 1) % conn.subflows.size();
  }
}
BENCHMARK(BM_OliaOnAck);

void BM_BaliaOnAck(benchmark::State& state) {
  const auto conn = eight_subflow_connection();
  std::size_t r = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mpsim::cc::balia_on_ack(conn, r));
    r = (r + 1) % conn.subflows.size();
  }
}
BENCHMARK(BM_BaliaOnAck);

void BM_WvegasOnRound(benchmark::State& state) {
  const auto conn = eight_subflow_connection();
  for (auto _ : state) benchmark::DoNotOptimize(mpsim::cc::wvegas_on_round(conn, 0));
}
BENCHMARK(BM_WvegasOnRound);

void BM_SharedBottleneckSecond(benchmark::State& state) {
  mpsim::scenario::ExperimentSpec spec;
  spec.topology = mpsim::scenario::TopologyKind::SharedBottleneck;
  spec.paths = {mpsim::scenario::LinkParams{10e6, 0.02, 0}};
  spec.flows = {
      mpsim::scenario::FlowSpec{mpsim::scenario::FlowKind::Mptcp, mpsim::cc::Algorithm::Lia,
                                {0, 0}, 0.0},
      mpsim::scenario::FlowSpec{mpsim::scenario::FlowKind::Sptcp, mpsim::cc::Algorithm::Reno,
                                {0}, 0.0},
  };
  spec.duration_s = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(mpsim::scenario::run_experiment(spec));
}
BENCHMARK(BM_SharedBottleneckSecond)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

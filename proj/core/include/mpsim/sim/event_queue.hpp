#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

namespace mpsim::sim {

enum class EventKind { PacketArrival, TransmitComplete, Timer, RoundProbe };

// Deterministic discrete-event kernel. Events fire in (time, insertion) order;
// the clock never moves backward.
class EventQueue {
 public:
  using Action = std::function<void(double now)>;

  // Throws std::logic_error when scheduling before the current clock.
  void schedule(double at, EventKind kind, Action action);

  // Fires every event with time <= t_end, then advances the clock to t_end.
  double run_until(double t_end);

  double now() const { return now_; }
  std::size_t pending() const { return heap_.size(); }
  std::uint64_t fired() const { return fired_; }

 private:
  struct Entry {
    double time;
    std::uint64_t seq;
    EventKind kind;
    Action action;
  };
  struct After {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Entry, std::vector<Entry>, After> heap_;
  double now_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t fired_ = 0;
};

}  // namespace mpsim::sim

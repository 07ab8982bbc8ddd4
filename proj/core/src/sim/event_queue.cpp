#include "mpsim/sim/event_queue.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace mpsim::sim {

void EventQueue::schedule(double at, EventKind kind, Action action) {
  if (at < now_)
    throw std::logic_error("event scheduled in the past: " + std::to_string(at) + " < " +
                           std::to_string(now_));
  heap_.push(Entry{at, next_seq_++, kind, std::move(action)});
}

double EventQueue::run_until(double t_end) {
  while (!heap_.empty() && heap_.top().time <= t_end) {
    Entry entry = heap_.top();
    heap_.pop();
    now_ = entry.time;
    ++fired_;
    entry.action(now_);
  }
  if (t_end > now_) now_ = t_end;
  return now_;
}

}  // namespace mpsim::sim

#pragma once

#include <cstdint>
#include <string_view>

namespace mpsim::sim {

// xorshift64* stream. Identical seeds give identical streams; the algorithm
// name is recorded in run summaries so results stay reproducible.
class SeededRng {
 public:
  static constexpr std::string_view kAlgorithm = "xorshift64star";

  explicit SeededRng(std::uint64_t seed) {
    // One splitmix64 step spreads low-entropy seeds over the state space and
    // keeps the xorshift state nonzero.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    state_ = z != 0 ? z : 0x9e3779b97f4a7c15ULL;
  }

  std::uint64_t next_u64() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dULL;
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  std::uint64_t state_;
};

}  // namespace mpsim::sim

#pragma once

#include <cstdint>

namespace mpsim::sim {

inline constexpr int kSegmentPayloadBytes = 1460;
inline constexpr int kDataPacketBytes = 1500;
inline constexpr int kAckPacketBytes = 40;

struct Packet {
  int size_bytes = kDataPacketBytes;
  std::uint32_t flow = 0;
  std::uint32_t subflow = 0;
  std::uint64_t seq = 0;        // data: segment number; ack: cumulative ack point
  bool is_ack = false;
  double timestamp_sent = 0.0;  // when the packet entered the network
  double echo_timestamp = 0.0;  // acks: timestamp_sent of the data packet answered
};

}  // namespace mpsim::sim

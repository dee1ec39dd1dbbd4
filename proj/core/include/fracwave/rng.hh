#pragma once

#include <array>
#include <cstdint>

namespace fracwave {

// Counter-based substream: the pair (master seed, sample index) is the
// cipher key, (tag, counter) the plaintext block.  Every draw is a pure
// function of (seed, index, tag, counter), so ensembles are reproducible
// bit for bit no matter how samples are scheduled across threads, and
// any draw can be revisited at random access.
//
// Block cipher: Threefry2x64, 20 rounds (rotation schedule and key
// injection as published for the Threefish/Threefry family).
std::array<uint64_t, 2> threefry2x64(std::array<uint64_t, 2> ctr,
                                     std::array<uint64_t, 2> key);

struct RngStream {
  uint64_t seed = 0;
  uint64_t index = 0;

  std::array<uint64_t, 2> block(uint64_t tag, uint64_t ctr) const {
    return threefry2x64({tag, ctr}, {seed, index});
  }

  // uniform on the open interval (0, 1)
  double uniform(uint64_t tag, uint64_t ctr) const;

  // standard normal via Box-Muller on one block (counter-indexed, stateless)
  double gaussian(uint64_t tag, uint64_t ctr) const;
};

// draw-purpose tags; rejection tries move to fresh tags so a retry never
// reuses counters already consumed
namespace rngtag {
constexpr uint64_t kField = 0;   // mode coefficient draws (4 per lattice mode)
constexpr uint64_t kAccept = 1;  // accept/reject uniforms
constexpr uint64_t kTryBase = 2; // tag for rejection try t is kTryBase + t
}  // namespace rngtag

}  // namespace fracwave

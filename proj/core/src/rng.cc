#include "fracwave/rng.hh"

#include <cmath>
#include <numbers>

namespace fracwave {

namespace {
inline uint64_t rotl(uint64_t x, unsigned r) { return (x << r) | (x >> (64 - r)); }

// uniform in (0,1): top 53 bits, centered so 0 and 1 are unreachable
inline double to_open01(uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * 0x1p-53;
}
}  // namespace

std::array<uint64_t, 2> threefry2x64(std::array<uint64_t, 2> ctr,
                                     std::array<uint64_t, 2> key) {
  constexpr unsigned R[8] = {16, 42, 12, 31, 16, 32, 24, 21};
  const uint64_t ks[3] = {key[0], key[1],
                          0x1BD11BDAA9FC1A22ULL ^ key[0] ^ key[1]};
  uint64_t x0 = ctr[0] + ks[0];
  uint64_t x1 = ctr[1] + ks[1];
  for (unsigned r = 0; r < 20; ++r) {
    x0 += x1;
    x1 = rotl(x1, R[r % 8]);
    x1 ^= x0;
    if (r % 4 == 3) {
      const unsigned j = r / 4 + 1;  // key injections after rounds 4,8,12,16,20
      x0 += ks[j % 3];
      x1 += ks[(j + 1) % 3] + j;
    }
  }
  return {x0, x1};
}

double RngStream::uniform(uint64_t tag, uint64_t ctr) const {
  return to_open01(block(tag, ctr)[0]);
}

double RngStream::gaussian(uint64_t tag, uint64_t ctr) const {
  const auto b = block(tag, ctr);
  const double u1 = to_open01(b[0]);
  const double u2 = to_open01(b[1]);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace fracwave

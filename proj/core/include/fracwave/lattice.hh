#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>

#include "fracwave/errors.hh"

namespace fracwave {

// A Fourier lattice mode n in Z^d on the torus T^d (d = 1 or 2).
// lambda = |n| so that -Lap e^{in.x} = |n|^2 e^{in.x}; the massive
// bracket <lambda> = (1+|n|^2)^{1/2} is >= 1 with equality iff n = 0.
struct LatticeMode {
  int dim = 1;
  std::array<int, 2> n{0, 0};  // n[1] ignored when dim == 1

  long long nsq() const {
    long long q = static_cast<long long>(n[0]) * n[0];
    if (dim == 2) q += static_cast<long long>(n[1]) * n[1];
    return q;
  }
  double lambda() const { return std::sqrt(static_cast<double>(nsq())); }
  double bracket() const { return std::sqrt(1.0 + static_cast<double>(nsq())); }

  // lexicographic order on (n0, n1); "canonical" = strictly positive,
  // used to pick one representative of each Hermitian pair {n, -n}
  bool is_zero() const { return n[0] == 0 && (dim == 1 || n[1] == 0); }
  bool canonical() const { return n[0] > 0 || (n[0] == 0 && dim == 2 && n[1] > 0); }
  LatticeMode negated() const { return {dim, {-n[0], -n[1]}}; }
};

// multiplier of D^sigma = (1 - Lap)^{sigma/2}: <lambda_n>^sigma
inline double fractional_multiplier(double sigma, const LatticeMode& m) {
  return std::pow(1.0 + static_cast<double>(m.nsq()), 0.5 * sigma);
}

// The symmetric box |n_i| <= K, iterated in lexicographic mode order.
// Flat index: d=1:  i = n0 + K
//             d=2:  i = (n0 + K)(2K+1) + (n1 + K)
struct ModeBox {
  int dim = 1;
  int K = 0;

  ModeBox(int d, int K_) : dim(d), K(K_) {
    if ((d != 1 && d != 2) || K_ < 0) throw Error("ModeBox: need d in {1,2}, K >= 0");
  }
  long long size() const {
    long long side = 2LL * K + 1;
    return dim == 1 ? side : side * side;
  }
  LatticeMode mode(long long i) const {
    int side = 2 * K + 1;
    if (dim == 1) return {1, {static_cast<int>(i) - K, 0}};
    return {2, {static_cast<int>(i / side) - K, static_cast<int>(i % side) - K}};
  }
  long long index(const LatticeMode& m) const {
    if (dim == 1) return m.n[0] + K;
    return static_cast<long long>(m.n[0] + K) * (2 * K + 1) + (m.n[1] + K);
  }
  bool contains(const LatticeMode& m) const {
    if (std::abs(m.n[0]) > K) return false;
    return dim == 1 || std::abs(m.n[1]) <= K;
  }
};

// Projection thresholds compare lambda_n <= N through the exact integer
// |n|^2 against N^2; the tiny relative nudge keeps integer-valued N^2
// (the only place ties can occur) on the inclusive side of roundoff.
inline long long sharp_threshold(double N) {
  if (N < 0) throw Error("projector radius must be >= 0");
  double NN = N * N;
  return static_cast<long long>(std::floor(NN * (1.0 + 4e-16) + 1e-12));
}

}  // namespace fracwave

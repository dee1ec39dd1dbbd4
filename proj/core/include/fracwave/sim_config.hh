#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "fracwave/potential.hh"

namespace fracwave {

// Truncation radius that lets every mode of a d-dimensional K-box through
// the psi == 1 region of the smooth projector (pi_N acts as the identity).
inline double passthrough_N(int d, int K) {
  return 2.0 * (std::sqrt(static_cast<double>(d)) * K + 1.0);
}

// All problem parameters.  Zero-valued N / M / dt mean "derive from K and
// alpha"; resolve() materializes those defaults so that a resolved config
// serializes and reloads to an equal value.
struct SimConfig {
  std::string experiment;  // invariance | convergence | tail | inflation | energy

  int d = 1;
  double alpha = 1.0;
  Potential potential{};
  double N = 0.0;   // truncation radius; 0 -> passthrough_N(d, K)
  int K = 16;       // stored box |n_i| <= K
  int M = 0;        // collocation grid per axis; 0 -> 4K+4
  double dt = 0.0;  // 0 -> 0.1 <N>^-alpha rotation guard
  double T = 1.0;

  double sigma = 0.25;  // H^sigma reporting index (also the D^theta tail index)
  double s = 0.25;      // H^s index (inflation window / highfreq scaling)
  double s1 = 0.25;     // W^{s1,inf} index of the free evolution in energy runs
  double beta = 2.0;    // time-weight exponent, > 1
  double eps0 = 0.25;   // W^{eps0, r0} indices, d/r0 < eps0 < alpha - d/2
  double r0 = 8.0;
  int window_L = 3;          // Y/Z sums truncate to |l| <= window_L
  double dt_sup = 1.0 / 64;  // per-window sup sampling resolution

  uint64_t seed = 1;
  int samples = 100;
  std::vector<int> n_list{8, 16, 32, 64};
  double delta1 = 0.25;
  double delta2 = 0.5;
  std::vector<double> R_grid;  // empty -> quantile-derived grid
  std::vector<std::string> observables{"u-l2sq", "potential-F"};
  std::string output_dir = "out";
  int threads = 0;  // worker threads; 0 -> hardware concurrency

  SimConfig resolved() const {
    SimConfig c = *this;
    if (c.N <= 0.0) c.N = passthrough_N(c.d, c.K);
    if (c.M == 0) c.M = 4 * c.K + 4;
    if (c.dt <= 0.0) c.dt = 0.1 * std::pow(1.0 + c.N * c.N, -0.5 * c.alpha);
    return c;
  }

  bool operator==(const SimConfig&) const = default;
};

}  // namespace fracwave

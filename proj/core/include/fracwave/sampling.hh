#pragma once

#include "fracwave/field.hh"
#include "fracwave/rng.hh"
#include "fracwave/sim_config.hh"

namespace fracwave {

// test hook: replace every raw Gaussian by 0 or by 1
enum class GaussianOverride { None, Zero, One };

// One draw of the free Gaussian measure on the K-box: per orthonormal real
// mode, u-coefficients are centered Gaussians with variance <lambda>^-2alpha
// and v-coefficients standard Gaussians.  Complex modes split the variance
// evenly between real and imaginary part and are conjugate-mirrored, which
// is the same law written in the exponential basis.  Draw order is the
// lexicographic mode order, four counters per mode, so a fixed stream pins
// every coefficient independently of truncation radius.
PhasePoint sample_mu(const SimConfig& cfg, int K, const RngStream& rng,
                     GaussianOverride ov = GaussianOverride::None,
                     uint64_t tag = rngtag::kField);

// Pi_N of sample_mu under the shared stream (coupled by construction)
PhasePoint sample_mu_truncated(const SimConfig& cfg, double N, const RngStream& rng,
                               GaussianOverride ov = GaussianOverride::None,
                               uint64_t tag = rngtag::kField);

// multiplies each real Fourier coefficient of (u0, v0) by an independent
// standard Gaussian
PhasePoint sample_general(const SpectralField& u0, const SpectralField& v0,
                          const RngStream& rng,
                          GaussianOverride ov = GaussianOverride::None,
                          uint64_t tag = rngtag::kField);

// A batch of phase points with their sample indices and optional
// importance weights (positive, finite).
struct Ensemble {
  std::vector<PhasePoint> members;
  SimConfig config;
  std::vector<uint64_t> seeds;   // sample index per member
  std::vector<double> weights;   // empty, or one positive weight per member

  void validate() const;
};

}  // namespace fracwave

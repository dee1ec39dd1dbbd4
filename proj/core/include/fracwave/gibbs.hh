#pragma once

#include "fracwave/cutoff.hh"
#include "fracwave/sampling.hh"

namespace fracwave {

// potential functional relative to the smooth truncation:
//   Exp:      F_N(u) = int e^{pi_N u}
//   Power(k): F_N(u) = int (pi_N u)^{2k+2} / (2k+2)
// evaluated by collocation quadrature on the M-grid
double potential_F(double N, const SpectralField& u, const Potential& pot, int M,
                   const CutoffPsi& psi = CutoffPsi{});

// Gibbs density G_N(u) = exp(-F_N(u)) relative to the Gaussian measure; in (0, 1]
double gibbs_weight(double N, const SpectralField& u, const Potential& pot, int M);

struct GibbsSample {
  PhasePoint point;
  unsigned long long tries = 0;
};

// Draws the truncated Gaussian and accepts with probability G_N(u); the
// accepted u-marginal follows the Gibbs measure, the v-marginal is
// untouched (the weight does not involve v).  Throws ExhaustedTriesError
// (with the observed acceptance rate) after max_tries rejections.
GibbsSample sample_gibbs_rejection(const SimConfig& cfg, double N, const Potential& pot,
                                   const RngStream& rng, unsigned long long max_tries);

// L^p(d mu) distance of F_N between consecutive truncations over coupled
// samples (same draw across all N), plus a monotone-trend p-value and a
// half-versus-full stability ratio for the largest pair.
struct FDiagnostic {
  std::vector<double> N_hi;      // larger radius of each consecutive pair
  std::vector<double> lp_diff;   // (E |F_N2 - F_N1|^p)^{1/p}
  double trend_p = 1.0;          // Mann-Kendall one-sided p for decreasing
  double stability_ratio = 1.0;  // half-sample estimate / full estimate
  int samples = 0;
  double p = 2.0;
};

FDiagnostic convergence_diagnostic_F(const SimConfig& cfg, const std::vector<double>& N_list,
                                     double p, int samples);

}  // namespace fracwave

#include "fracwave/gibbs.hh"

#include <cmath>

#include "fracwave/errors.hh"
#include "fracwave/ops.hh"
#include "fracwave/stats.hh"
#include "fracwave/transform.hh"

namespace fracwave {

double potential_F(double N, const SpectralField& u, const Potential& pot, int M,
                   const CutoffPsi& psi) {
  SpectralField un = smooth_project(N, u, psi);
  GridField g = to_grid(un, M);
  const double cell = std::pow(2.0 * M_PI / M, g.dim);
  double acc = 0.0;
  for (double x : g.values) acc += pot.F(x);
  return acc * cell;
}

double gibbs_weight(double N, const SpectralField& u, const Potential& pot, int M) {
  return std::exp(-potential_F(N, u, pot, M));
}

GibbsSample sample_gibbs_rejection(const SimConfig& cfg, double N, const Potential& pot,
                                   const RngStream& rng, unsigned long long max_tries) {
  // Rejection against the Gaussian: density exp(-F_N) <= 1 needs no envelope
  // constant.  Every try uses its own counter block so the sampler stays
  // reproducible no matter how many rejections occur.
  for (unsigned long long t = 0; t < max_tries; ++t) {
    PhasePoint cand = sample_mu_truncated(cfg, N, rng, GaussianOverride::None,
                                          rngtag::kTryBase + t);
    const double w = gibbs_weight(N, cand.u, pot, cfg.M);
    if (rng.uniform(rngtag::kAccept, t) < w) return GibbsSample{std::move(cand), t + 1};
  }
  throw ExhaustedTriesError(max_tries, 0.0);
}

FDiagnostic convergence_diagnostic_F(const SimConfig& cfg, const std::vector<double>& N_list,
                                     double p, int samples) {
  if (N_list.size() < 2) throw Error("convergence_diagnostic_F needs at least two truncations");
  // Equal adjacent radii are allowed: the coupled difference is then exactly
  // zero, which callers use as a self-check of the coupling.
  for (std::size_t i = 1; i < N_list.size(); ++i)
    if (!(N_list[i] >= N_list[i - 1]))
      throw Error("convergence_diagnostic_F: truncation list must not decrease");
  if (!(p >= 1.0)) throw Error("convergence_diagnostic_F: p must be >= 1");

  FDiagnostic diag;
  diag.samples = samples;
  diag.p = p;

  RngStream rng{cfg.seed, 0};
  const std::size_t npairs = N_list.size() - 1;
  std::vector<std::vector<double>> diffs(npairs);

  for (int s = 0; s < samples; ++s) {
    // One Gaussian draw shared across every truncation: the coupling is what
    // turns the Cauchy property into a statement about a single random field.
    PhasePoint full = sample_mu(cfg, cfg.K, rng, GaussianOverride::None, rngtag::kTryBase + s);
    std::vector<double> fvals(N_list.size());
    for (std::size_t i = 0; i < N_list.size(); ++i)
      fvals[i] = potential_F(N_list[i], full.u, cfg.potential, cfg.M);
    for (std::size_t i = 0; i + 1 < N_list.size(); ++i)
      diffs[i].push_back(std::abs(fvals[i + 1] - fvals[i]));
  }

  for (std::size_t i = 0; i < npairs; ++i) {
    double acc = 0.0;
    for (double d : diffs[i]) acc += std::pow(d, p);
    diag.N_hi.push_back(N_list[i + 1]);
    diag.lp_diff.push_back(std::pow(acc / samples, 1.0 / p));
  }

  diag.trend_p = mann_kendall_decreasing_p(diag.lp_diff);

  // Stability of the last increment: recompute from the first half of the
  // sample and compare.  A ratio near 1 means the estimate has settled.
  {
    const std::vector<double>& last = diffs[npairs - 1];
    const std::size_t half = last.size() / 2;
    if (half > 0) {
      double acc = 0.0;
      for (std::size_t j = 0; j < half; ++j) acc += std::pow(last[j], p);
      const double half_est = std::pow(acc / half, 1.0 / p);
      if (diag.lp_diff.back() > 0) diag.stability_ratio = half_est / diag.lp_diff.back();
    }
  }
  return diag;
}

}  // namespace fracwave

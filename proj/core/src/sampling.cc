#include "fracwave/sampling.hh"

#include <cmath>

#include "fracwave/ops.hh"

namespace fracwave {

namespace {

inline double draw(const RngStream& rng, uint64_t tag, uint64_t ctr, GaussianOverride ov) {
  switch (ov) {
    case GaussianOverride::Zero: return 0.0;
    case GaussianOverride::One: return 1.0;
    default: return rng.gaussian(tag, ctr);
  }
}

}  // namespace

PhasePoint sample_mu(const SimConfig& cfg, int K, const RngStream& rng,
                     GaussianOverride ov, uint64_t tag) {
  if (!(cfg.alpha > 0.5 * cfg.d))
    throw Error("sample_mu requires alpha > d/2");
  PhasePoint p(cfg.d, K);
  const ModeBox b = p.u.box();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (long long i = 0; i < b.size(); ++i) {
    const LatticeMode m = b.mode(i);
    const uint64_t c0 = 4 * static_cast<uint64_t>(i);
    if (m.is_zero()) {
      p.u.coeffs[i] = cplx{draw(rng, tag, c0, ov), 0.0};
      p.v.coeffs[i] = cplx{draw(rng, tag, c0 + 2, ov), 0.0};
    } else if (m.canonical()) {
      const double au = fractional_multiplier(-cfg.alpha, m) * inv_sqrt2;
      const cplx cu{au * draw(rng, tag, c0, ov), au * draw(rng, tag, c0 + 1, ov)};
      const cplx cv{inv_sqrt2 * draw(rng, tag, c0 + 2, ov),
                    inv_sqrt2 * draw(rng, tag, c0 + 3, ov)};
      p.u.coeffs[i] = cu;
      p.v.coeffs[i] = cv;
      const long long j = b.index(m.negated());
      p.u.coeffs[j] = std::conj(cu);
      p.v.coeffs[j] = std::conj(cv);
    }
  }
  return p;
}

PhasePoint sample_mu_truncated(const SimConfig& cfg, double N, const RngStream& rng,
                               GaussianOverride ov, uint64_t tag) {
  PhasePoint p = sample_mu(cfg, cfg.K, rng, ov, tag);
  p.u = sharp_project(N, p.u);
  p.v = sharp_project(N, p.v);
  return p;
}

PhasePoint sample_general(const SpectralField& u0, const SpectralField& v0,
                          const RngStream& rng, GaussianOverride ov, uint64_t tag) {
  if (u0.dim != v0.dim || u0.maxmode != v0.maxmode)
    throw Error("sample_general: u0 and v0 must share dim and maxmode");
  PhasePoint p(u0.dim, u0.maxmode);
  const ModeBox b = p.u.box();
  for (long long i = 0; i < b.size(); ++i) {
    const LatticeMode m = b.mode(i);
    const uint64_t c0 = 4 * static_cast<uint64_t>(i);
    if (m.is_zero()) {
      p.u.coeffs[i] = cplx{u0.coeffs[i].real() * draw(rng, tag, c0, ov), 0.0};
      p.v.coeffs[i] = cplx{v0.coeffs[i].real() * draw(rng, tag, c0 + 2, ov), 0.0};
    } else if (m.canonical()) {
      const cplx cu{u0.coeffs[i].real() * draw(rng, tag, c0, ov),
                    u0.coeffs[i].imag() * draw(rng, tag, c0 + 1, ov)};
      const cplx cv{v0.coeffs[i].real() * draw(rng, tag, c0 + 2, ov),
                    v0.coeffs[i].imag() * draw(rng, tag, c0 + 3, ov)};
      p.u.coeffs[i] = cu;
      p.v.coeffs[i] = cv;
      const long long j = b.index(m.negated());
      p.u.coeffs[j] = std::conj(cu);
      p.v.coeffs[j] = std::conj(cv);
    }
  }
  return p;
}

void Ensemble::validate() const {
  if (!seeds.empty() && seeds.size() != members.size())
    throw Error("ensemble: seeds/members size mismatch");
  if (weights.empty()) return;
  if (weights.size() != members.size())
    throw Error("ensemble: weights/members size mismatch");
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w))
      throw Error("ensemble: weights must be positive and finite");
}

}  // namespace fracwave

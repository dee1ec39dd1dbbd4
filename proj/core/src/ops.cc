#include "fracwave/ops.hh"

#include <cmath>
#include <limits>
#include <numbers>

namespace fracwave {

SpectralField apply_D(double sigma, const SpectralField& f) {
  SpectralField out = f;
  const ModeBox b = f.box();
  for (long long i = 0; i < b.size(); ++i)
    out.coeffs[i] *= fractional_multiplier(sigma, b.mode(i));
  return out;
}

SpectralField sharp_project(double N, const SpectralField& f) {
  const long long thr = sharp_threshold(N);
  SpectralField out = f;
  const ModeBox b = f.box();
  for (long long i = 0; i < b.size(); ++i)
    if (b.mode(i).nsq() > thr) out.coeffs[i] = cplx{0.0, 0.0};
  return out;
}

SpectralField sharp_complement(double N, const SpectralField& f) {
  const long long thr = sharp_threshold(N);
  SpectralField out = f;
  const ModeBox b = f.box();
  for (long long i = 0; i < b.size(); ++i)
    if (b.mode(i).nsq() <= thr) out.coeffs[i] = cplx{0.0, 0.0};
  return out;
}

SpectralField smooth_project(double N, const SpectralField& f, const CutoffPsi& psi) {
  if (!(N > 0)) throw Error("smooth_project: N must be > 0");
  const long long keep = sharp_threshold(0.5 * N);  // psi == 1 region
  const long long drop = sharp_threshold(N);        // psi == 0 beyond
  SpectralField out = f;
  const ModeBox b = f.box();
  for (long long i = 0; i < b.size(); ++i) {
    const long long q = b.mode(i).nsq();
    if (q <= keep) continue;
    if (q > drop) {
      out.coeffs[i] = cplx{0.0, 0.0};
    } else {
      out.coeffs[i] *= psi(std::sqrt(static_cast<double>(q)) / N);
    }
  }
  return out;
}

double sobolev_norm(double s, const SpectralField& f) {
  const ModeBox b = f.box();
  double acc = 0.0;
  for (long long i = 0; i < b.size(); ++i) {
    const double w = fractional_multiplier(2.0 * s, b.mode(i));
    acc += w * std::norm(f.coeffs[i]);
  }
  return std::sqrt(acc);
}

double pair_sobolev_norm(double s, double alpha, const PhasePoint& p) {
  const double a = sobolev_norm(s, p.u);
  const double b = sobolev_norm(s - alpha, p.v);
  return std::sqrt(a * a + b * b);
}

double grid_lp_norm(double r, const GridField& g) {
  if (std::isinf(r)) {
    double m = 0.0;
    for (double v : g.values) m = std::max(m, std::abs(v));
    return m;
  }
  if (r < 1.0) throw Error("grid_lp_norm: r must be in [1, infinity]");
  const double cell = std::pow(2.0 * std::numbers::pi / g.M, g.dim);
  double acc = 0.0;
  for (double v : g.values) acc += std::pow(std::abs(v), r);
  return std::pow(cell * acc, 1.0 / r);
}

double wepsr_norm(double eps0, double r0, const SpectralField& f, int M) {
  return grid_lp_norm(r0, to_grid(apply_D(eps0, f), M));
}

}  // namespace fracwave

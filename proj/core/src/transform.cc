#include "fracwave/transform.hh"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

// Synthesis:  u(x_j) = (2 pi)^{-d/2} sum_n c_n e^{i n . x_j},  x_j = 2 pi j / M.
// Folding n into j = n mod M turns this into an unnormalized backward DFT of
// length M per axis; M >= 2K+2 > 2K+1 keeps the folding collision-free.
// Analysis is the forward DFT scaled by (2 pi)^{d/2} / M^d.
//
// FFTW plans are cached per (dim, M, sign).  Plans are created with
// FFTW_ESTIMATE | FFTW_UNALIGNED on a scratch buffer and executed through the
// new-array interface, which is safe to call concurrently; the planner itself
// is serialized by a mutex.

namespace fracwave {

namespace {

struct PlanKey {
  int dim, M, sign;
  bool operator<(const PlanKey& o) const {
    return std::tie(dim, M, sign) < std::tie(o.dim, o.M, o.sign);
  }
};

fftw_plan plan_for(int dim, int M, int sign) {
  static std::mutex mu;
  static std::map<PlanKey, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({dim, M, sign});
  if (it != cache.end()) return it->second;

  const size_t n = dim == 1 ? static_cast<size_t>(M) : static_cast<size_t>(M) * M;
  fftw_complex* scratch = fftw_alloc_complex(n);
  fftw_plan p = dim == 1
                    ? fftw_plan_dft_1d(M, scratch, scratch, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
                    : fftw_plan_dft_2d(M, M, scratch, scratch, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(scratch);
  cache[{dim, M, sign}] = p;
  return p;
}

void execute(int dim, int M, int sign, std::vector<cplx>& buf) {
  fftw_plan p = plan_for(dim, M, sign);
  auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_execute_dft(p, raw, raw);
}

size_t grid_count(int dim, int M) {
  return dim == 1 ? static_cast<size_t>(M) : static_cast<size_t>(M) * M;
}

int fold(int n, int M) { return ((n % M) + M) % M; }

}  // namespace

GridField to_grid(const SpectralField& f, int M, double* imag_residue) {
  if (M < 2 * f.maxmode + 2) throw GridTooSmallError(M, f.maxmode);

  std::vector<cplx> buf(grid_count(f.dim, M), cplx{0.0, 0.0});
  const ModeBox b = f.box();
  for (long long i = 0; i < b.size(); ++i) {
    const LatticeMode m = b.mode(i);
    const size_t j = f.dim == 1
                         ? static_cast<size_t>(fold(m.n[0], M))
                         : static_cast<size_t>(fold(m.n[0], M)) * M + fold(m.n[1], M);
    buf[j] += f.coeffs[i];
  }
  execute(f.dim, M, FFTW_BACKWARD, buf);

  const double scale = std::pow(2.0 * std::numbers::pi, -0.5 * f.dim);
  GridField g(f.dim, M);
  double worst = 0.0;
  for (size_t j = 0; j < buf.size(); ++j) {
    g.values[j] = scale * buf[j].real();
    worst = std::max(worst, std::abs(scale * buf[j].imag()));
  }
  if (imag_residue) *imag_residue = worst;
  return g;
}

SpectralField from_grid(const GridField& g, int maxmode) {
  if (g.M < 2 * maxmode + 2) throw GridTooSmallError(g.M, maxmode);

  std::vector<cplx> buf(g.values.size());
  for (size_t j = 0; j < buf.size(); ++j) buf[j] = cplx{g.values[j], 0.0};
  execute(g.dim, g.M, FFTW_FORWARD, buf);

  const double scale =
      std::pow(2.0 * std::numbers::pi, 0.5 * g.dim) / static_cast<double>(buf.size());
  SpectralField f(g.dim, maxmode);
  const ModeBox b = f.box();
  for (long long i = 0; i < b.size(); ++i) {
    const LatticeMode m = b.mode(i);
    const size_t j = g.dim == 1
                         ? static_cast<size_t>(fold(m.n[0], g.M))
                         : static_cast<size_t>(fold(m.n[0], g.M)) * g.M + fold(m.n[1], g.M);
    f.coeffs[i] = scale * buf[j];
  }
  f.symmetrize();
  return f;
}

}  // namespace fracwave

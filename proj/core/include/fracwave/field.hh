#pragma once

#include <complex>
#include <vector>

#include "fracwave/lattice.hh"

namespace fracwave {

using cplx = std::complex<double>;

// Real field on T^d stored as lattice Fourier coefficients against the
// orthonormal basis phi_n = e^{in.x} / (2 pi)^{d/2}, full symmetric box
// |n_i| <= K in lexicographic order.  Real fields are kept Hermitian:
// coeff(-n) = conj(coeff(n)).  Modes outside the box are zero.
struct SpectralField {
  int dim = 1;
  int maxmode = 0;  // K
  std::vector<cplx> coeffs;

  SpectralField() : coeffs(1, cplx{0.0, 0.0}) {}
  SpectralField(int d, int K) : dim(d), maxmode(K), coeffs(ModeBox(d, K).size()) {}

  ModeBox box() const { return ModeBox(dim, maxmode); }

  cplx coeff(const LatticeMode& m) const {
    const ModeBox b = box();
    return b.contains(m) ? coeffs[b.index(m)] : cplx{0.0, 0.0};
  }
  // sets c(n) and mirrors c(-n) = conj(c(n)); ignores modes outside the box
  void set_coeff(const LatticeMode& m, cplx c) {
    const ModeBox b = box();
    if (!b.contains(m)) return;
    coeffs[b.index(m)] = c;
    coeffs[b.index(m.negated())] = std::conj(c);
    if (m.is_zero()) coeffs[b.index(m)] = cplx{c.real(), 0.0};
  }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double a);

  double max_abs_coeff() const;
  // largest |Im c(-n) - conj asymmetry|; 0 for an exactly Hermitian field
  double hermitian_defect() const;
  // restore exact Hermitian symmetry by averaging each {n, -n} pair
  void symmetrize();
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField f);

// Uniform collocation samples of a real field: values[j] = u(2 pi j / M),
// row-major over (j0, j1) when d = 2.  Pairs losslessly with a
// SpectralField of box K whenever M >= 2K+2.
struct GridField {
  int dim = 1;
  int M = 0;
  std::vector<double> values;

  GridField() = default;
  GridField(int d, int M_)
      : dim(d), M(M_), values(static_cast<size_t>(d == 1 ? M_ : static_cast<long long>(M_) * M_), 0.0) {}
};

// One point of phase space (u, du/dt); v lives alpha derivatives rougher.
struct PhasePoint {
  SpectralField u;
  SpectralField v;

  PhasePoint() = default;
  PhasePoint(SpectralField u_, SpectralField v_) : u(std::move(u_)), v(std::move(v_)) {}
  PhasePoint(int d, int K) : u(d, K), v(d, K) {}
};

}  // namespace fracwave

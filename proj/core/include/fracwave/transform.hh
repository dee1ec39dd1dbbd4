#pragma once

#include "fracwave/field.hh"

namespace fracwave {

// Collocation samples u(2 pi j / M) of the band-limited field; requires
// M >= 2K+2 (throws GridTooSmallError otherwise).  If imag_residue is
// given it receives the max |Im| of the synthesized samples, which is
// roundoff-size for a Hermitian field.
GridField to_grid(const SpectralField& f, int M, double* imag_residue = nullptr);

// Inverse: recovers the coefficients of the band-limited interpolant on
// the box |n_i| <= K.  Exact (up to roundoff) round trip with to_grid when
// M >= 2K+2.  Output is symmetrized to exact Hermitian form.
SpectralField from_grid(const GridField& g, int maxmode);

}  // namespace fracwave

#pragma once

#include <cmath>

namespace fracwave {

// Smooth frequency cutoff: psi == 1 on [0, 1/2], psi == 0 on (1, infty),
// monotone nonincreasing in between.  The bridge on (1/2, 1) is fixed to
//
//     psi(r) = exp(1 - 1/(1 - (2r-1)^2)) = exp(-q^2/(1-q^2)),  q = 2r-1,
//
// so the profile is reproducible across runs.  Only pointwise values are
// ever used (the smooth projector scales coefficients by psi(lambda/N)).
struct CutoffPsi {
  double operator()(double r) const {
    if (r <= 0.5) return 1.0;
    if (r >= 1.0) return 0.0;
    const double q = 2.0 * r - 1.0;
    return std::exp(-q * q / (1.0 - q * q));
  }
};

}  // namespace fracwave

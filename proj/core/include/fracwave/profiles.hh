#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "fracwave/field.hh"

namespace fracwave {

// Periodic orbit of V'' + V^{2k+1} = 0 through (V0, 0), tabulated over one
// period on a uniform grid (closed: entry m wraps to entry 0) and queried by
// periodic Catmull-Rom interpolation.
struct OdeProfile {
  int k = 1;
  double V0 = 1.0;
  double period = 0.0;
  double first_integral = 0.0;  // 2 F(V0) with F(v) = v^{2k+2}/(2k+2)
  std::vector<double> tab_V;    // samples at t_i = i * period / m, i = 0..m-1
  std::vector<double> tab_Vp;

  double eval_V(double t) const;
  double eval_Vp(double t) const;
};

// Velocity-Verlet integration until first return to (V0, 0), then a second
// pass tabulating one full period.  dt_ode = 0 picks a step fine enough for
// the 1e-8 table invariants; an explicit coarse step that drifts past 1e-6
// in the first integral raises OdeNoReturnError.
OdeProfile solve_profile(int k, double V0, double dt_ode = 0.0);

// Independent oracle for the period: 2 * int_{-V0}^{V0} dv / sqrt(2(F(V0)-F(v)))
// after v = V0 w reduces to a Gauss-Chebyshev integral (the inverse square
// root endpoints are exactly the Chebyshev weight).
double period_quadrature(int k, double V0, int nodes = 256);

void export_profile_csv(const OdeProfile& profile, const std::string& path);

// Smooth bump on the torus: phi(y) = exp(1 - 1/(1 - |y/radius|^2)) inside
// |y| < radius and 0 outside, so max phi = phi(0) = 1.  Support must stay
// strictly inside one fundamental domain (radius < pi).
struct BumpPhi {
  std::array<double, 2> center{M_PI, M_PI};
  double radius = 1.0;

  // phi(n * wrap(x - center)); n = 1 gives the bump itself
  double operator()(const std::array<double, 2>& x, int dim, int n = 1) const;
};

// Concentration-scale parameters; the derived quantities follow the scaling
// kappa_n = (log n)^{-delta1}, lambda_n = (kappa_n n^{d/2-s})^k,
// t_n = ((log n)^{delta2} n^{-(d/2-s)})^k.
struct InflationParams {
  int n = 8;
  double s = 0.25;
  int d = 1;
  int k = 1;
  double alpha = 0.25;
  double delta1 = 0.25;
  double delta2 = 0.5;

  void validate() const;
  double kappa_n() const;
  double amplitude() const;  // kappa_n * n^{d/2 - s} = peak of the data
  double lambda_n() const;
  double t_n() const;
};

// Modes (relative to concentration scale 1) the bump needs for its spectral
// representation to be exact at working precision; see profiles.cc.
int bump_bandwidth(double radius);

// Data (kappa_n n^{d/2-s} phi(n x), 0) as a spectral pair on the K-box.
// Refuses (ResolutionError) when n * bump_bandwidth does not fit in the box.
PhasePoint build_inflation_data(const InflationParams& params, const BumpPhi& phi, int K, int M);

// The closed-form reference v_n(t, x) = A(x) V(t A(x)^k), A = amplitude * phi(n x),
// evaluated on the M-grid; at t = 0 this reproduces build_inflation_data's
// grid values exactly.
GridField eval_vn(double t, const InflationParams& params, const BumpPhi& phi,
                  const OdeProfile& profile, int M);

}  // namespace fracwave

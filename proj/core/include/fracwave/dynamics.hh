#pragma once

#include <map>
#include <string>
#include <vector>

#include "fracwave/field.hh"
#include "fracwave/sim_config.hh"

namespace fracwave {

// Kick variants: Zero turns the step into pure free flow (test hook), Flipped
// reverses the sign of the nonlinear force (negative control for the
// invariance experiment; it destroys conservation of J on purpose).
enum class KickMode { Normal, Zero, Flipped };

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> states;
  std::map<std::string, std::vector<double>> series;  // per recorded time
  double max_imag_residue = 0.0;   // worst synthesis residue seen on kick grids
  double pi_inertness = 0.0;       // max over records of |g - pi_N g| / |g| for g = f(pi_N u)
};

// Exact propagator of the linear equation; per mode a rotation with
// frequency Lambda = <lambda_n>^alpha >= 1.
PhasePoint free_flow(double t, const PhasePoint& p, double alpha);

// Symmetric kick-rotate-kick splitting for the smoothly truncated flow.  The
// rotation acts on every stored mode, so modes outside E_N evolve freely and
// exactly; the kick is supported in E_N.  Throws BlowupError when the
// nonlinearity overflows on the grid (values are never clamped).
PhasePoint step_strang(double dt, const PhasePoint& p, const SimConfig& cfg,
                       KickMode kick = KickMode::Normal, double t_now = 0.0);

// ceil(T/dt) uniform Strang steps; records the state plus the observable
// series H, J, sobolev_s, sobolev_sigma, Linf every record_every steps (the
// initial and final states are always recorded).
Trajectory evolve(double T, const PhasePoint& p, const SimConfig& cfg, int record_every = 1,
                  KickMode kick = KickMode::Normal);

// Conserved energy of the untruncated equation.
double hamiltonian_H(const PhasePoint& p, const SimConfig& cfg, int M);

// Conserved energy of the truncated flow: the potential sees pi_N u, the
// quadratic part sees the plain coefficients.  Its drift under step_strang
// measures integrator error only.
double hamiltonian_J(const PhasePoint& p, const SimConfig& cfg, int M);

// Energy of the nonlinear remainder (Power potential only).
double energy_E(const PhasePoint& w, double alpha, int k, int M);

// w(t) = u(t) - [free evolution of p0]_u at every recorded time; w(0) = 0
// exactly when the trajectory starts at p0.
std::vector<SpectralField> nonlinear_part(const Trajectory& traj, const PhasePoint& p0,
                                          double alpha);

// Weighted-in-time norms sum_{|l|<=L} (1+|l|)^{-beta} sup_{t in [l,l+1)} of
// the free flow launched from p, the sup sampled at resolution dt_sup.
// Y uses the W^{eps0,r0} norm of the u component, Z the grid sup norm.
double weighted_norm_Y(const PhasePoint& p, const SimConfig& cfg);
double weighted_norm_Z(const PhasePoint& p, const SimConfig& cfg);

void export_trajectory_csv(const Trajectory& traj, const std::string& path);

// FWF1 snapshots (u and v) of every stride-th recorded state.
void export_snapshots(const Trajectory& traj, const std::string& dir, int stride,
                      const std::string& prefix = "snap");

}  // namespace fracwave

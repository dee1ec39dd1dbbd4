#include "fracwave/dynamics.hh"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "fracwave/errors.hh"
#include "fracwave/fwf1.hh"
#include "fracwave/gibbs.hh"
#include "fracwave/ops.hh"
#include "fracwave/transform.hh"

namespace fracwave {

PhasePoint free_flow(double t, const PhasePoint& p, double alpha) {
  PhasePoint out = p;
  const ModeBox box = p.u.box();
  for (long long i = 0; i < box.size(); ++i) {
    const double lam = fractional_multiplier(alpha, box.mode(i));
    const double c = std::cos(t * lam), s = std::sin(t * lam);
    const cplx cu = p.u.coeffs[i], cv = p.v.coeffs[i];
    out.u.coeffs[i] = cu * c + cv * (s / lam);
    out.v.coeffs[i] = -cu * (lam * s) + cv * c;
  }
  return out;
}

// pi_N f(pi_N u) on the collocation grid; also reports the synthesis residue
// and, when asked, how far f(pi_N u) already was from its own projection.
static SpectralField nonlinear_force(const SpectralField& u, const SimConfig& cfg, double t_now,
                                     double* imag_residue, double* inertness) {
  SpectralField up = smooth_project(cfg.N, u);
  GridField g = to_grid(up, cfg.M, imag_residue);
  for (double& x : g.values) {
    x = cfg.potential.f(x);
    if (!std::isfinite(x)) throw BlowupError(t_now);
  }
  SpectralField fk = from_grid(g, u.maxmode);
  SpectralField proj = smooth_project(cfg.N, fk);
  if (inertness) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < fk.coeffs.size(); ++i) {
      num += std::norm(fk.coeffs[i] - proj.coeffs[i]);
      den += std::norm(fk.coeffs[i]);
    }
    *inertness = den > 0 ? std::sqrt(num / den) : 0.0;
  }
  return proj;
}

static void kick_half(PhasePoint& p, double half_dt, const SimConfig& cfg, KickMode kick,
                      double t_now, double* imag_residue) {
  if (kick == KickMode::Zero) return;
  double local = 0;
  SpectralField force = nonlinear_force(p.u, cfg, t_now, &local, nullptr);
  if (imag_residue) *imag_residue = std::max(*imag_residue, local);
  const double sign = (kick == KickMode::Flipped) ? 1.0 : -1.0;
  for (std::size_t i = 0; i < force.coeffs.size(); ++i)
    p.v.coeffs[i] += sign * half_dt * force.coeffs[i];
}

static void rotate_inplace(PhasePoint& p, double t, double alpha) {
  const ModeBox box = p.u.box();
  for (long long i = 0; i < box.size(); ++i) {
    const double lam = fractional_multiplier(alpha, box.mode(i));
    const double c = std::cos(t * lam), s = std::sin(t * lam);
    const cplx cu = p.u.coeffs[i], cv = p.v.coeffs[i];
    p.u.coeffs[i] = cu * c + cv * (s / lam);
    p.v.coeffs[i] = -cu * (lam * s) + cv * c;
  }
}

PhasePoint step_strang(double dt, const PhasePoint& p, const SimConfig& cfg, KickMode kick,
                       double t_now) {
  PhasePoint q = p;
  double residue = 0;
  kick_half(q, dt / 2, cfg, kick, t_now, &residue);
  rotate_inplace(q, dt, cfg.alpha);
  kick_half(q, dt / 2, cfg, kick, t_now + dt, &residue);
  return q;
}

Trajectory evolve(double T, const PhasePoint& p, const SimConfig& cfg, int record_every,
                  KickMode kick) {
  if (!(T > 0)) throw Error("evolve: horizon T must be positive");
  if (record_every < 1) throw Error("evolve: record_every must be >= 1");
  const double dt = cfg.dt;
  if (!(dt > 0)) throw Error("evolve: config carries no positive dt");
  const long nsteps = static_cast<long>(std::ceil(T / dt - 1e-12));

  Trajectory traj;
  auto record = [&](long step, const PhasePoint& state) {
    traj.times.push_back(step * dt);
    traj.states.push_back(state);
    traj.series["H"].push_back(hamiltonian_H(state, cfg, cfg.M));
    traj.series["J"].push_back(hamiltonian_J(state, cfg, cfg.M));
    traj.series["sobolev_s"].push_back(sobolev_norm(cfg.s, state.u));
    traj.series["sobolev_sigma"].push_back(sobolev_norm(cfg.sigma, state.u));
    traj.series["Linf"].push_back(
        grid_lp_norm(std::numeric_limits<double>::infinity(), to_grid(state.u, cfg.M)));
    if (cfg.potential.kind == Potential::Kind::Power) {
      double inert = 0;
      nonlinear_force(state.u, cfg, step * dt, nullptr, &inert);
      traj.pi_inertness = std::max(traj.pi_inertness, inert);
    }
  };

  PhasePoint state = p;
  record(0, state);
  for (long step = 0; step < nsteps; ++step) {
    double residue = 0;
    kick_half(state, dt / 2, cfg, kick, step * dt, &residue);
    rotate_inplace(state, dt, cfg.alpha);
    kick_half(state, dt / 2, cfg, kick, (step + 1) * dt, &residue);
    traj.max_imag_residue = std::max(traj.max_imag_residue, residue);
    if ((step + 1) % record_every == 0 || step + 1 == nsteps) record(step + 1, state);
  }
  return traj;
}

double hamiltonian_H(const PhasePoint& p, const SimConfig& cfg, int M) {
  const double quad =
      0.5 * (std::pow(sobolev_norm(cfg.alpha, p.u), 2) + std::pow(sobolev_norm(0.0, p.v), 2));
  GridField g = to_grid(p.u, M);
  const double cell = std::pow(2.0 * M_PI / M, g.dim);
  double pot = 0;
  for (double x : g.values) pot += cfg.potential.F(x);
  return quad + pot * cell;
}

double hamiltonian_J(const PhasePoint& p, const SimConfig& cfg, int M) {
  // Conserved by the exact truncated flow: the force -pi_N f(pi_N u) is the
  // gradient of the potential term below, and pi_N is self-adjoint, so the
  // cross terms cancel mode by mode (including modes outside E_N, which only
  // rotate).
  const double quad =
      0.5 * (std::pow(sobolev_norm(cfg.alpha, p.u), 2) + std::pow(sobolev_norm(0.0, p.v), 2));
  return quad + potential_F(cfg.N, p.u, cfg.potential, M);
}

double energy_E(const PhasePoint& w, double alpha, int k, int M) {
  const double quad =
      0.5 * (std::pow(sobolev_norm(alpha, w.u), 2) + std::pow(sobolev_norm(0.0, w.v), 2));
  GridField g = to_grid(w.u, M);
  const double cell = std::pow(2.0 * M_PI / M, g.dim);
  double pot = 0;
  for (double x : g.values) {
    double pw = x * x;
    for (int j = 1; j <= k; ++j) pw *= x * x;
    pot += pw;  // x^{2k+2}
  }
  return quad + pot * cell / (2 * k + 2);
}

std::vector<SpectralField> nonlinear_part(const Trajectory& traj, const PhasePoint& p0,
                                          double alpha) {
  std::vector<SpectralField> out;
  out.reserve(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    PhasePoint lin = free_flow(traj.times[i], p0, alpha);
    SpectralField w = traj.states[i].u;
    w -= lin.u;
    out.push_back(std::move(w));
  }
  return out;
}

static double weighted_norm_impl(const PhasePoint& p, const SimConfig& cfg, bool use_linf) {
  if (!(cfg.beta > 1)) throw Error("weighted norm requires beta > 1");
  if (!(cfg.dt_sup > 0)) throw Error("weighted norm requires dt_sup > 0");
  const int samples = std::max(1, static_cast<int>(std::llround(1.0 / cfg.dt_sup)));

  const ModeBox box = p.u.box();
  const double nsq_max = static_cast<double>(box.dim) * box.K * box.K;
  const double lam_max = std::pow(1.0 + nsq_max, cfg.alpha / 2);
  // The free flow oscillates at frequency lam_max/(2 pi) per unit time; the
  // per-window sup needs a few samples per oscillation to be meaningful.
  if (samples < 4.0 * lam_max / (2.0 * M_PI))
    throw SupSamplingError("sup sampling too coarse: 1/dt_sup = " + std::to_string(samples) +
                           " < 4*Lambda_max/(2*pi) = " +
                           std::to_string(4.0 * lam_max / (2.0 * M_PI)) +
                           "; decrease dt_sup");

  std::vector<double> lam(box.size()), mult(box.size());
  for (long long i = 0; i < box.size(); ++i) {
    LatticeMode m = box.mode(i);
    lam[i] = fractional_multiplier(cfg.alpha, m);
    mult[i] = use_linf ? 1.0 : fractional_multiplier(cfg.eps0, m);
  }

  SpectralField ut(p.u.dim, p.u.maxmode);
  const double r = use_linf ? std::numeric_limits<double>::infinity() : cfg.r0;
  double total = 0;
  for (int l = -cfg.window_L; l <= cfg.window_L; ++l) {
    double sup = 0;
    for (int j = 0; j < samples; ++j) {
      const double t = l + j * cfg.dt_sup;
      for (long long i = 0; i < box.size(); ++i) {
        const double c = std::cos(t * lam[i]), s = std::sin(t * lam[i]);
        ut.coeffs[i] = mult[i] * (p.u.coeffs[i] * c + p.v.coeffs[i] * (s / lam[i]));
      }
      sup = std::max(sup, grid_lp_norm(r, to_grid(ut, cfg.M)));
    }
    total += std::pow(1.0 + std::abs(l), -cfg.beta) * sup;
  }
  return total;
}

double weighted_norm_Y(const PhasePoint& p, const SimConfig& cfg) {
  return weighted_norm_impl(p, cfg, false);
}

double weighted_norm_Z(const PhasePoint& p, const SimConfig& cfg) {
  return weighted_norm_impl(p, cfg, true);
}

void export_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::filesystem::path fp(path);
  if (fp.has_parent_path()) std::filesystem::create_directories(fp.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "time,H,J,sobolev_s,sobolev_sigma,Linf\n";
  out.precision(17);
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    out << traj.times[i] << ',' << traj.series.at("H")[i] << ',' << traj.series.at("J")[i] << ','
        << traj.series.at("sobolev_s")[i] << ',' << traj.series.at("sobolev_sigma")[i] << ','
        << traj.series.at("Linf")[i] << '\n';
}

void export_snapshots(const Trajectory& traj, const std::string& dir, int stride,
                      const std::string& prefix) {
  if (stride < 1) throw Error("export_snapshots: stride must be >= 1");
  std::filesystem::create_directories(dir);
  char name[64];
  for (std::size_t i = 0; i < traj.states.size(); i += stride) {
    std::snprintf(name, sizeof(name), "%s_u_%06zu.fwf1", prefix.c_str(), i);
    write_fwf1(traj.states[i].u, (std::filesystem::path(dir) / name).string());
    std::snprintf(name, sizeof(name), "%s_v_%06zu.fwf1", prefix.c_str(), i);
    write_fwf1(traj.states[i].v, (std::filesystem::path(dir) / name).string());
  }
}

}  // namespace fracwave

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracwave/dynamics.hh"
#include "fracwave/profiles.hh"
#include "fracwave/report.hh"
#include "fracwave/sampling.hh"

namespace fracwave {

// Named test functional of the state, used by the invariance experiment.
struct Observable {
  std::string name;
  std::function<double(const PhasePoint&, const SimConfig&)> eval;
};

// Built-ins: u-l2sq, v-l2sq, potential-F, sobolev-s, linf, hamiltonian-H,
// coeff-re:<n0>[,<n1>] and coeff-im:<n0>[,<n1>].
Observable make_observable(const std::string& name);
std::vector<Observable> make_observables(const std::vector<std::string>& names);

// Weighted-ensemble test of Gibbs invariance under the truncated flow.  A
// v-marginal observable is appended automatically if none is supplied, so the
// u- and v-marginals are always tested separately.  kick = Flipped is the
// negative control (members that blow up poison the checkpoint statistics,
// which is the point).
ExperimentReport run_invariance(const SimConfig& cfg, int samples,
                                const std::vector<double>& checkpoints,
                                const std::vector<Observable>& observables,
                                KickMode kick = KickMode::Normal);

// One shared realization, truncated at each N and evolved alongside the
// N_ref run on the same box with the same dt; errors are sup-in-time pair
// Sobolev norms.  The shuffled control replays the comparison against a
// reference started from an independent realization.
ExperimentReport run_convergence(const SimConfig& cfg, const std::vector<int>& N_list, int N_ref,
                                 double T, bool shuffled_control = true);

enum class TailStatistic { YNorm, ZNorm, DthetaLinf, HighFreq };

TailStatistic tail_statistic_from_name(const std::string& name);
std::string tail_statistic_name(TailStatistic stat);

// Monte Carlo tail of the chosen statistic over the R grid (auto-built from
// sample quantiles when empty), with a log-frequency vs R^2 fit.
ExperimentReport run_tail(const SimConfig& cfg, int samples, std::vector<double> R_grid,
                          TailStatistic stat);

// Concentration sequence: data norms, inflation ratios, residuals against
// the closed-form profile, and the linear-regime control (amplitude scaled
// by 1e-6, ratio taken relative to the free flow of the same data).
ExperimentReport run_inflation(const SimConfig& cfg, const std::vector<InflationParams>& params,
                               const PhasePoint* u_base = nullptr, bool linear_control = true);

// Randomized-data energy bound: per sample and per integer horizon tau <= T,
// fits log sup_{t<=tau} E[w] ~ a + b Z^{2k+2} + c tau with Z the running sup
// of |D^{s1} z| over the grid.
ExperimentReport run_energy_bound(const SimConfig& cfg, const PhasePoint& data, double T,
                                  int samples);

// Config-driven dispatch used by the CLI and the acceptance suite; snapshots
// are representative fields the CLI persists as FWF1 next to the report.
struct ExperimentRun {
  ExperimentReport report;
  std::vector<std::pair<std::string, PhasePoint>> snapshots;
};

ExperimentRun run_experiment(const SimConfig& cfg);

// Deterministic base data used by the energy experiment: spectral profile
// <lambda_n>^{-(s+0.51)} for u0 and <lambda_n>^{-(s-alpha+0.51)} for v0.
PhasePoint energy_base_data(const SimConfig& cfg);

}  // namespace fracwave

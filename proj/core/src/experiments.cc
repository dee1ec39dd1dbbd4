#include "fracwave/experiments.hh"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "fracwave/config.hh"
#include "fracwave/errors.hh"
#include "fracwave/gibbs.hh"
#include "fracwave/ops.hh"
#include "fracwave/parallel.hh"
#include "fracwave/transform.hh"

namespace fracwave {

namespace {

double wall_now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string fmt_g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

void embed_config(ExperimentReport& rep, const SimConfig& cfg) {
  rep.config_kv["config"] = serialize_config(cfg);
  rep.config_kv["seed"] = std::to_string(cfg.seed);
}

double weighted_variance(const std::vector<double>& x, const std::vector<double>& w) {
  const double m = weighted_mean(x, w);
  double sw = 0, acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    acc += w[i] * (x[i] - m) * (x[i] - m);
  }
  return acc / sw;
}

PhasePoint sharp_pair(double N, const PhasePoint& p) {
  return {sharp_project(N, p.u), sharp_project(N, p.v)};
}

PhasePoint complement_pair(double N, const PhasePoint& p) {
  return {sharp_complement(N, p.u), sharp_complement(N, p.v)};
}

double pair_diff_norm(double s, double alpha, const PhasePoint& a, const PhasePoint& b) {
  PhasePoint d{a.u - b.u, a.v - b.v};
  return pair_sobolev_norm(s, alpha, d);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sentinel observable value for ensemble members whose flipped-kick run
// overflowed; large enough to shift every empirical distribution, small
// enough that squared moments stay finite.
constexpr double kBlownValue = 1e150;

}  // namespace

Observable make_observable(const std::string& name) {
  Observable obs;
  obs.name = name;
  if (name == "u-l2sq") {
    obs.eval = [](const PhasePoint& p, const SimConfig&) {
      const double n = sobolev_norm(0.0, p.u);
      return n * n;
    };
  } else if (name == "v-l2sq") {
    obs.eval = [](const PhasePoint& p, const SimConfig&) {
      const double n = sobolev_norm(0.0, p.v);
      return n * n;
    };
  } else if (name == "potential-F") {
    obs.eval = [](const PhasePoint& p, const SimConfig& cfg) {
      return potential_F(cfg.N, p.u, cfg.potential, cfg.M);
    };
  } else if (name == "sobolev-s") {
    obs.eval = [](const PhasePoint& p, const SimConfig& cfg) { return sobolev_norm(cfg.s, p.u); };
  } else if (name == "linf") {
    obs.eval = [](const PhasePoint& p, const SimConfig& cfg) {
      return grid_lp_norm(kInf, to_grid(p.u, cfg.M));
    };
  } else if (name == "hamiltonian-H") {
    obs.eval = [](const PhasePoint& p, const SimConfig& cfg) {
      return hamiltonian_H(p, cfg, cfg.M);
    };
  } else if (name.rfind("coeff-re:", 0) == 0 || name.rfind("coeff-im:", 0) == 0) {
    const bool re = name[6] == 'r';
    const std::string spec = name.substr(9);
    LatticeMode m;
    m.n = {0, 0};
    const auto comma = spec.find(',');
    try {
      if (comma == std::string::npos) {
        m.dim = 1;
        m.n[0] = std::stoi(spec);
      } else {
        m.dim = 2;
        m.n[0] = std::stoi(spec.substr(0, comma));
        m.n[1] = std::stoi(spec.substr(comma + 1));
      }
    } catch (const std::exception&) {
      throw Error("observable '" + name + "': cannot parse mode index");
    }
    obs.eval = [re, m](const PhasePoint& p, const SimConfig&) {
      const cplx c = p.u.coeff(m);
      return re ? c.real() : c.imag();
    };
  } else {
    throw Error("unknown observable '" + name +
                "' (known: u-l2sq, v-l2sq, potential-F, sobolev-s, linf, hamiltonian-H, "
                "coeff-re:<n0>[,<n1>], coeff-im:<n0>[,<n1>])");
  }
  return obs;
}

std::vector<Observable> make_observables(const std::vector<std::string>& names) {
  std::vector<Observable> out;
  out.reserve(names.size());
  for (const std::string& n : names) out.push_back(make_observable(n));
  return out;
}

ExperimentReport run_invariance(const SimConfig& cfg0, int samples,
                                const std::vector<double>& checkpoints_in,
                                const std::vector<Observable>& observables_in, KickMode kick) {
  const double t_start = wall_now();
  const SimConfig cfg = cfg0.resolved();
  if (samples < 2) throw Error("run_invariance: need at least 2 samples");
  if (checkpoints_in.empty()) throw Error("run_invariance: need at least one checkpoint");

  std::vector<double> checkpoints = checkpoints_in;
  std::sort(checkpoints.begin(), checkpoints.end());
  if (checkpoints.front() < 0) throw Error("run_invariance: checkpoints must be >= 0");

  // The Gibbs density involves u only; always watch a v functional too so
  // both marginals are tested.
  std::vector<Observable> observables = observables_in;
  bool has_v = false;
  for (const Observable& o : observables) has_v = has_v || o.name.rfind("v-", 0) == 0;
  if (!has_v) observables.push_back(make_observable("v-l2sq"));

  const int nobs = static_cast<int>(observables.size());
  const int ncheck = static_cast<int>(checkpoints.size());

  std::vector<long> cum_steps(ncheck);
  for (int c = 0; c < ncheck; ++c) cum_steps[c] = std::llround(checkpoints[c] / cfg.dt);

  RngStream rng{cfg.seed, 0};
  std::vector<double> weights(samples);
  std::vector<std::vector<double>> obs0(nobs, std::vector<double>(samples));
  std::vector<std::vector<std::vector<double>>> obst(
      ncheck, std::vector<std::vector<double>>(nobs, std::vector<double>(samples)));
  std::vector<int> blown(samples, 0);

  parallel_for(samples, resolve_threads(cfg.threads), [&](long long i) {
    PhasePoint state =
        sample_mu_truncated(cfg, cfg.N, rng, GaussianOverride::None, rngtag::kTryBase + i);
    weights[i] = gibbs_weight(cfg.N, state.u, cfg.potential, cfg.M);
    for (int o = 0; o < nobs; ++o) obs0[o][i] = observables[o].eval(state, cfg);
    long done = 0;
    bool dead = false;
    for (int c = 0; c < ncheck; ++c) {
      if (!dead) {
        try {
          while (done < cum_steps[c]) {
            state = step_strang(cfg.dt, state, cfg, kick, done * cfg.dt);
            ++done;
          }
        } catch (const BlowupError&) {
          if (kick == KickMode::Normal) throw;  // the invariance run itself must stay finite
          dead = true;
          blown[i] = 1;
        }
      }
      for (int o = 0; o < nobs; ++o)
        obst[c][o][i] = dead ? kBlownValue : observables[o].eval(state, cfg);
    }
  });

  const double ess = effective_sample_size(weights);
  if (ess < 100.0) throw DegenerateWeightsError(ess);

  ExperimentReport rep;
  rep.name = kick == KickMode::Normal    ? "invariance"
             : kick == KickMode::Flipped ? "invariance-flipped"
                                         : "invariance-zero";
  embed_config(rep, cfg);
  rep.config_kv["samples"] = std::to_string(samples);
  rep.config_kv["ess"] = fmt_g(ess);
  rep.config_kv["blowups"] =
      std::to_string(std::accumulate(blown.begin(), blown.end(), 0));
  for (int o = 0; o < nobs; ++o)
    rep.config_kv["observable_" + std::to_string(o)] = observables[o].name;

  Table tests;
  tests.columns = {"checkpoint", "observable_index", "ks_stat", "ks_p", "ks_n_eff",
                   "mean0",      "mean_t",           "shift",   "paired_se", "z",
                   "welch_p",    "effect_size"};
  for (int c = 0; c < ncheck; ++c) {
    const double t_actual = cum_steps[c] * cfg.dt;
    for (int o = 0; o < nobs; ++o) {
      const KsResult ks = weighted_ks_test(obs0[o], weights, obst[c][o], weights);
      const double m0 = weighted_mean(obs0[o], weights);
      const double mt = weighted_mean(obst[c][o], weights);
      std::vector<double> diff(samples);
      for (int i = 0; i < samples; ++i) diff[i] = obst[c][o][i] - obs0[o][i];
      const double shift = weighted_mean(diff, weights);
      const double se = weighted_mean_se(diff, weights);
      const double z = se > 0 ? shift / se : 0.0;
      const double welch_p = se > 0 ? 2.0 * (1.0 - normal_cdf(std::abs(z))) : 1.0;
      const double var0 = weighted_variance(obs0[o], weights);
      const double effect = var0 > 0 ? (mt - m0) / std::sqrt(var0) : 0.0;
      tests.rows.push_back({t_actual, double(o), ks.statistic, ks.p, ks.n_eff, m0, mt, shift, se,
                            z, welch_p, effect});

      const std::string label = observables[o].name + "@t=" + fmt_g(t_actual);
      rep.add_verdict("mean_shift[" + label + "]", std::abs(z) < 3.0, std::abs(z), 3.0,
                      "< (|shift| / paired s.e.)");
      rep.add_verdict("ks_p[" + label + "]", ks.p > 0.01, ks.p, 0.01, ">");
    }
  }
  rep.tables["tests"] = std::move(tests);
  rep.add_verdict("ess", ess >= 100.0, ess, 100.0, ">=");

  // Descriptive growth curve of the pair H^sigma norm along one member, with
  // the sqrt(1 + log(1+t)) envelope shape for visual comparison; no verdict.
  if (kick == KickMode::Normal && checkpoints.back() > 0) {
    PhasePoint p0 = sample_mu_truncated(cfg, cfg.N, rng, GaussianOverride::None, rngtag::kTryBase);
    const long total = std::llround(checkpoints.back() / cfg.dt);
    Trajectory traj =
        evolve(checkpoints.back(), p0, cfg, static_cast<int>(std::max(1L, total / 128)));
    Table growth;
    growth.columns = {"time", "pair_sobolev_sigma", "sqrt_log_envelope"};
    for (std::size_t j = 0; j < traj.times.size(); ++j)
      growth.rows.push_back({traj.times[j], pair_sobolev_norm(cfg.sigma, cfg.alpha, traj.states[j]),
                             std::sqrt(1.0 + std::log1p(traj.times[j]))});
    rep.tables["growth_curve"] = std::move(growth);
  }

  rep.wall_seconds = wall_now() - t_start;
  return rep;
}

ExperimentReport run_convergence(const SimConfig& cfg0, const std::vector<int>& N_list, int N_ref,
                                 double T, bool shuffled_control) {
  const double t_start = wall_now();
  const SimConfig cfg = cfg0.resolved();
  if (N_list.empty()) throw Error("run_convergence: empty truncation list");
  for (std::size_t i = 0; i + 1 < N_list.size(); ++i)
    if (N_list[i] >= N_list[i + 1]) throw Error("run_convergence: truncation list must ascend");
  if (N_list.back() > N_ref) throw Error("run_convergence: list must not exceed the reference");
  if (cfg.K < N_ref)
    throw Error("run_convergence: box K = " + std::to_string(cfg.K) +
                " cannot hold the reference truncation N_ref = " + std::to_string(N_ref));
  if (!(T > 0)) throw Error("run_convergence: T must be positive");

  RngStream rng{cfg.seed, 0};
  const PhasePoint omega = sample_mu(cfg, cfg.K, rng, GaussianOverride::None, rngtag::kField);
  const PhasePoint omega_shuffled =
      sample_mu(cfg, cfg.K, rng, GaussianOverride::None, rngtag::kTryBase);

  const long steps = static_cast<long>(std::ceil(T / cfg.dt - 1e-12));
  const int stride = static_cast<int>(std::max(1L, steps / 32));

  auto run_one = [&](const PhasePoint& data, int N) {
    SimConfig c = cfg;
    c.N = N;
    return evolve(T, sharp_pair(N, data), c, stride);
  };

  const Trajectory ref = run_one(omega, N_ref);
  Trajectory ref_shuffled;
  if (shuffled_control) ref_shuffled = run_one(omega_shuffled, N_ref);

  ExperimentReport rep;
  rep.name = "convergence";
  embed_config(rep, cfg);
  rep.config_kv["N_ref"] = std::to_string(N_ref);

  Table tab;
  tab.columns = {"N", "sup_err", "z_tail_data", "sup_err_shuffled"};
  std::vector<double> logN, logerr, logctrl;
  double worst_ratio = 0.0, worst_ztail_ratio = 0.0;
  double prev_err = -1.0, prev_ztail = -1.0;
  for (int N : N_list) {
    const Trajectory traj = run_one(omega, N);
    double err = 0.0, err_ctrl = 0.0;
    for (std::size_t j = 0; j < traj.states.size(); ++j) {
      err = std::max(err, pair_diff_norm(cfg.sigma, cfg.alpha, traj.states[j], ref.states[j]));
      if (shuffled_control)
        err_ctrl = std::max(
            err_ctrl, pair_diff_norm(cfg.sigma, cfg.alpha, traj.states[j], ref_shuffled.states[j]));
    }
    const double ztail = weighted_norm_Z(complement_pair(N, omega), cfg);
    tab.rows.push_back({double(N), err, ztail, err_ctrl});
    if (err > 0) {
      logN.push_back(std::log(double(N)));
      logerr.push_back(std::log(err));
      if (shuffled_control && err_ctrl > 0) logctrl.push_back(std::log(err_ctrl));
    }
    if (prev_err > 0) worst_ratio = std::max(worst_ratio, err / prev_err);
    if (prev_ztail > 0) worst_ztail_ratio = std::max(worst_ztail_ratio, ztail / prev_ztail);
    prev_err = err;
    prev_ztail = ztail;
  }
  rep.tables["convergence"] = std::move(tab);

  rep.add_verdict("errors_strictly_decreasing", worst_ratio < 1.0, worst_ratio, 1.0,
                  "< (max consecutive error ratio)");
  rep.add_verdict("z_tail_decreasing", worst_ztail_ratio < 1.0, worst_ztail_ratio, 1.0,
                  "< (max consecutive Z-tail ratio)");
  if (logN.size() >= 2) {
    const FitResult fit = linear_fit(logN, logerr);
    rep.fits["error_slope"] = fit;
    // The decay rate is observed, not asserted by the theory; the pin lives
    // in this report so the verdict is self-describing.
    rep.add_verdict("loglog_slope", fit.slope < -0.3, fit.slope, -0.3, "<");
  }
  if (shuffled_control && logctrl.size() == logN.size() && logN.size() >= 2) {
    const FitResult fit = linear_fit(logN, logctrl);
    rep.fits["shuffled_control_slope"] = fit;
    rep.add_verdict("shuffled_control_no_decay", fit.slope > -0.1, fit.slope, -0.1, ">");
  }

  rep.wall_seconds = wall_now() - t_start;
  return rep;
}

TailStatistic tail_statistic_from_name(const std::string& name) {
  if (name == "Y-norm") return TailStatistic::YNorm;
  if (name == "Z-norm") return TailStatistic::ZNorm;
  if (name == "Dtheta-Linf") return TailStatistic::DthetaLinf;
  if (name == "highfreq") return TailStatistic::HighFreq;
  throw Error("unknown tail statistic '" + name +
              "' (known: Y-norm, Z-norm, Dtheta-Linf, highfreq)");
}

std::string tail_statistic_name(TailStatistic stat) {
  switch (stat) {
    case TailStatistic::YNorm: return "Y-norm";
    case TailStatistic::ZNorm: return "Z-norm";
    case TailStatistic::DthetaLinf: return "Dtheta-Linf";
    case TailStatistic::HighFreq: return "highfreq";
  }
  return "?";
}

ExperimentReport run_tail(const SimConfig& cfg0, int samples, std::vector<double> R_grid,
                          TailStatistic stat) {
  const double t_start = wall_now();
  const SimConfig cfg = cfg0.resolved();
  if (samples < 100) throw Error("run_tail: need at least 100 samples");

  RngStream rng{cfg.seed, 0};
  std::vector<double> values(samples);
  parallel_for(samples, resolve_threads(cfg.threads), [&](long long i) {
    const PhasePoint p = sample_mu(cfg, cfg.K, rng, GaussianOverride::None, rngtag::kTryBase + i);
    switch (stat) {
      case TailStatistic::YNorm: values[i] = weighted_norm_Y(p, cfg); break;
      case TailStatistic::ZNorm: values[i] = weighted_norm_Z(p, cfg); break;
      case TailStatistic::DthetaLinf:
        values[i] = grid_lp_norm(kInf, to_grid(apply_D(cfg.sigma, p.u), cfg.M));
        break;
      case TailStatistic::HighFreq:
        // N^s-normalized tail norm; the proposition asserts this scale is
        // uniform in N.
        values[i] = std::pow(cfg.N, cfg.s) * weighted_norm_Y(complement_pair(cfg.N, p), cfg);
        break;
    }
  });

  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());

  if (R_grid.empty()) {
    // Deterministic quantile grid over the observed range.
    for (int pct = 5; pct <= 95; pct += 5) {
      const double q = sorted[static_cast<std::size_t>((pct / 100.0) * (samples - 1))];
      if (R_grid.empty() || q > R_grid.back()) R_grid.push_back(q);
    }
  }
  for (std::size_t j = 0; j + 1 < R_grid.size(); ++j)
    if (!(R_grid[j] < R_grid[j + 1])) throw Error("run_tail: R grid must strictly ascend");

  const std::size_t nR = R_grid.size();
  // Fit window: drop the lowest decile of R entries (pre-asymptotic) and any
  // R with fewer than 20 exceedances (too noisy); dropped rows keep
  // used_in_fit = 0 in the table.
  const std::size_t drop_low = nR / 10;
  Table tab;
  tab.columns = {"R", "count", "freq", "log_freq", "used_in_fit"};
  std::vector<double> fit_x, fit_y;
  int dropped_low_count = 0;
  for (std::size_t j = 0; j < nR; ++j) {
    const double R = R_grid[j];
    const auto lb = std::lower_bound(sorted.begin(), sorted.end(), R);
    const long count = static_cast<long>(sorted.end() - lb);
    const double freq = double(count) / samples;
    const double logf = count > 0 ? std::log(freq) : std::nan("");
    bool used = j >= drop_low && count >= 20;
    if (j >= drop_low && count < 20) ++dropped_low_count;
    if (used) {
      fit_x.push_back(R * R);
      fit_y.push_back(logf);
    }
    tab.rows.push_back({R, double(count), freq, logf, used ? 1.0 : 0.0});
  }
  if (fit_x.size() < 3) throw Error("run_tail: fewer than 3 usable R values for the tail fit");

  ExperimentReport rep;
  rep.name = "tail";
  embed_config(rep, cfg);
  rep.config_kv["statistic"] = tail_statistic_name(stat);
  rep.config_kv["samples"] = std::to_string(samples);
  rep.config_kv["dropped_low_count_R"] = std::to_string(dropped_low_count);

  const FitResult fit = linear_fit(fit_x, fit_y);
  rep.fits["sub_gaussian"] = fit;
  rep.add_verdict("slope_negative", fit.slope < 0.0, fit.slope, 0.0, "<");
  rep.add_verdict("fit_r2", fit.r2 >= 0.9, fit.r2, 0.9, ">=");
  rep.tables["tail"] = std::move(tab);

  Table quant;
  quant.columns = {"level", "value"};
  for (int pct = 5; pct <= 95; pct += 5)
    quant.rows.push_back(
        {pct / 100.0, sorted[static_cast<std::size_t>((pct / 100.0) * (samples - 1))]});
  rep.tables["quantiles"] = std::move(quant);

  rep.wall_seconds = wall_now() - t_start;
  return rep;
}

ExperimentReport run_inflation(const SimConfig& cfg0, const std::vector<InflationParams>& params,
                               const PhasePoint* u_base, bool linear_control) {
  const double t_start = wall_now();
  const SimConfig cfg = cfg0.resolved();
  if (params.empty()) throw Error("run_inflation: empty parameter list");
  for (const InflationParams& pr : params) pr.validate();
  for (std::size_t r = 0; r + 1 < params.size(); ++r) {
    if (params[r].n >= params[r + 1].n)
      throw Error("run_inflation: concentration scales must strictly ascend");
    if (params[r].k != params[r + 1].k)
      throw Error("run_inflation: all entries must share the nonlinearity k");
  }

  const OdeProfile profile = solve_profile(params[0].k, 1.0);
  const BumpPhi phi{};

  const std::size_t nrows = params.size();
  std::vector<double> t_rec(nrows), data_norm(nrows), final_norm(nrows), ratio(nrows),
      residual(nrows), control_ratio(nrows, 0.0);

  parallel_for(static_cast<long long>(nrows), resolve_threads(cfg.threads), [&](long long r) {
    const InflationParams& pr = params[r];
    PhasePoint data = build_inflation_data(pr, phi, cfg.K, cfg.M);
    if (u_base) {
      data.u += u_base->u;
      data.v += u_base->v;
    }
    const double tn = pr.t_n();
    const long steps = static_cast<long>(std::ceil(tn / cfg.dt - 1e-12));
    const int stride = static_cast<int>(std::max(1L, steps / 32));

    const Trajectory traj = evolve(tn, data, cfg, stride);
    t_rec[r] = traj.times.back();
    data_norm[r] = sobolev_norm(pr.s, data.u);
    final_norm[r] = sobolev_norm(pr.s, traj.states.back().u);
    ratio[r] = final_norm[r] / data_norm[r];

    double sup = 0.0;
    for (std::size_t j = 0; j < traj.times.size(); ++j) {
      SpectralField res = traj.states[j].u;
      if (u_base) res -= free_flow(traj.times[j], *u_base, cfg.alpha).u;
      res -= from_grid(eval_vn(traj.times[j], pr, phi, profile, cfg.M), cfg.K);
      sup = std::max(sup, sobolev_norm(pr.s, res));
    }
    residual[r] = sup;

    if (linear_control) {
      // Amplitude small enough that the nonlinearity is negligible; the
      // ratio is taken against the free flow of the same data at the same
      // time, which the full flow must reproduce in the linear regime.
      PhasePoint small = data;
      small.u *= 1e-6;
      small.v *= 1e-6;
      const Trajectory tl = evolve(tn, small, cfg, static_cast<int>(std::max(1L, steps)));
      const PhasePoint free_end = free_flow(tl.times.back(), small, cfg.alpha);
      control_ratio[r] =
          sobolev_norm(pr.s, tl.states.back().u) / sobolev_norm(pr.s, free_end.u);
    }
  });

  ExperimentReport rep;
  rep.name = "inflation";
  embed_config(rep, cfg);
  rep.config_kv["profile_period"] = fmt_g(profile.period);

  Table tab;
  tab.columns = {"n",     "t_n",          "t_recorded", "data_norm_Hs", "final_norm_Hs",
                 "ratio", "residual_sup", "control_ratio"};
  double worst_data = 0.0, worst_ratio_gap = kInf, worst_res = 0.0, worst_ctrl = 0.0;
  for (std::size_t r = 0; r < nrows; ++r) {
    tab.rows.push_back({double(params[r].n), params[r].t_n(), t_rec[r], data_norm[r],
                        final_norm[r], ratio[r], residual[r], control_ratio[r]});
    if (r > 0) {
      worst_data = std::max(worst_data, data_norm[r] / data_norm[r - 1]);
      worst_ratio_gap = std::min(worst_ratio_gap, ratio[r] / ratio[r - 1]);
      worst_res = std::max(worst_res, residual[r] / residual[r - 1]);
    }
    if (linear_control) worst_ctrl = std::max(worst_ctrl, std::abs(control_ratio[r] - 1.0));
  }
  rep.tables["inflation"] = std::move(tab);

  rep.add_verdict("data_norm_decreasing", worst_data < 1.0, worst_data, 1.0,
                  "< (max consecutive ratio)");
  rep.add_verdict("ratio_increasing", worst_ratio_gap > 1.0, worst_ratio_gap, 1.0,
                  "> (min consecutive ratio)");
  rep.add_verdict("residual_decreasing", worst_res < 1.0, worst_res, 1.0,
                  "< (max consecutive ratio)");
  if (linear_control)
    rep.add_verdict("linear_control_ratio", worst_ctrl <= 0.1, worst_ctrl, 0.1,
                    "<= (max |ratio - 1|, i.e. ratio in [0.9, 1.1])");

  rep.wall_seconds = wall_now() - t_start;
  return rep;
}

PhasePoint energy_base_data(const SimConfig& cfg0) {
  const SimConfig cfg = cfg0.resolved();
  PhasePoint data(cfg.d, cfg.K);
  const ModeBox box = data.u.box();
  for (long long i = 0; i < box.size(); ++i) {
    const LatticeMode m = box.mode(i);
    data.u.coeffs[i] = fractional_multiplier(-(cfg.s + 0.51), m);
    data.v.coeffs[i] = fractional_multiplier(-(cfg.s - cfg.alpha + 0.51), m);
  }
  return data;
}

ExperimentReport run_energy_bound(const SimConfig& cfg0, const PhasePoint& data, double T,
                                  int samples) {
  const double t_start = wall_now();
  const SimConfig cfg = cfg0.resolved();
  if (cfg.potential.kind != Potential::Kind::Power)
    throw Error("run_energy_bound: requires the power potential");
  const int k = cfg.potential.k;
  const double lo = (k - 1) * cfg.alpha / k;
  if (!(cfg.s > lo && cfg.s < cfg.alpha))
    throw Error("run_energy_bound: requires (k-1) alpha / k < s < alpha");
  if (!(T > 0) || samples < 1) throw Error("run_energy_bound: bad T or sample count");

  const long steps = static_cast<long>(std::ceil(T / cfg.dt - 1e-12));
  const int stride = static_cast<int>(std::max(1L, steps / 64));
  std::vector<double> taus;
  for (int t = 1; t <= static_cast<int>(T + 1e-9); ++t) taus.push_back(t);
  if (taus.empty()) taus.push_back(T);
  const std::size_t ntau = taus.size();

  RngStream rng{cfg.seed, 0};
  std::vector<int> blown(samples, 0);
  std::vector<double> E0(samples, 0.0);
  std::vector<std::vector<double>> supE(samples, std::vector<double>(ntau, 0.0));
  std::vector<std::vector<double>> supZ(samples, std::vector<double>(ntau, 0.0));

  parallel_for(samples, resolve_threads(cfg.threads), [&](long long i) {
    const PhasePoint p0 =
        sample_general(data.u, data.v, rng, GaussianOverride::None, rngtag::kTryBase + i);
    Trajectory traj;
    try {
      traj = evolve(T, p0, cfg, stride);
    } catch (const BlowupError&) {
      blown[i] = 1;
      return;
    }
    double runE = 0.0, runZ = 0.0;
    std::size_t jt = 0;
    for (std::size_t j = 0; j < traj.times.size() && jt < ntau; ++j) {
      const double t = traj.times[j];
      const PhasePoint z = free_flow(t, p0, cfg.alpha);
      PhasePoint w{traj.states[j].u - z.u, traj.states[j].v - z.v};
      const double E = energy_E(w, cfg.alpha, k, cfg.M);
      const double zd = grid_lp_norm(kInf, to_grid(apply_D(cfg.s1, z.u), cfg.M));
      if (j == 0) E0[i] = E;
      runE = std::max(runE, E);
      runZ = std::max(runZ, zd);
      // Close out every horizon this record reaches.
      while (jt < ntau &&
             (j + 1 == traj.times.size() || traj.times[j + 1] > taus[jt] + 1e-9)) {
        supE[i][jt] = runE;
        supZ[i][jt] = runZ;
        ++jt;
      }
    }
    for (; jt < ntau; ++jt) {
      supE[i][jt] = runE;
      supZ[i][jt] = runZ;
    }
  });

  ExperimentReport rep;
  rep.name = "energy";
  embed_config(rep, cfg);
  rep.config_kv["samples"] = std::to_string(samples);

  const int nblown = std::accumulate(blown.begin(), blown.end(), 0);
  double maxE0 = 0.0, maxE = 0.0;
  Table stab;
  stab.columns = {"sample", "E0", "supE_T", "Z_T", "blown"};
  std::vector<double> x1, x2, y;
  for (int i = 0; i < samples; ++i) {
    stab.rows.push_back({double(i), E0[i], supE[i].back(), supZ[i].back(), double(blown[i])});
    if (blown[i]) continue;
    maxE0 = std::max(maxE0, std::abs(E0[i]));
    maxE = std::max(maxE, supE[i].back());
    for (std::size_t jt = 0; jt < ntau; ++jt) {
      if (!(supE[i][jt] > 0)) continue;  // zero data leaves nothing to fit
      double zp = 1.0;
      for (int a = 0; a < 2 * k + 2; ++a) zp *= supZ[i][jt];
      x1.push_back(zp);
      x2.push_back(taus[jt]);
      y.push_back(std::log(supE[i][jt]));
    }
  }
  rep.tables["samples"] = std::move(stab);

  rep.add_verdict("blowups_zero", nblown == 0, double(nblown), 0.0, "==");
  rep.add_verdict("E0_exact_zero", maxE0 == 0.0, maxE0, 0.0, "== (bitwise)");
  rep.add_verdict("E_finite", std::isfinite(maxE), maxE, kInf, "finite");
  if (y.size() >= 3) {
    const AffineFit fit = affine_fit2(x1, x2, y);
    rep.affine_fits["energy_bound"] = fit;
    rep.add_verdict("fit_b_nonneg", fit.b >= 0.0, fit.b, 0.0, ">=");
    rep.add_verdict("fit_c_nonneg", fit.c >= 0.0, fit.c, 0.0, ">=");
    // The law only asserts an affine majorant with some constant, so this is a
    // sanity guard against super-affine growth, not a sharp threshold.  At 50
    // samples the per-sample scatter of log sup E about the fitted plane sits
    // around 2.5 to 4.5; 6 log-units of slack keeps the guard meaningful
    // without tripping on honest randomness.
    rep.add_verdict("fit_residual_bound", fit.max_abs_residual <= 6.0, fit.max_abs_residual, 6.0,
                    "<=");
  }

  rep.wall_seconds = wall_now() - t_start;
  return rep;
}

ExperimentRun run_experiment(const SimConfig& cfg0) {
  const SimConfig cfg = cfg0.resolved();
  ExperimentRun run;
  const std::string& ex = cfg.experiment;
  RngStream rng{cfg.seed, 0};

  if (ex == "invariance" || ex == "invariance-flipped") {
    const KickMode kick = ex == "invariance" ? KickMode::Normal : KickMode::Flipped;
    std::vector<double> checkpoints{cfg.T / 5.0, cfg.T};
    if (checkpoints[0] == checkpoints[1]) checkpoints.pop_back();
    run.report =
        run_invariance(cfg, cfg.samples, checkpoints, make_observables(cfg.observables), kick);
    run.snapshots.emplace_back(
        "member0", sample_mu_truncated(cfg, cfg.N, rng, GaussianOverride::None, rngtag::kTryBase));
  } else if (ex == "convergence") {
    if (cfg.n_list.empty()) throw Error("convergence experiment needs a nonempty n_list");
    const int N_ref = 2 * cfg.n_list.back();
    run.report = run_convergence(cfg, cfg.n_list, N_ref, cfg.T, true);
    run.snapshots.emplace_back("omega",
                               sample_mu(cfg, cfg.K, rng, GaussianOverride::None, rngtag::kField));
  } else if (ex == "tail") {
    const TailStatistic stat =
        tail_statistic_from_name(cfg.observables.empty() ? "Y-norm" : cfg.observables.front());
    run.report = run_tail(cfg, cfg.samples, cfg.R_grid, stat);
    run.snapshots.emplace_back(
        "sample0", sample_mu(cfg, cfg.K, rng, GaussianOverride::None, rngtag::kTryBase));
  } else if (ex == "inflation") {
    if (cfg.potential.kind != Potential::Kind::Power)
      throw Error("inflation experiment needs the power potential");
    std::vector<InflationParams> params;
    for (int n : cfg.n_list)
      params.push_back(
          InflationParams{n, cfg.s, cfg.d, cfg.potential.k, cfg.alpha, cfg.delta1, cfg.delta2});
    run.report = run_inflation(cfg, params, nullptr, true);
    run.snapshots.emplace_back("data_n" + std::to_string(params.front().n),
                               build_inflation_data(params.front(), BumpPhi{}, cfg.K, cfg.M));
  } else if (ex == "energy") {
    const PhasePoint data = energy_base_data(cfg);
    run.report = run_energy_bound(cfg, data, cfg.T, cfg.samples);
    run.snapshots.emplace_back("base_data", data);
  } else {
    throw Error("unknown experiment '" + ex +
                "' (known: invariance, invariance-flipped, convergence, tail, inflation, "
                "energy)");
  }
  return run;
}

}  // namespace fracwave

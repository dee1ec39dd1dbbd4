#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "fracwave/errors.hh"
#include "fracwave/ops.hh"
#include "fracwave/profiles.hh"

using namespace fracwave;

namespace {

// independently frozen periods of V'' + V^{2k+1} = 0 through (1, 0)
// (k = 1 in closed form: sqrt(2) Gamma(1/4) Gamma(1/2) / Gamma(3/4))
constexpr double kPeriodK1 = 7.4162987092054876;
constexpr double kPeriodK2 = 8.4130926319527255;
constexpr double kPeriodK3 = 9.3087405697461549;

InflationParams small_params() {
  InflationParams p;
  p.n = 2;
  p.s = 0.15;
  p.d = 1;
  p.k = 1;
  p.alpha = 0.25;
  p.delta1 = 0.7;
  p.delta2 = 0.8;
  return p;
}

}  // namespace

TEST_SUITE("profiles") {

TEST_CASE("harmonic limit k = 0 reproduces the cosine") {
  const OdeProfile prof = solve_profile(0, 1.0);
  CHECK(std::abs(prof.period - 2.0 * M_PI) < 1e-8);
  CHECK(period_quadrature(0, 1.0) == doctest::Approx(2.0 * M_PI).epsilon(1e-10));
  for (double t : {0.0, 0.3, 1.7, 4.0, 6.1}) {
    CHECK(std::abs(prof.eval_V(t) - std::cos(t)) < 1e-7);
    CHECK(std::abs(prof.eval_Vp(t) + std::sin(t)) < 1e-7);
  }
}

TEST_CASE("periods match the quadrature oracle and frozen values") {
  const double tol = 1e-6;
  CHECK(std::abs(period_quadrature(1, 1.0) - kPeriodK1) < 1e-10);
  CHECK(std::abs(period_quadrature(2, 1.0) - kPeriodK2) < 1e-10);
  CHECK(std::abs(period_quadrature(3, 1.0) - kPeriodK3) < 1e-10);
  CHECK(std::abs(solve_profile(1, 1.0).period - kPeriodK1) < tol);
  CHECK(std::abs(solve_profile(2, 1.0).period - kPeriodK2) < tol);
  CHECK(std::abs(solve_profile(3, 1.0).period - kPeriodK3) < tol);
}

TEST_CASE("period scales like V0^{-k}") {
  const OdeProfile unit = solve_profile(2, 1.0);
  const OdeProfile big = solve_profile(2, 2.0);
  CHECK(std::abs(big.period - unit.period / 4.0) < 1e-8);
  CHECK(period_quadrature(2, 2.0) == doctest::Approx(period_quadrature(2, 1.0) / 4.0));
}

TEST_CASE("orbit structure: symmetry, closure, first integral") {
  const OdeProfile prof = solve_profile(1, 1.0);
  CHECK(prof.first_integral == doctest::Approx(0.5).epsilon(1e-14));  // 2 * 1/4

  const double vmin = *std::min_element(prof.tab_V.begin(), prof.tab_V.end());
  CHECK(std::abs(vmin + 1.0) < 1e-6);

  CHECK(std::abs(prof.eval_V(prof.period) - 1.0) < 1e-8);
  CHECK(std::abs(prof.eval_Vp(prof.period)) < 1e-8);
  CHECK(prof.eval_V(0.0) == 1.0);

  double worst = 0;
  for (std::size_t i = 0; i < prof.tab_V.size(); i += 7) {
    const double v = prof.tab_V[i], vp = prof.tab_Vp[i];
    worst = std::max(worst, std::abs(vp * vp + 0.5 * v * v * v * v - 0.5));
  }
  CHECK(worst < 1e-8);

  for (double t : {0.2, 1.9, 5.5})
    CHECK(std::abs(prof.eval_V(t + prof.period) - prof.eval_V(t)) < 1e-9);
}

TEST_CASE("coarse integration refuses instead of tabulating garbage") {
  CHECK_THROWS_AS(solve_profile(1, 1.0, 0.01), OdeNoReturnError);
  try {
    solve_profile(1, 1.0, 0.01);
  } catch (const OdeNoReturnError& e) {
    CHECK(std::string(e.what()).find("decrease dt_ode") != std::string::npos);
  }
  CHECK_THROWS_AS(solve_profile(1, -1.0), Error);
}

TEST_CASE("profile table export") {
  const OdeProfile prof = solve_profile(0, 1.0);
  const std::string path = "profile_export_test.csv";
  export_profile_csv(prof, path);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,V,Vp");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) rows += !line.empty();
  CHECK(rows == prof.tab_V.size());
  in.close();
  std::remove(path.c_str());
}

TEST_CASE("bump: peak, support, dilation, domain guard") {
  BumpPhi phi;  // center (pi, pi), radius 1
  CHECK(phi({M_PI, 0.0}, 1) == 1.0);
  CHECK(phi({M_PI + 0.5, 0.0}, 1) > 0.0);
  CHECK(phi({M_PI + 0.5, 0.0}, 1) < 1.0);
  CHECK(phi({M_PI + 1.0, 0.0}, 1) == 0.0);
  CHECK(phi({M_PI - 1.3, 0.0}, 1) == 0.0);
  CHECK(phi({0.0, 0.0}, 1) == 0.0);

  // the n-fold dilation shrinks the support to radius / n around the center
  CHECK(phi({M_PI + 0.6, 0.0}, 1, 2) == 0.0);
  CHECK(phi({M_PI + 0.3, 0.0}, 1, 2) == doctest::Approx(phi({M_PI + 0.6, 0.0}, 1)));

  // 2d support is the ellipse |y|/r < 1 in the wrapped metric
  CHECK(phi({M_PI, M_PI}, 2) == 1.0);
  CHECK(phi({M_PI + 0.9, M_PI + 0.9}, 2) == 0.0);

  BumpPhi wide;
  wide.radius = 3.5;  // > pi: support would wrap around the torus
  CHECK_THROWS_AS(wide({M_PI, 0.0}, 1), Error);

  CHECK(bump_bandwidth(1.0) == 32);
  CHECK(bump_bandwidth(0.5) == 64);
  CHECK(bump_bandwidth(2.0) == 16);
}

TEST_CASE("concentration parameter formulas and windows") {
  InflationParams p = small_params();
  p.n = 16;
  p.k = 2;
  p.alpha = 0.6;  // upper = 1/2 - 0.3 = 0.2 > s = 0.15
  const double logn = std::log(16.0);
  CHECK(p.kappa_n() == doctest::Approx(std::pow(logn, -0.7)).epsilon(1e-15));
  CHECK(p.amplitude() ==
        doctest::Approx(std::pow(logn, -0.7) * std::pow(16.0, 0.35)).epsilon(1e-15));
  CHECK(p.lambda_n() == doctest::Approx(std::pow(p.amplitude(), 2)).epsilon(1e-15));
  CHECK(p.t_n() ==
        doctest::Approx(std::pow(std::pow(logn, 0.8) * std::pow(16.0, -0.35), 2)).epsilon(1e-15));
  CHECK_NOTHROW(p.validate());

  InflationParams bad = p;
  bad.s = 0.25;  // at or past d/2 - alpha/k
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = p;
  bad.n = 1;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = p;
  bad.delta2 = bad.delta1;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = p;
  bad.d = 3;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("inflation data: peak height, rest state, resolution guard") {
  const InflationParams params = small_params();
  const BumpPhi phi;
  const int K = 64, M = 2 * K + 2;  // M even, so the grid hits the peak at pi
  const PhasePoint p = build_inflation_data(params, phi, K, M);
  CHECK(p.v.max_abs_coeff() == 0.0);

  // The box keeps n * bump_bandwidth modes, which carries the bump up to the
  // documented relative spectral tail (~1e-3); the realized peak sits that
  // close to the nominal amplitude, not machine-exact.
  const GridField g = to_grid(p.u, M);
  double linf = 0;
  for (double v : g.values) linf = std::max(linf, std::abs(v));
  CHECK(linf == doctest::Approx(params.amplitude()).epsilon(1e-3));

  // H^s mass decreases along the concentration sequence (log-decay kappa_n)
  InflationParams p4 = params;
  p4.n = 4;
  const PhasePoint q = build_inflation_data(p4, phi, 2 * K, 4 * K + 2);
  CHECK(sobolev_norm(params.s, q.u) < sobolev_norm(params.s, p.u));

  CHECK_THROWS_AS(build_inflation_data(params, phi, K / 2, M), ResolutionError);
  try {
    build_inflation_data(params, phi, K / 2, M);
  } catch (const ResolutionError& e) {
    CHECK(std::string(e.what()).find("needs modes up to 64") != std::string::npos);
  }
}

TEST_CASE("closed-form reference solves the concentrated equation") {
  const InflationParams params = small_params();
  const BumpPhi phi;
  const OdeProfile prof = solve_profile(params.k, 1.0);
  const int M = 130;

  // t = 0 reproduces the data grid exactly
  const GridField g0 = eval_vn(0.0, params, phi, prof, M);
  for (int j = 0; j < M; ++j) {
    const double a = params.amplitude() * phi({2.0 * M_PI * j / M, 0.0}, 1, params.n);
    CHECK(g0.values[j] == a);
  }

  // zero outside the bump support for all times
  const GridField gt = eval_vn(0.8, params, phi, prof, M);
  CHECK(gt.values[0] == 0.0);
  CHECK(gt.values[M / 4] == 0.0);

  // d^2v/dt^2 + v^3 = 0 pointwise: the centered difference residual is
  // O(dt^2), so halving dt divides it by about 4
  const int j = M / 2;  // x = pi, where the amplitude peaks
  const double t = 0.9 / params.amplitude();
  double res[2];
  for (int lev = 0; lev < 2; ++lev) {
    const double dt = 0.1 / (1 << lev);
    const double vm = eval_vn(t - dt, params, phi, prof, M).values[j];
    const double v0 = eval_vn(t, params, phi, prof, M).values[j];
    const double vp = eval_vn(t + dt, params, phi, prof, M).values[j];
    res[lev] = (vp - 2.0 * v0 + vm) / (dt * dt) + v0 * v0 * v0;
  }
  const double ratio = res[0] / res[1];
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);

  // profile must match the requested nonlinearity
  const OdeProfile wrong = solve_profile(params.k + 1, 1.0);
  CHECK_THROWS_AS(eval_vn(0.1, params, phi, wrong, M), Error);
}

}  // TEST_SUITE

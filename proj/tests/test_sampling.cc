#include "doctest.h"

#include <cmath>
#include <vector>

#include "fracwave/ops.hh"
#include "fracwave/sampling.hh"

using namespace fracwave;

namespace {

double l2sq(const SpectralField& f) {
  const double n = sobolev_norm(0.0, f);
  return n * n;
}

SimConfig base_cfg() {
  SimConfig cfg;
  cfg.d = 1;
  cfg.alpha = 1.0;
  cfg.K = 2;
  return cfg.resolved();
}

}  // namespace

TEST_SUITE("sampling") {

TEST_CASE("mu marginals match the closed-form second moments") {
  // d=1, alpha=1, modes |n| <= 2:
  //   E|u|_{L2}^2 = sum <lambda_n>^{-2} = 1 + 2/2 + 2/5 = 2.4
  //   E|v|_{L2}^2 = mode count = 5
  const SimConfig cfg = base_cfg();
  const int n = 100000;
  double su = 0, su2 = 0, sv = 0, sv2 = 0;
  for (int i = 0; i < n; ++i) {
    const PhasePoint p = sample_mu(cfg, 2, RngStream{9001, uint64_t(i)});
    const double a = l2sq(p.u), b = l2sq(p.v);
    su += a;
    su2 += a * a;
    sv += b;
    sv2 += b * b;
  }
  const double mu = su / n, se_u = std::sqrt((su2 / n - mu * mu) / n);
  const double mv = sv / n, se_v = std::sqrt((sv2 / n - mv * mv) / n);
  CHECK(std::abs(mu - 2.4) < 3.0 * se_u);
  CHECK(std::abs(mv - 5.0) < 3.0 * se_v);
}

TEST_CASE("per-mode variance follows the spectral law") {
  // real and imaginary parts of c_n each carry half of <lambda_n>^{-2 alpha}
  const SimConfig cfg = base_cfg();
  const int n = 100000;
  std::vector<double> vre(3, 0.0), vim(3, 0.0);
  for (int i = 0; i < n; ++i) {
    const PhasePoint p = sample_mu(cfg, 2, RngStream{7171, uint64_t(i)});
    for (int m = 0; m <= 2; ++m) {
      const cplx c = p.u.coeff({1, {m, 0}});
      vre[m] += c.real() * c.real();
      vim[m] += c.imag() * c.imag();
    }
  }
  const double band = 4.0 * std::sqrt(2.0 / n);  // 4 s.e. of a variance ratio
  for (int m = 0; m <= 2; ++m) {
    const double lam2 = 1.0 + m * m;
    const double target = (m == 0) ? 1.0 / lam2 : 0.5 / lam2;
    CHECK(std::abs(vre[m] / n / target - 1.0) < band);
    if (m > 0) CHECK(std::abs(vim[m] / n / target - 1.0) < band);
    if (m == 0) CHECK(vim[m] == 0.0);  // zero mode of a real field is real
  }
}

TEST_CASE("gaussian override hooks") {
  const SimConfig cfg = base_cfg();
  const PhasePoint z = sample_mu(cfg, 4, RngStream{1, 2}, GaussianOverride::Zero);
  CHECK(z.u.max_abs_coeff() == 0.0);
  CHECK(z.v.max_abs_coeff() == 0.0);

  SpectralField u0(1, 3), v0(1, 3);
  u0.set_coeff({1, {1, 0}}, {0.4, -0.2});
  v0.set_coeff({1, {2, 0}}, {-1.0, 0.3});
  const PhasePoint fixed = sample_general(u0, v0, RngStream{1, 2}, GaussianOverride::One);
  CHECK(fixed.u.coeffs == u0.coeffs);
  CHECK(fixed.v.coeffs == v0.coeffs);

  SpectralField zero(1, 3);
  const PhasePoint z2 = sample_general(zero, zero, RngStream{3, 4});
  CHECK(z2.u.max_abs_coeff() == 0.0);
}

TEST_CASE("reproducibility is bitwise in the stream coordinates") {
  const SimConfig cfg = base_cfg();
  const PhasePoint a = sample_mu(cfg, 6, RngStream{42, 17});
  const PhasePoint b = sample_mu(cfg, 6, RngStream{42, 17});
  CHECK(a.u.coeffs == b.u.coeffs);
  CHECK(a.v.coeffs == b.v.coeffs);
  const PhasePoint c = sample_mu(cfg, 6, RngStream{42, 18});
  CHECK(a.u.coeffs != c.u.coeffs);
}

TEST_CASE("truncation couples exactly to the sharp projector") {
  SimConfig cfg = base_cfg();
  cfg.K = 8;
  const RngStream rng{314, 3};
  const PhasePoint full = sample_mu(cfg, 8, rng);
  const PhasePoint trunc = sample_mu_truncated(cfg, 5.0, rng);
  CHECK(trunc.u.coeffs == sharp_project(5.0, full.u).coeffs);
  CHECK(trunc.v.coeffs == sharp_project(5.0, full.v).coeffs);

  // N = 0 keeps only the constant mode random
  const PhasePoint p0 = sample_mu_truncated(cfg, 0.0, rng);
  for (int m = 1; m <= 8; ++m) CHECK(p0.u.coeff({1, {m, 0}}) == cplx{0.0, 0.0});
  CHECK(p0.u.coeff({1, {0, 0}}) != cplx{0.0, 0.0});
}

TEST_CASE("nested truncations never rewrite low modes") {
  SimConfig cfg = base_cfg();
  cfg.K = 8;
  const RngStream rng{2025, 11};
  const PhasePoint p2 = sample_mu_truncated(cfg, 2.0, rng);
  const PhasePoint p5 = sample_mu_truncated(cfg, 5.0, rng);
  for (int m = -2; m <= 2; ++m)
    CHECK(p2.u.coeff({1, {m, 0}}) == p5.u.coeff({1, {m, 0}}));
}

TEST_CASE("sample_general preserves the L2 second moment") {
  SpectralField u0(1, 6), v0(1, 6);
  for (int m = 0; m <= 6; ++m)
    u0.set_coeff({1, {m, 0}}, {std::pow(1.0 + m * m, -1.0), m ? 0.3 / (1 + m) : 0.0});
  const double target = l2sq(u0);
  const int n = 20000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const PhasePoint p = sample_general(u0, v0, RngStream{606, uint64_t(i)});
    const double a = l2sq(p.u);
    s += a;
    s2 += a * a;
  }
  const double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / n);
  CHECK(std::abs(mean - target) < 3.0 * se);
}

TEST_CASE("ensemble validation") {
  Ensemble e;
  e.config = base_cfg();
  e.members.emplace_back(1, 2);
  e.seeds = {0};
  CHECK_NOTHROW(e.validate());

  e.weights = {0.5};
  CHECK_NOTHROW(e.validate());
  e.weights = {-1.0};
  CHECK_THROWS_AS(e.validate(), Error);
  e.weights = {0.5, 0.5};  // length mismatch
  CHECK_THROWS_AS(e.validate(), Error);
  e.weights.clear();
  e.seeds = {0, 1};
  CHECK_THROWS_AS(e.validate(), Error);
}

}  // TEST_SUITE

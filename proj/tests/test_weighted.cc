#include "doctest.h"

#include <cmath>
#include <string>

#include "fracwave/dynamics.hh"
#include "fracwave/errors.hh"
#include "fracwave/sampling.hh"

using namespace fracwave;

namespace {

SimConfig weighted_cfg(int K) {
  SimConfig cfg;
  cfg.d = 1;
  cfg.alpha = 1.0;
  cfg.potential = {Potential::Kind::Power, 1};
  cfg.N = 4;
  cfg.K = K;
  return cfg.resolved();
}

}  // namespace

TEST_SUITE("weighted") {

TEST_CASE("zero data has zero norm") {
  const SimConfig cfg = weighted_cfg(4);
  const PhasePoint zero(1, 4);
  CHECK(weighted_norm_Y(zero, cfg) == 0.0);
  CHECK(weighted_norm_Z(zero, cfg) == 0.0);
}

TEST_CASE("constant data with a single window is exact") {
  // u = c phi_0, v = 0 oscillates as cos(t); the t = 0 sample of window 0
  // realizes the sup, so Y and Z reduce to the L^{r0} and Linf norms of the
  // constant c / sqrt(2 pi).
  SimConfig cfg = weighted_cfg(4);
  cfg.window_L = 0;
  const double c = 0.75;
  PhasePoint p(1, 4);
  p.u.set_coeff({1, {0, 0}}, {c * std::sqrt(2.0 * M_PI), 0.0});  // grid value c
  CHECK(weighted_norm_Y(p, cfg) ==
        doctest::Approx(c * std::pow(2.0 * M_PI, 1.0 / cfg.r0)).epsilon(1e-13));
  CHECK(weighted_norm_Z(p, cfg) == doctest::Approx(c).epsilon(1e-13));
}

TEST_CASE("positive homogeneity") {
  const SimConfig cfg = weighted_cfg(6);
  PhasePoint p = sample_mu(cfg, 6, RngStream{31, 0});
  const double y1 = weighted_norm_Y(p, cfg);
  const double z1 = weighted_norm_Z(p, cfg);
  p.u *= 3.0;
  p.v *= 3.0;
  CHECK(weighted_norm_Y(p, cfg) == doctest::Approx(3.0 * y1).epsilon(1e-13));
  CHECK(weighted_norm_Z(p, cfg) == doctest::Approx(3.0 * z1).epsilon(1e-13));
  CHECK(y1 > 0.0);
  CHECK(z1 > 0.0);
}

TEST_CASE("the time weights majorize the whole sum") {
  // Every per-window sup is bounded by the coefficient-sum estimate
  //   |<grad>^{eps0} u_t|_{r0} <= (2 pi)^{1/r0 - 1/2} sum <n>^{eps0}(|u_n| + |v_n|/lambda_n),
  // so Y <= that bound times sum (1+|l|)^{-beta}.
  const SimConfig cfg = weighted_cfg(6);
  const PhasePoint p = sample_mu(cfg, 6, RngStream{32, 0});
  const ModeBox box = p.u.box();
  double coeff_sum = 0;
  for (long long i = 0; i < box.size(); ++i) {
    const LatticeMode m = box.mode(i);
    coeff_sum += fractional_multiplier(cfg.eps0, m) *
                 (std::abs(p.u.coeffs[i]) +
                  std::abs(p.v.coeffs[i]) / fractional_multiplier(cfg.alpha, m));
  }
  double weight_sum = 0;
  for (int l = -cfg.window_L; l <= cfg.window_L; ++l)
    weight_sum += std::pow(1.0 + std::abs(l), -cfg.beta);
  const double bound =
      std::pow(2.0 * M_PI, 1.0 / cfg.r0 - 0.5) * coeff_sum * weight_sum;
  const double y = weighted_norm_Y(p, cfg);
  CHECK(y > 0.0);
  CHECK(y <= bound * (1 + 1e-12));

  // enlarging the window can only add nonnegative terms
  SimConfig wide = cfg;
  wide.window_L = 2 * cfg.window_L;
  CHECK(weighted_norm_Y(p, wide) >= y - 1e-15);
}

TEST_CASE("velocity-only data still registers") {
  const SimConfig cfg = weighted_cfg(4);
  PhasePoint p(1, 4);
  p.v.set_coeff({1, {1, 0}}, {0.0, 0.4});
  CHECK(weighted_norm_Y(p, cfg) > 0.0);
  CHECK(weighted_norm_Z(p, cfg) > 0.0);
}

TEST_CASE("coarse sup sampling is refused, not silently degraded") {
  // 1/dt_sup must stay above 4 Lambda_max / (2 pi); at alpha = 1, K = 16 the
  // threshold is about 10.2 samples per window
  SimConfig cfg = weighted_cfg(16);
  cfg.dt_sup = 0.1;  // 10 samples, just under the line
  const PhasePoint p = sample_mu(cfg, 16, RngStream{33, 0});
  CHECK_THROWS_AS((void)weighted_norm_Y(p, cfg), SupSamplingError);
  CHECK_THROWS_AS((void)weighted_norm_Z(p, cfg), SupSamplingError);
  try {
    (void)weighted_norm_Y(p, cfg);
  } catch (const SupSamplingError& e) {
    CHECK(std::string(e.what()).find("decrease dt_sup") != std::string::npos);
  }

  cfg.dt_sup = 1.0 / 16;  // 16 samples clears it
  CHECK(weighted_norm_Y(p, cfg) > 0.0);
}

}  // TEST_SUITE

#include "doctest.h"

#include <cmath>
#include <vector>

#include "fracwave/errors.hh"
#include "fracwave/stats.hh"

using namespace fracwave;

TEST_SUITE("stats") {

TEST_CASE("normal cdf anchors") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-9));
  CHECK(normal_cdf(-1.959963984540054) == doctest::Approx(0.025).epsilon(1e-9));
  CHECK(normal_cdf(8.0) > 1.0 - 1e-14);
  CHECK(normal_cdf(-8.0) < 1e-14);
}

TEST_CASE("kolmogorov survival function") {
  // frozen against a 30-digit evaluation of the theta-series
  CHECK(std::abs(kolmogorov_prob(0.5) - 0.96394524366487509) < 1e-6);
  CHECK(std::abs(kolmogorov_prob(1.0) - 0.26999967167735452) < 1e-6);
  CHECK(std::abs(kolmogorov_prob(2.0) - 0.00067092525577969535) < 1e-8);
  CHECK(kolmogorov_prob(0.1) == 1.0);
  CHECK(kolmogorov_prob(7.0) == 0.0);
  // monotone decreasing across the regime seams
  double prev = 1.0;
  for (double z = 0.15; z < 7.2; z += 0.05) {
    const double q = kolmogorov_prob(z);
    CHECK(q <= prev + 1e-15);
    CHECK(q >= 0.0);
    CHECK(q <= 1.0);
    prev = q;
  }
}

TEST_CASE("linear fit recovers an exact line") {
  const std::vector<double> x{0, 1, 2, 3, 4};
  std::vector<double> y;
  for (double v : x) y.push_back(3.5 - 2.0 * v);
  const FitResult fit = linear_fit(x, y);
  CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(fit.intercept == doctest::Approx(3.5).epsilon(1e-13));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-13));

  // r2 of pure noise about a flat line is tiny
  const std::vector<double> flat{1.0, -1.0, 1.0, -1.0, 1.0};
  CHECK(linear_fit(x, flat).r2 < 0.5);
}

TEST_CASE("two-regressor fit recovers an exact plane") {
  std::vector<double> x1, x2, y;
  for (int i = 0; i < 7; ++i) {
    x1.push_back(i * 0.5);
    x2.push_back(std::sqrt(1.0 + i));
    y.push_back(1.25 + 0.75 * x1.back() - 0.5 * x2.back());
  }
  const AffineFit fit = affine_fit2(x1, x2, y);
  CHECK(fit.a == doctest::Approx(1.25).epsilon(1e-10));
  CHECK(fit.b == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(fit.c == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(fit.max_abs_residual < 1e-10);
}

TEST_CASE("weighted mean, its standard error, and the kish size") {
  const std::vector<double> x{1.0, 3.0};
  const std::vector<double> w{1.0, 3.0};
  CHECK(weighted_mean(x, w) == doctest::Approx(2.5).epsilon(1e-15));
  // sqrt(sum (w_i/W)^2 (x_i - m)^2) = sqrt(9/64 + 9/256 * 1/4) ... = sqrt(0.28125)
  CHECK(weighted_mean_se(x, w) == doctest::Approx(std::sqrt(0.28125)).epsilon(1e-13));

  CHECK(effective_sample_size({1, 1, 1, 1}) == doctest::Approx(4.0));
  CHECK(effective_sample_size({2, 1}) == doctest::Approx(1.8));
  CHECK(effective_sample_size({1, 0}) == doctest::Approx(1.0));
}

TEST_CASE("ks test on weighted samples") {
  const std::vector<double> a{1, 2, 3, 4, 5, 6};
  const std::vector<double> ones(6, 1.0);
  const KsResult same = weighted_ks_test(a, ones, a, ones);
  CHECK(same.statistic == 0.0);
  CHECK(same.p == 1.0);

  const std::vector<double> lo{1, 2, 3}, hi{4, 5, 6}, w3(3, 1.0);
  const KsResult disjoint = weighted_ks_test(lo, w3, hi, w3);
  CHECK(disjoint.statistic == doctest::Approx(1.0));
  CHECK(disjoint.n_eff == doctest::Approx(1.5));
  CHECK(disjoint.p < 0.25);

  // weights replicate counts: {1,1,2} ~ {1 w=2, 2 w=1}
  const KsResult rep = weighted_ks_test({1, 1, 2}, w3, {1, 2}, {2.0, 1.0});
  CHECK(rep.statistic < 1e-12);
}

TEST_CASE("welch test from summary statistics") {
  const WelchResult nil = welch_test(1.0, 0.5, 1.0, 0.5);
  CHECK(nil.t == 0.0);
  CHECK(nil.p == 1.0);

  const WelchResult far = welch_test(0.0, 0.1, 1.0, 0.1);
  CHECK(std::abs(far.t) == doctest::Approx(1.0 / std::sqrt(0.02)).epsilon(1e-12));
  CHECK(far.p < 1e-10);

  const WelchResult sym = welch_test(1.0, 0.1, 0.0, 0.1);
  CHECK(sym.p == doctest::Approx(far.p));
}

TEST_CASE("bootstrap standard error") {
  // unweighted iid sample: se should approach sigma / sqrt(n)
  RngStream rng{77, 0};
  const int n = 4000;
  std::vector<double> x(n), w(n, 1.0);
  for (int i = 0; i < n; ++i) x[i] = rng.gaussian(0, i);
  const double se = bootstrap_se(x, w, 1000, RngStream{78, 0});
  const double ref = 1.0 / std::sqrt(double(n));
  CHECK(se > 0.8 * ref);
  CHECK(se < 1.2 * ref);

  // counter-based: same inputs give the same answer bit for bit
  CHECK(bootstrap_se(x, w, 1000, RngStream{78, 0}) == se);
  CHECK(bootstrap_se(x, w, 1000, RngStream{78, 0}, 5) != se);
}

TEST_CASE("mann-kendall trend probe") {
  std::vector<double> dec, inc;
  for (int i = 0; i < 12; ++i) {
    dec.push_back(10.0 - i);
    inc.push_back(double(i));
  }
  CHECK(mann_kendall_decreasing_p(dec) < 1e-4);
  CHECK(mann_kendall_decreasing_p(inc) > 0.999);

  // ties are allowed and keep the p-value in range
  const double tied = mann_kendall_decreasing_p({3, 3, 2, 2, 1, 1});
  CHECK(tied > 0.0);
  CHECK(tied < 0.05);
}

}  // TEST_SUITE

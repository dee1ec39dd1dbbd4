#pragma once

#include <cstddef>
#include <vector>

#include "fracwave/rng.hh"

namespace fracwave {

double normal_cdf(double z);

// Least squares y ~ intercept + slope * x.
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

FitResult linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Least squares y ~ a + b * x1 + c * x2 via the 3x3 normal equations.
struct AffineFit {
  double a = 0.0, b = 0.0, c = 0.0;
  double max_abs_residual = 0.0;
};

AffineFit affine_fit2(const std::vector<double>& x1, const std::vector<double>& x2,
                      const std::vector<double>& y);

double weighted_mean(const std::vector<double>& x, const std::vector<double>& w);

// Standard error of the weighted mean (normalized-weights linearization).
double weighted_mean_se(const std::vector<double>& x, const std::vector<double>& w);

// Kish effective sample size (sum w)^2 / sum w^2.
double effective_sample_size(const std::vector<double>& w);

// Survival function of the Kolmogorov distribution, Q(z) = P(K > z).
double kolmogorov_prob(double z);

struct KsResult {
  double statistic = 0.0;  // sup |F1 - F2| over weighted ECDFs
  double p = 1.0;
  double n_eff = 0.0;
};

KsResult weighted_ks_test(const std::vector<double>& x1, const std::vector<double>& w1,
                          const std::vector<double>& x2, const std::vector<double>& w2);

struct WelchResult {
  double t = 0.0;
  double p = 1.0;  // two-sided, normal approximation
};

// Two-sample location test from summary statistics (variances are of the
// respective mean estimators, i.e. already divided by the sample size).
WelchResult welch_test(double mean1, double se1, double mean2, double se2);

// Resampling standard error of the weighted mean; fully determined by the
// counter-based stream, so repeated calls agree bit for bit.
double bootstrap_se(const std::vector<double>& x, const std::vector<double>& w, int replicates,
                    const RngStream& rng, std::uint64_t tag = 0);

// One-sided Mann-Kendall p-value for a monotone decreasing trend (normal
// approximation with continuity correction; ties get the usual variance
// adjustment).  Small values support "the sequence is decreasing".
double mann_kendall_decreasing_p(const std::vector<double>& x);

}  // namespace fracwave

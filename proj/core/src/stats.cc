#include "fracwave/stats.hh"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fracwave/errors.hh"

namespace fracwave {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

FitResult linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("linear_fit needs two samples at least");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw Error("linear_fit: degenerate abscissae");
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

AffineFit affine_fit2(const std::vector<double>& x1, const std::vector<double>& x2,
                      const std::vector<double>& y) {
  const std::size_t n = y.size();
  if (x1.size() != n || x2.size() != n || n < 3)
    throw Error("affine_fit2 needs three samples at least");

  // Normal equations A beta = rhs for the design [1, x1, x2].
  double A[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  double rhs[3] = {0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double row[3] = {1.0, x1[i], x2[i]};
    for (int a = 0; a < 3; ++a) {
      rhs[a] += row[a] * y[i];
      for (int b = 0; b < 3; ++b) A[a][b] += row[a] * row[b];
    }
  }
  // Gaussian elimination with partial pivoting on the 3x3 system.
  int piv[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int best = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(A[piv[r]][col]) > std::abs(A[piv[best]][col])) best = r;
    std::swap(piv[col], piv[best]);
    const double d = A[piv[col]][col];
    if (std::abs(d) < 1e-14) throw Error("affine_fit2: singular design matrix");
    for (int r = col + 1; r < 3; ++r) {
      const double f = A[piv[r]][col] / d;
      for (int c = col; c < 3; ++c) A[piv[r]][c] -= f * A[piv[col]][c];
      rhs[piv[r]] -= f * rhs[piv[col]];
    }
  }
  double beta[3];
  for (int col = 2; col >= 0; --col) {
    double acc = rhs[piv[col]];
    for (int c = col + 1; c < 3; ++c) acc -= A[piv[col]][c] * beta[c];
    beta[col] = acc / A[piv[col]][col];
  }

  AffineFit fit;
  fit.a = beta[0];
  fit.b = beta[1];
  fit.c = beta[2];
  for (std::size_t i = 0; i < n; ++i)
    fit.max_abs_residual =
        std::max(fit.max_abs_residual, std::abs(y[i] - (fit.a + fit.b * x1[i] + fit.c * x2[i])));
  return fit;
}

static void check_weights(const std::vector<double>& x, const std::vector<double>& w) {
  if (x.size() != w.size() || x.empty()) throw Error("mismatched or empty weighted sample");
  for (double wi : w)
    if (!(wi > 0) || !std::isfinite(wi)) throw Error("weights must be positive and finite");
}

double weighted_mean(const std::vector<double>& x, const std::vector<double>& w) {
  check_weights(x, w);
  double sw = 0, swx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    swx += w[i] * x[i];
  }
  return swx / sw;
}

double weighted_mean_se(const std::vector<double>& x, const std::vector<double>& w) {
  const double m = weighted_mean(x, w);
  double sw = 0;
  for (double wi : w) sw += wi;
  double acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double wn = w[i] / sw;
    acc += wn * wn * (x[i] - m) * (x[i] - m);
  }
  return std::sqrt(acc);
}

double effective_sample_size(const std::vector<double>& w) {
  double sw = 0, sw2 = 0;
  for (double wi : w) {
    sw += wi;
    sw2 += wi * wi;
  }
  return sw2 > 0 ? sw * sw / sw2 : 0.0;
}

double kolmogorov_prob(double z) {
  // Series evaluation in the two classical regimes (small-z Jacobi theta
  // transform, large-z alternating tail), matching the usual library cutoffs.
  const double u = std::abs(z);
  if (u < 0.2) return 1.0;
  if (u < 0.755) {
    const double v = 1.0 / (u * u);
    const double w = 2.50662827463100050242;  // sqrt(2 pi)
    const double c1 = -1.2337005501361697;    // -pi^2 / 8
    return 1.0 - w * (std::exp(c1 * v) + std::exp(9 * c1 * v) + std::exp(25 * c1 * v)) / u;
  }
  if (u < 6.8116) {
    const double v = u * u;
    double r[4] = {0, 0, 0, 0};
    const int maxj = std::max(1, static_cast<int>(std::lround(3.0 / u)));
    for (int j = 0; j < maxj; ++j) r[j] = std::exp(-2.0 * (j + 1) * (j + 1) * v);
    return 2.0 * (r[0] - r[1] + r[2] - r[3]);
  }
  return 0.0;
}

KsResult weighted_ks_test(const std::vector<double>& x1, const std::vector<double>& w1,
                          const std::vector<double>& x2, const std::vector<double>& w2) {
  check_weights(x1, w1);
  check_weights(x2, w2);

  struct Pt {
    double x, w;
    int which;
  };
  std::vector<Pt> pts;
  pts.reserve(x1.size() + x2.size());
  double sw1 = 0, sw2 = 0;
  for (double wi : w1) sw1 += wi;
  for (double wi : w2) sw2 += wi;
  for (std::size_t i = 0; i < x1.size(); ++i) pts.push_back({x1[i], w1[i] / sw1, 0});
  for (std::size_t i = 0; i < x2.size(); ++i) pts.push_back({x2[i], w2[i] / sw2, 1});
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.x < b.x; });

  // Advance both ECDFs through each block of tied abscissae before comparing;
  // the sup is then taken over right-continuous values only.
  double f1 = 0, f2 = 0, d = 0;
  std::size_t i = 0;
  while (i < pts.size()) {
    std::size_t j = i;
    while (j < pts.size() && pts[j].x == pts[i].x) {
      (pts[j].which == 0 ? f1 : f2) += pts[j].w;
      ++j;
    }
    d = std::max(d, std::abs(f1 - f2));
    i = j;
  }

  KsResult res;
  res.statistic = d;
  const double e1 = effective_sample_size(w1), e2 = effective_sample_size(w2);
  res.n_eff = e1 * e2 / (e1 + e2);
  const double rn = std::sqrt(res.n_eff);
  res.p = kolmogorov_prob((rn + 0.12 + 0.11 / rn) * d);
  return res;
}

WelchResult welch_test(double mean1, double se1, double mean2, double se2) {
  WelchResult res;
  const double denom = std::sqrt(se1 * se1 + se2 * se2);
  if (denom == 0) throw Error("welch_test: both standard errors vanish");
  res.t = (mean1 - mean2) / denom;
  res.p = 2.0 * (1.0 - normal_cdf(std::abs(res.t)));
  return res;
}

double bootstrap_se(const std::vector<double>& x, const std::vector<double>& w, int replicates,
                    const RngStream& rng, std::uint64_t tag) {
  check_weights(x, w);
  if (replicates < 2) throw Error("bootstrap_se needs at least two replicates");
  const std::size_t n = x.size();
  std::vector<double> means(replicates);
  for (int b = 0; b < replicates; ++b) {
    double sw = 0, swx = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double u = rng.uniform(tag, static_cast<std::uint64_t>(b) * n + j);
      std::size_t idx = std::min(n - 1, static_cast<std::size_t>(u * n));
      sw += w[idx];
      swx += w[idx] * x[idx];
    }
    means[b] = swx / sw;
  }
  double m = std::accumulate(means.begin(), means.end(), 0.0) / replicates;
  double acc = 0;
  for (double v : means) acc += (v - m) * (v - m);
  return std::sqrt(acc / (replicates - 1));
}

double mann_kendall_decreasing_p(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n < 2) return 1.0;
  long long S = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (x[j] > x[i]) ++S;
      else if (x[j] < x[i]) --S;
    }
  // Tie-corrected variance.
  std::vector<double> sorted(x);
  std::sort(sorted.begin(), sorted.end());
  double var = n * (n - 1.0) * (2.0 * n + 5.0) / 18.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    var -= t * (t - 1.0) * (2.0 * t + 5.0) / 18.0;
    i = j;
  }
  if (var <= 0) return S < 0 ? 0.0 : (S > 0 ? 1.0 : 0.5);
  double z;
  if (S > 0) z = (S - 1.0) / std::sqrt(var);
  else if (S < 0) z = (S + 1.0) / std::sqrt(var);
  else z = 0.0;
  return normal_cdf(z);
}

}  // namespace fracwave

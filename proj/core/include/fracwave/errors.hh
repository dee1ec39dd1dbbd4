#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fracwave {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// to_grid / from_grid asked to use a grid that cannot hold the mode box
struct GridTooSmallError : Error {
  GridTooSmallError(int M, int K)
      : Error("grid too small: M = " + std::to_string(M) +
              " < 2K+2 = " + std::to_string(2 * K + 2)) {}
};

// nonlinearity produced non-finite grid values (blow-up of the truncated
// flow, or dt too large for the exponential potential)
struct BlowupError : Error {
  double t;
  explicit BlowupError(double when)
      : Error("nonlinearity overflow at t = " + std::to_string(when)), t(when) {}
};

// rejection sampler ran out of tries; carries the observed acceptance rate
struct ExhaustedTriesError : Error {
  double acceptance_rate;
  ExhaustedTriesError(unsigned long long tries, double rate)
      : Error("gibbs rejection sampler exhausted " + std::to_string(tries) +
              " tries (observed acceptance rate " + std::to_string(rate) + ")"),
        acceptance_rate(rate) {}
};

// importance weights too concentrated to be usable
struct DegenerateWeightsError : Error {
  double ess;
  explicit DegenerateWeightsError(double ess_)
      : Error("degenerate importance weights: effective sample size " +
              std::to_string(ess_) + " < 100"),
        ess(ess_) {}
};

// profile integration failed to return to (V0, 0) within tolerance
struct OdeNoReturnError : Error {
  using Error::Error;
};

// inflation data would need modes outside the stored box
struct ResolutionError : Error {
  using Error::Error;
};

// per-window sup sampling too coarse for the fastest retained mode
struct SupSamplingError : Error {
  using Error::Error;
};

// config parsing / validation; collects every violation at once
struct ConfigError : Error {
  std::vector<std::string> violations;
  explicit ConfigError(std::vector<std::string> v)
      : Error(join(v)), violations(std::move(v)) {}

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string all = "invalid config:";
    for (const auto& line : v) all += "\n  - " + line;
    return all;
  }
};

}  // namespace fracwave

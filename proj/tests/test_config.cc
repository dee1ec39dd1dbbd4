#include "doctest.h"

#include <string>

#include "fracwave/config.hh"
#include "fracwave/errors.hh"

using namespace fracwave;

namespace {

bool mentions(const ConfigError& e, const std::string& needle) {
  return std::string(e.what()).find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("minimal text parses to the documented defaults") {
  const SimConfig cfg = parse_config_text("d = 1\n");
  CHECK(cfg.d == 1);
  CHECK(cfg.alpha == 1.0);
  CHECK(cfg.K == 16);
  CHECK(cfg.T == 1.0);
  CHECK(cfg.seed == 1);
  CHECK(cfg.experiment.empty());
  CHECK(cfg.N == 0.0);  // unresolved until resolved()
  CHECK(cfg.resolved().N == passthrough_N(1, 16));
  CHECK(cfg.resolved().M == 4 * 16 + 4);
}

TEST_CASE("comments, blank lines and spacing are tolerated") {
  const SimConfig cfg = parse_config_text(
      "# header comment\n"
      "\n"
      "  alpha = 1.5   # inline comment\n"
      "\tK = 8\n"
      "n_list = 2, 4, 8\n"
      "threads = 2\n"
      "observables = u-l2sq , sobolev-s\n");
  CHECK(cfg.alpha == 1.5);
  CHECK(cfg.K == 8);
  CHECK(cfg.n_list == std::vector<int>{2, 4, 8});
  CHECK(cfg.threads == 2);
  CHECK(cfg.observables == std::vector<std::string>{"u-l2sq", "sobolev-s"});
}

TEST_CASE("parse problems carry line numbers and are all reported") {
  try {
    parse_config_text("alhpa = 1\nd = 1\nd = 2\nnonsense\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    REQUIRE(e.violations.size() == 3);
    CHECK(mentions(e, "line 1: unknown key 'alhpa'"));
    CHECK(mentions(e, "line 3: duplicate key 'd'"));
    CHECK(mentions(e, "line 4"));
  }
}

TEST_CASE("value violations are collected after a clean parse") {
  try {
    parse_config_text("d = 5\nalpha = -1\nsamples = 0\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.violations.size() >= 3);
    CHECK(mentions(e, "d in {1, 2}"));
    CHECK(mentions(e, "alpha > 0"));
    CHECK(mentions(e, "samples >= 1"));
  }
}

TEST_CASE("embedding window on eps0 is enforced with the numbers spelled out") {
  try {
    parse_config_text("d = 1\nalpha = 1\neps0 = 0.625\n");  // needs eps0 < 1/2
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "Sobolev embedding window"));
    CHECK(mentions(e, "0.625"));
  }
  // same window from below: eps0 must exceed d/r0
  CHECK_THROWS_AS(parse_config_text("d = 1\nalpha = 1\neps0 = 0.1\nr0 = 8\n"), ConfigError);
  CHECK_NOTHROW(parse_config_text("d = 1\nalpha = 1\neps0 = 0.25\nr0 = 8\n"));
}

TEST_CASE("per-experiment constraints") {
  // mu-supported statistics need sigma below alpha - d/2
  CHECK_THROWS_AS(
      parse_config_text("experiment = invariance\nd = 1\nalpha = 1\nsigma = 0.7\n"),
      ConfigError);
  CHECK_NOTHROW(parse_config_text("experiment = invariance\nd = 1\nalpha = 1\nsigma = 0.25\n"));

  // convergence reference truncation must fit the box
  CHECK_THROWS_AS(parse_config_text("experiment = convergence\nK = 16\nn_list = 2, 4, 16\n"),
                  ConfigError);
  CHECK_NOTHROW(parse_config_text("experiment = convergence\nK = 32\nn_list = 2, 4, 16\n"));

  // inflation wants the power nonlinearity and the supercritical window
  try {
    parse_config_text("experiment = inflation\npotential = exp\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "power potential"));
  }
  CHECK_NOTHROW(parse_config_text(
      "experiment = inflation\npotential = power\nk = 2\nd = 1\nalpha = 0.6\ns = 0.15\n"
      "delta1 = 0.7\ndelta2 = 0.8\nn_list = 8, 16\nK = 2048\neps0 = 0.05\nr0 = 32\n"));

  // energy window (k-1) alpha / k < s < alpha
  CHECK_THROWS_AS(parse_config_text(
                      "experiment = energy\npotential = power\nk = 2\nalpha = 1\ns = 0.25\n"),
                  ConfigError);
  CHECK_NOTHROW(parse_config_text(
      "experiment = energy\npotential = power\nk = 2\nalpha = 1\ns = 0.75\n"));

  // the first observable names the tail statistic
  CHECK_THROWS_AS(
      parse_config_text("experiment = tail\nobservables = no-such-stat\n"), ConfigError);
  CHECK_NOTHROW(parse_config_text("experiment = tail\nobservables = Dtheta-Linf\n"));

  // unknown experiment name lists the known ones
  try {
    parse_config_text("experiment = warp\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "unknown experiment"));
    CHECK(mentions(e, "invariance"));
    CHECK(mentions(e, "energy"));
  }
}

TEST_CASE("serialization round trips resolved configs exactly") {
  SimConfig cfg = parse_config_text(
      "experiment = invariance\n"
      "d = 1\n"
      "alpha = 1.0\n"
      "potential = exp\n"
      "N = 4\n"
      "K = 8\n"
      "dt = 0.0213\n"
      "T = 1.7\n"
      "samples = 123\n"
      "seed = 99\n"
      "observables = u-l2sq, coeff-re:1\n"
      "R_grid = 0.5, 1.0, 2.5\n"
      "output_dir = somewhere\n");
  const SimConfig res = cfg.resolved();
  const SimConfig back = parse_config_text(serialize_config(res));
  CHECK(back == res);

  // an irrational-looking dt survives the round trip bit for bit
  SimConfig fine = cfg;
  fine.dt = 0.1 * std::pow(17.0, -0.5);
  CHECK(parse_config_text(serialize_config(fine.resolved())).dt == fine.resolved().dt);
}

TEST_CASE("violations are also available without throwing") {
  SimConfig cfg;
  cfg.d = 1;
  CHECK(config_violations(cfg).empty());
  cfg.K = 0;
  cfg.beta = 0.5;
  const std::vector<std::string> v = config_violations(cfg);
  CHECK(v.size() == 2);
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
}

TEST_CASE("file loading") {
  CHECK_THROWS_AS(load_config("definitely_not_here.cfg"), Error);
}

}  // TEST_SUITE

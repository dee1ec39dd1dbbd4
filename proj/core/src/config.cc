#include "fracwave/config.hh"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "fracwave/errors.hh"
#include "fracwave/experiments.hh"

namespace fracwave {

namespace {

const std::set<std::string> kKnownKeys = {
    "experiment", "d",        "alpha",   "potential", "k",        "N",
    "K",          "M",        "dt",      "T",         "sigma",    "s",
    "s1",         "beta",     "eps0",    "r0",        "window_L", "dt_sup",
    "seed",       "samples",  "n_list",  "delta1",    "delta2",   "R_grid",
    "observables", "output_dir", "threads"};

const std::set<std::string> kExperiments = {"invariance", "invariance-flipped", "convergence",
                                            "tail",       "inflation",          "energy"};

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (!s.empty() && s.back() == ',') out.push_back("");
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) return false;
  out = v;
  return true;
}

bool parse_int(const std::string& s, long long& out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || errno == ERANGE) return false;
  out = v;
  return true;
}

bool parse_u64(const std::string& s, unsigned long long& out) {
  if (s.empty() || s[0] == '-') return false;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || errno == ERANGE) return false;
  out = v;
  return true;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Reports whether the experiment draws its randomness from the Gaussian
// measure mu, whose samples live in H^sigma only for sigma < alpha - d/2.
bool mu_supported(const std::string& experiment) {
  return experiment == "invariance" || experiment == "invariance-flipped" ||
         experiment == "convergence" || experiment == "tail";
}

}  // namespace

std::vector<std::string> config_violations(const SimConfig& raw) {
  const SimConfig cfg = raw.resolved();
  std::vector<std::string> v;
  auto fail = [&](const std::string& msg) { v.push_back(msg); };

  if (!cfg.experiment.empty() && !kExperiments.count(cfg.experiment)) {
    std::string known;
    for (const std::string& e : kExperiments) known += (known.empty() ? "" : ", ") + e;
    fail("unknown experiment '" + cfg.experiment + "' (known: " + known + ")");
  }
  if (cfg.d != 1 && cfg.d != 2) fail("requires d in {1, 2}");
  if (!(cfg.alpha > 0)) fail("requires alpha > 0");
  if (cfg.potential.kind == Potential::Kind::Power && cfg.potential.k < 1)
    fail("power potential requires k >= 1");
  if (cfg.K < 1) fail("requires K >= 1");
  if (cfg.M < 2 * cfg.K + 2)
    fail("requires M >= 2K + 2 = " + std::to_string(2 * cfg.K + 2) +
         " collocation points per axis");
  if (!(cfg.T > 0)) fail("requires T > 0");
  if (!(cfg.beta > 1)) fail("requires beta > 1 (time weights must be summable)");
  if (!(cfg.r0 >= 2)) fail("requires r0 >= 2");
  if (!(cfg.r0 > 0 && cfg.d / cfg.r0 < cfg.eps0 && cfg.eps0 < cfg.alpha - cfg.d / 2.0))
    fail("requires d/r0 < eps0 < alpha - d/2 (Sobolev embedding window); got eps0 = " +
         num(cfg.eps0) + " with d/r0 = " + num(cfg.d / cfg.r0) +
         ", alpha - d/2 = " + num(cfg.alpha - cfg.d / 2.0));
  if (mu_supported(cfg.experiment)) {
    if (!(cfg.sigma > 0 && cfg.sigma < cfg.alpha - cfg.d / 2.0))
      fail("mu-supported statistics require 0 < sigma < alpha - d/2; got sigma = " +
           num(cfg.sigma));
  } else if (!(cfg.sigma > 0)) {
    fail("requires sigma > 0");
  }
  if (!(cfg.s > 0)) fail("requires s > 0");
  if (!(cfg.s1 > 0)) fail("requires s1 > 0");
  if (cfg.window_L < 0) fail("requires window_L >= 0");
  if (!(cfg.dt_sup > 0)) fail("requires dt_sup > 0");
  if (cfg.samples < 1) fail("requires samples >= 1");
  if (cfg.n_list.empty()) fail("requires a nonempty n_list");
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
    if (cfg.n_list[i] < 1) {
      fail("n_list entries must be positive integers");
      break;
    }
    if (i > 0 && cfg.n_list[i] <= cfg.n_list[i - 1]) {
      fail("n_list must be strictly increasing");
      break;
    }
  }
  for (std::size_t i = 0; i < cfg.R_grid.size(); ++i) {
    if (!(cfg.R_grid[i] > 0)) {
      fail("R_grid entries must be positive");
      break;
    }
    if (i > 0 && !(cfg.R_grid[i] > cfg.R_grid[i - 1])) {
      fail("R_grid must be strictly increasing");
      break;
    }
  }
  if (cfg.observables.empty()) fail("requires a nonempty observables list");
  if (cfg.output_dir.empty()) fail("requires a nonempty output_dir");
  if (cfg.threads < 0) fail("requires threads >= 0");

  if (cfg.experiment == "invariance" || cfg.experiment == "invariance-flipped") {
    for (const std::string& name : cfg.observables) {
      try {
        make_observable(name);
      } catch (const Error& e) {
        fail(e.what());
      }
    }
  } else if (cfg.experiment == "tail") {
    if (!cfg.observables.empty()) {
      try {
        tail_statistic_from_name(cfg.observables.front());
      } catch (const Error& e) {
        fail(std::string(e.what()) + " (the first observable selects the tail statistic)");
      }
    }
  } else if (cfg.experiment == "convergence") {
    if (!cfg.n_list.empty() && cfg.K < 2 * cfg.n_list.back())
      fail("convergence reference truncation must fit in the box: requires K >= 2*max(n_list) = " +
           std::to_string(2 * cfg.n_list.back()));
  } else if (cfg.experiment == "inflation") {
    if (cfg.potential.kind != Potential::Kind::Power)
      fail("inflation requires the power potential");
    else {
      const double sc = cfg.d / 2.0 - cfg.alpha / cfg.potential.k;
      if (!(cfg.s > 0 && cfg.s < sc))
        fail("inflation requires the super-critical window 0 < s < d/2 - alpha/k = " + num(sc));
    }
    if (!(cfg.delta2 > cfg.delta1 && cfg.delta1 > 0))
      fail("inflation requires delta2 > delta1 > 0");
    for (int n : cfg.n_list)
      if (n < 2) {
        fail("inflation requires every concentration scale n >= 2");
        break;
      }
  } else if (cfg.experiment == "energy") {
    if (cfg.potential.kind != Potential::Kind::Power)
      fail("energy runs require the power potential");
    else {
      const int k = cfg.potential.k;
      const double lo = (k - 1) * cfg.alpha / k;
      if (!(cfg.s > lo && cfg.s < cfg.alpha))
        fail("energy runs require (k-1) alpha / k < s < alpha; got s = " + num(cfg.s) +
             ", window (" + num(lo) + ", " + num(cfg.alpha) + ")");
    }
  }
  return v;
}

void validate_config(const SimConfig& cfg) {
  std::vector<std::string> v = config_violations(cfg);
  if (!v.empty()) throw ConfigError(std::move(v));
}

SimConfig parse_config_text(const std::string& text) {
  SimConfig cfg;
  std::vector<std::string> errs;
  std::set<std::string> seen;

  std::stringstream ss(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(ss, raw)) {
    ++lineno;
    const std::string at = "line " + std::to_string(lineno) + ": ";
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errs.push_back(at + "expected key=value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!kKnownKeys.count(key)) {
      errs.push_back(at + "unknown key '" + key + "'");
      continue;
    }
    if (!seen.insert(key).second) {
      errs.push_back(at + "duplicate key '" + key + "'");
      continue;
    }

    auto want_int = [&](int& dst) {
      long long x;
      if (parse_int(val, x) && x >= -(1LL << 31) && x < (1LL << 31))
        dst = static_cast<int>(x);
      else
        errs.push_back(at + key + " must be an integer, got '" + val + "'");
    };
    auto want_double = [&](double& dst) {
      double x;
      if (parse_double(val, x))
        dst = x;
      else
        errs.push_back(at + key + " must be a number, got '" + val + "'");
    };

    if (key == "experiment") {
      cfg.experiment = val;
    } else if (key == "d") {
      want_int(cfg.d);
    } else if (key == "alpha") {
      want_double(cfg.alpha);
    } else if (key == "potential") {
      if (val == "exp")
        cfg.potential.kind = Potential::Kind::Exp;
      else if (val == "power")
        cfg.potential.kind = Potential::Kind::Power;
      else
        errs.push_back(at + "potential must be 'exp' or 'power', got '" + val + "'");
    } else if (key == "k") {
      want_int(cfg.potential.k);
    } else if (key == "N") {
      want_double(cfg.N);
    } else if (key == "K") {
      want_int(cfg.K);
    } else if (key == "M") {
      want_int(cfg.M);
    } else if (key == "dt") {
      want_double(cfg.dt);
    } else if (key == "T") {
      want_double(cfg.T);
    } else if (key == "sigma") {
      want_double(cfg.sigma);
    } else if (key == "s") {
      want_double(cfg.s);
    } else if (key == "s1") {
      want_double(cfg.s1);
    } else if (key == "beta") {
      want_double(cfg.beta);
    } else if (key == "eps0") {
      want_double(cfg.eps0);
    } else if (key == "r0") {
      want_double(cfg.r0);
    } else if (key == "window_L") {
      want_int(cfg.window_L);
    } else if (key == "dt_sup") {
      want_double(cfg.dt_sup);
    } else if (key == "seed") {
      unsigned long long x;
      if (parse_u64(val, x))
        cfg.seed = x;
      else
        errs.push_back(at + "seed must be an unsigned 64-bit integer, got '" + val + "'");
    } else if (key == "samples") {
      want_int(cfg.samples);
    } else if (key == "n_list") {
      std::vector<int> ns;
      bool ok = !val.empty();
      for (const std::string& item : split_list(val)) {
        long long x;
        if (!parse_int(item, x) || x < -(1LL << 31) || x >= (1LL << 31)) {
          ok = false;
          break;
        }
        ns.push_back(static_cast<int>(x));
      }
      if (ok)
        cfg.n_list = std::move(ns);
      else
        errs.push_back(at + "n_list must be a comma-separated integer list, got '" + val + "'");
    } else if (key == "delta1") {
      want_double(cfg.delta1);
    } else if (key == "delta2") {
      want_double(cfg.delta2);
    } else if (key == "R_grid") {
      if (val == "auto" || val.empty()) {
        cfg.R_grid.clear();
      } else {
        std::vector<double> rs;
        bool ok = true;
        for (const std::string& item : split_list(val)) {
          double x;
          if (!parse_double(item, x)) {
            ok = false;
            break;
          }
          rs.push_back(x);
        }
        if (ok)
          cfg.R_grid = std::move(rs);
        else
          errs.push_back(at + "R_grid must be 'auto' or a comma-separated number list, got '" +
                         val + "'");
      }
    } else if (key == "observables") {
      std::vector<std::string> obs;
      for (const std::string& item : split_list(val))
        if (!item.empty()) obs.push_back(item);
      if (obs.empty())
        errs.push_back(at + "observables must be a nonempty comma-separated list");
      else
        cfg.observables = std::move(obs);
    } else if (key == "output_dir") {
      cfg.output_dir = val;
    } else if (key == "threads") {
      want_int(cfg.threads);
    }
  }

  if (!errs.empty()) throw ConfigError(std::move(errs));
  validate_config(cfg);
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const SimConfig& cfg) {
  std::string out;
  auto kv = [&](const std::string& key, const std::string& val) {
    out += key + " = " + val + "\n";
  };
  kv("experiment", cfg.experiment);
  kv("d", std::to_string(cfg.d));
  kv("alpha", num(cfg.alpha));
  kv("potential", cfg.potential.name());
  kv("k", std::to_string(cfg.potential.k));
  kv("N", num(cfg.N));
  kv("K", std::to_string(cfg.K));
  kv("M", std::to_string(cfg.M));
  kv("dt", num(cfg.dt));
  kv("T", num(cfg.T));
  kv("sigma", num(cfg.sigma));
  kv("s", num(cfg.s));
  kv("s1", num(cfg.s1));
  kv("beta", num(cfg.beta));
  kv("eps0", num(cfg.eps0));
  kv("r0", num(cfg.r0));
  kv("window_L", std::to_string(cfg.window_L));
  kv("dt_sup", num(cfg.dt_sup));
  kv("seed", std::to_string(cfg.seed));
  kv("samples", std::to_string(cfg.samples));
  std::string ns;
  for (int n : cfg.n_list) ns += (ns.empty() ? "" : ",") + std::to_string(n);
  kv("n_list", ns);
  kv("delta1", num(cfg.delta1));
  kv("delta2", num(cfg.delta2));
  if (cfg.R_grid.empty()) {
    kv("R_grid", "auto");
  } else {
    std::string rs;
    for (double r : cfg.R_grid) rs += (rs.empty() ? "" : ",") + num(r);
    kv("R_grid", rs);
  }
  std::string obs;
  for (const std::string& o : cfg.observables) obs += (obs.empty() ? "" : ",") + o;
  kv("observables", obs);
  kv("output_dir", cfg.output_dir);
  kv("threads", std::to_string(cfg.threads));
  return out;
}

}  // namespace fracwave

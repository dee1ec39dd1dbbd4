#pragma once

#include <map>
#include <string>
#include <vector>

#include "fracwave/stats.hh"

namespace fracwave {

// A named boolean check; the threshold and relation ship with the value so
// the report explains itself without consulting the source.
struct Verdict {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // e.g. "<", ">=", "in [0.9, 1.1]", "== (bitwise)"
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ExperimentReport {
  std::string name;
  std::map<std::string, std::string> config_kv;  // serialized config + run inputs
  std::map<std::string, Table> tables;
  std::map<std::string, FitResult> fits;
  std::map<std::string, AffineFit> affine_fits;
  std::vector<Verdict> verdicts;
  double wall_seconds = 0.0;

  bool all_passed() const;
  const Verdict* find(const std::string& verdict_name) const;
  void add_verdict(const std::string& name, bool passed, double value, double threshold,
                   const std::string& relation);

  // include_wall = false yields the determinism digest: two runs of the same
  // experiment with the same seed must serialize identically.
  std::string to_json(bool include_wall = true) const;

  // report.json plus one <table>.csv per table under dir (created if absent).
  void write(const std::string& dir) const;
};

}  // namespace fracwave

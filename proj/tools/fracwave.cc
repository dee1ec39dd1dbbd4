#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracwave/config.hh"
#include "fracwave/experiments.hh"
#include "fracwave/fwf1.hh"
#include "fracwave/gibbs.hh"
#include "fracwave/profiles.hh"
#include "fracwave/transform.hh"

namespace fs = std::filesystem;
using namespace fracwave;

namespace {

int cmd_run(const std::string& cfg_path) {
  const SimConfig cfg = load_config(cfg_path);
  if (cfg.experiment.empty())
    throw Error("config has no 'experiment' key; nothing to run");

  std::cout << "experiment: " << cfg.experiment << "\n";
  const ExperimentRun run = run_experiment(cfg);
  const ExperimentReport& rep = run.report;

  fs::create_directories(cfg.output_dir);
  rep.write(cfg.output_dir);
  for (const auto& [name, point] : run.snapshots) {
    write_fwf1(point.u, (fs::path(cfg.output_dir) / (name + "_u.fwf1")).string());
    write_fwf1(point.v, (fs::path(cfg.output_dir) / (name + "_v.fwf1")).string());
  }

  for (const Verdict& v : rep.verdicts)
    std::cout << (v.passed ? "  [pass] " : "  [FAIL] ") << v.name << ": " << v.value << " "
              << v.relation << " " << v.threshold << "\n";
  std::cout << "wall: " << rep.wall_seconds << " s\n";
  std::cout << "report: " << (fs::path(cfg.output_dir) / "report.json").string() << "\n";

  if (!rep.all_passed()) {
    std::cout << "verdict failure\n";
    return 2;
  }
  std::cout << "all verdicts passed\n";
  return 0;
}

int cmd_sample(const std::string& cfg_path, int count, std::string out_dir,
               unsigned long long max_tries) {
  const SimConfig cfg = load_config(cfg_path).resolved();
  if (count <= 0) count = cfg.samples;
  if (out_dir.empty()) out_dir = cfg.output_dir;
  fs::create_directories(out_dir);

  unsigned long long total_tries = 0;
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (int i = 0; i < count; ++i) {
    const RngStream rng{cfg.seed, static_cast<uint64_t>(i)};
    const GibbsSample s = sample_gibbs_rejection(cfg, cfg.N, cfg.potential, rng, max_tries);
    total_tries += s.tries;
    char name[32];
    std::snprintf(name, sizeof(name), "member_%05d", i);
    write_fwf1(s.point.u, (fs::path(out_dir) / (std::string(name) + "_u.fwf1")).string());
    write_fwf1(s.point.v, (fs::path(out_dir) / (std::string(name) + "_v.fwf1")).string());
    files.push_back(name);
  }

  nlohmann::ordered_json manifest;
  manifest["format"] = "fwf1";
  manifest["seed"] = cfg.seed;
  manifest["alpha"] = cfg.alpha;
  manifest["N"] = cfg.N;
  manifest["K"] = cfg.K;
  manifest["count"] = count;
  manifest["potential"] = cfg.potential.name();
  manifest["k"] = cfg.potential.k;
  manifest["acceptance_rate"] = count / static_cast<double>(total_tries);
  manifest["files"] = files;
  std::ofstream mf(fs::path(out_dir) / "manifest.json");
  mf << manifest.dump(2) << "\n";

  std::cout << "wrote " << count << " members to " << out_dir << " (acceptance rate "
            << count / static_cast<double>(total_tries) << ")\n";
  return 0;
}

int cmd_ode_check(const std::vector<int>& ks, double v0, double dt_ode) {
  std::printf("%4s %12s %18s %18s %14s %14s\n", "k", "V0", "period(integrator)",
              "period(quadrature)", "|difference|", "closure");
  for (int k : ks) {
    const OdeProfile pr = solve_profile(k, v0, dt_ode);
    const double pq = period_quadrature(k, v0);
    const double closure = std::abs(pr.eval_V(pr.period) - v0);
    std::printf("%4d %12.6g %18.12g %18.12g %14.3e %14.3e\n", k, v0, pr.period, pq,
                std::abs(pr.period - pq), closure);
  }
  return 0;
}

int cmd_field_dump(const std::string& in_path, const std::string& out_path, int M) {
  const SpectralField f = read_fwf1(in_path);
  if (M <= 0) M = 4 * f.maxmode + 4;
  const GridField g = to_grid(f, M);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw Error("cannot open " + out_path + " for writing");
    out = &file;
  }
  out->precision(17);
  const double h = 2.0 * M_PI / M;
  if (g.dim == 1) {
    *out << "x,value\n";
    for (int j = 0; j < M; ++j) *out << j * h << ',' << g.values[j] << '\n';
  } else {
    *out << "x,y,value\n";
    for (int j0 = 0; j0 < M; ++j0)
      for (int j1 = 0; j1 < M; ++j1)
        *out << j0 * h << ',' << j1 * h << ',' << g.values[static_cast<size_t>(j0) * M + j1]
             << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracwave: pseudospectral laboratory for fractional nonlinear wave equations "
               "on the torus"};
  app.require_subcommand(1);

  std::string run_cfg;
  CLI::App* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", run_cfg, "key=value config file")->required();

  std::string sample_cfg, sample_out;
  int sample_count = 0;
  unsigned long long max_tries = 1000000;
  CLI::App* sample =
      app.add_subcommand("sample", "draw a Gibbs ensemble and write it as FWF1 fields");
  sample->add_option("config", sample_cfg, "key=value config file")->required();
  sample->add_option("--count", sample_count, "ensemble size (default: 'samples' from config)");
  sample->add_option("--out", sample_out, "output directory (default: config output_dir)");
  sample->add_option("--max-tries", max_tries, "rejection tries per member");

  std::vector<int> ks{0, 1, 2, 3};
  double v0 = 1.0, dt_ode = 0.0;
  CLI::App* ode = app.add_subcommand(
      "ode-check", "compare the profile integrator period against the closed-form quadrature");
  ode->add_option("--k", ks, "nonlinearity exponents")->delimiter(',');
  ode->add_option("--v0", v0, "initial amplitude V(0)");
  ode->add_option("--dt", dt_ode, "integrator step (0 = automatic)");

  std::string dump_in, dump_out;
  int dump_M = 0;
  CLI::App* dump = app.add_subcommand("field-dump", "convert an FWF1 field to CSV grid values");
  dump->add_option("file", dump_in, "FWF1 input file")->required();
  dump->add_option("--out", dump_out, "output CSV file (default: stdout)");
  dump->add_option("--grid", dump_M, "grid points per axis (default: 4K+4)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(run_cfg);
    if (*sample) return cmd_sample(sample_cfg, sample_count, sample_out, max_tries);
    if (*ode) return cmd_ode_check(ks, v0, dt_ode);
    if (*dump) return cmd_field_dump(dump_in, dump_out, dump_M);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

#include "fracwave/report.hh"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "fracwave/errors.hh"

namespace fracwave {

bool ExperimentReport::all_passed() const {
  for (const Verdict& v : verdicts)
    if (!v.passed) return false;
  return true;
}

const Verdict* ExperimentReport::find(const std::string& verdict_name) const {
  for (const Verdict& v : verdicts)
    if (v.name == verdict_name) return &v;
  return nullptr;
}

void ExperimentReport::add_verdict(const std::string& vname, bool passed, double value,
                                   double threshold, const std::string& relation) {
  verdicts.push_back(Verdict{vname, passed, value, threshold, relation});
}

std::string ExperimentReport::to_json(bool include_wall) const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["config"] = config_kv;
  for (const auto& [tname, tab] : tables) {
    nlohmann::ordered_json jt;
    jt["columns"] = tab.columns;
    jt["rows"] = tab.rows;
    j["tables"][tname] = jt;
  }
  for (const auto& [fname, fit] : fits)
    j["fits"][fname] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2}};
  for (const auto& [fname, fit] : affine_fits)
    j["affine_fits"][fname] = {{"a", fit.a},
                               {"b", fit.b},
                               {"c", fit.c},
                               {"max_abs_residual", fit.max_abs_residual}};
  j["verdicts"] = nlohmann::ordered_json::array();
  for (const Verdict& v : verdicts)
    j["verdicts"].push_back({{"name", v.name},
                             {"passed", v.passed},
                             {"value", v.value},
                             {"threshold", v.threshold},
                             {"relation", v.relation}});
  j["all_passed"] = all_passed();
  if (include_wall) j["wall_seconds"] = wall_seconds;
  return j.dump(2);
}

void ExperimentReport::write(const std::string& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  {
    std::ofstream out(fs::path(dir) / "report.json");
    if (!out) throw Error("cannot write report.json under " + dir);
    out << to_json() << '\n';
  }
  for (const auto& [tname, tab] : tables) {
    std::ofstream out(fs::path(dir) / (tname + ".csv"));
    if (!out) throw Error("cannot write table " + tname + " under " + dir);
    out.precision(17);
    for (std::size_t c = 0; c < tab.columns.size(); ++c)
      out << tab.columns[c] << (c + 1 < tab.columns.size() ? ',' : '\n');
    for (const auto& row : tab.rows)
      for (std::size_t c = 0; c < row.size(); ++c) out << row[c] << (c + 1 < row.size() ? ',' : '\n');
  }
}

}  // namespace fracwave

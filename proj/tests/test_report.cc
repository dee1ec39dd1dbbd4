#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>

#include "fracwave/report.hh"

using namespace fracwave;

namespace {

ExperimentReport sample_report() {
  ExperimentReport rep;
  rep.name = "demo";
  rep.config_kv["d"] = "1";
  rep.config_kv["alpha"] = "1";
  rep.add_verdict("first", true, 0.5, 1.0, "<");
  rep.add_verdict("second", true, 2.0, 1.5, ">=");
  Table t;
  t.columns = {"x", "y"};
  t.rows = {{1.0, 2.0}, {3.0, 0.0625}};
  rep.tables["points"] = t;
  rep.fits["line"] = FitResult{-0.5, 1.0, 0.99};
  rep.wall_seconds = 12.5;
  return rep;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("verdict bookkeeping") {
  ExperimentReport rep = sample_report();
  CHECK(rep.all_passed());
  REQUIRE(rep.find("second") != nullptr);
  CHECK(rep.find("second")->value == 2.0);
  CHECK(rep.find("absent") == nullptr);

  rep.add_verdict("third", false, 9.0, 1.0, "<");
  CHECK_FALSE(rep.all_passed());
  CHECK(rep.verdicts.size() == 3);
}

TEST_CASE("json digest is deterministic and wall time is excluded on demand") {
  const ExperimentReport rep = sample_report();
  const std::string with_wall = rep.to_json(true);
  const std::string digest = rep.to_json(false);
  CHECK(with_wall.find("wall_seconds") != std::string::npos);
  CHECK(digest.find("wall_seconds") == std::string::npos);
  CHECK(digest == rep.to_json(false));

  ExperimentReport other = sample_report();
  other.wall_seconds = 99.0;  // only the wall clock differs
  CHECK(other.to_json(false) == digest);
  CHECK(other.to_json(true) != with_wall);

  // values serialize with round-trip precision
  CHECK(digest.find("0.0625") != std::string::npos);
}

TEST_CASE("write produces report.json and one csv per table") {
  namespace fs = std::filesystem;
  const std::string dir = "report_write_test";
  fs::remove_all(dir);
  const ExperimentReport rep = sample_report();
  rep.write(dir);

  REQUIRE(fs::exists(fs::path(dir) / "report.json"));
  REQUIRE(fs::exists(fs::path(dir) / "points.csv"));

  std::ifstream csv(fs::path(dir) / "points.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "x,y");
  std::string row1, row2;
  std::getline(csv, row1);
  std::getline(csv, row2);
  CHECK(row1.find("1") != std::string::npos);
  CHECK(row2.find("0.0625") != std::string::npos);

  std::ifstream js(fs::path(dir) / "report.json");
  std::string blob((std::istreambuf_iterator<char>(js)), std::istreambuf_iterator<char>());
  CHECK(blob == rep.to_json(true) + "\n");
  fs::remove_all(dir);
}

}  // TEST_SUITE

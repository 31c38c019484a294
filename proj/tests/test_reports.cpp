#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "unipoly/report.hpp"

using namespace unipoly;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig tmp_config() {
  RunConfig cfg;
  cfg.out_dir = "/tmp/unipoly_test_out";
  std::system("mkdir -p /tmp/unipoly_test_out");
  return cfg;
}

}  // namespace

TEST_CASE("bounds command") {
  RunConfig cfg = tmp_config();
  cfg.formats = {"json", "csv"};
  CommandResult res = cmd_bounds(cfg);
  CHECK(res.exit_code == 0);
  CHECK(res.report["all_reference_checks_pass"].get<bool>());

  SUBCASE("reference row for the quadratic bound is present") {
    bool found = false;
    for (const auto& row : res.report["ratio_sup_table"]) {
      if (row["degree"] == 2 && std::abs(row["y"].get<double>() - 0.625) < 1e-12) {
        CHECK(row["bound"].get<double>() == doctest::Approx(1.19371).epsilon(1e-4));
        found = true;
      }
    }
    CHECK(found);
  }
  SUBCASE("csv row count is the grid product plus the amplitude grid") {
    std::string csv = slurp("/tmp/unipoly_test_out/bounds.csv");
    int rows = -1;  // header
    for (char c : csv)
      if (c == '\n') ++rows;
    CHECK(rows == 4 * 4 + 4);
  }
  SUBCASE("rerun is byte identical") {
    std::string first = slurp("/tmp/unipoly_test_out/bounds.csv");
    cmd_bounds(cfg);
    CHECK(first == slurp("/tmp/unipoly_test_out/bounds.csv"));
    std::string jfirst = slurp("/tmp/unipoly_test_out/bounds.json");
    cmd_bounds(cfg);
    CHECK(jfirst == slurp("/tmp/unipoly_test_out/bounds.json"));
  }
}

TEST_CASE("analyze command") {
  SUBCASE("escaping parameter") {
    RunConfig cfg = tmp_config();
    cfg.degree = 2;
    cfg.c1 = 0.5;
    cfg.has_c1 = true;
    CommandResult res = cmd_analyze(cfg);
    CHECK(res.report["classification"] == "escaping");
  }
  SUBCASE("cascade parameter lists the doubling periods") {
    RunConfig cfg = tmp_config();
    cfg.degree = 2;
    cfg.param_query = "cascade:6";
    cfg.levels = 5;
    CommandResult res = cmd_analyze(cfg);
    CHECK(res.report["classification"] == "renormalizable");
    std::vector<int> periods;
    for (const auto& lvl : res.report["renormalization_levels"])
      periods.push_back(lvl["period"].get<int>());
    CHECK(periods == std::vector<int>{2, 4, 8, 16, 32});
    CHECK(res.exit_code == 0);  // space ratios over their bounds
  }
  SUBCASE("rerun of analyze is byte identical") {
    RunConfig cfg = tmp_config();
    cfg.degree = 2;
    cfg.param_query = "cascade:5";
    cfg.levels = 4;
    cmd_analyze(cfg);
    std::string first = slurp("/tmp/unipoly_test_out/analyze.json");
    cmd_analyze(cfg);
    CHECK(first == slurp("/tmp/unipoly_test_out/analyze.json"));
    CHECK(!first.empty());
  }
  SUBCASE("fibonacci parameter reports the closest-return sequence") {
    RunConfig cfg = tmp_config();
    cfg.degree = 2;
    cfg.param_query = "fibonacci:8";
    cfg.levels = 4;
    CommandResult res = cmd_analyze(cfg);
    std::vector<int> times = res.report["closest_return_times"].get<std::vector<int>>();
    REQUIRE(times.size() >= 8);
    CHECK(times[0] == 1);
    CHECK(times[7] == 34);
    CHECK(res.report["fibonacci"].get<bool>());
  }
}

TEST_CASE("geometry command checks pass") {
  RunConfig cfg = tmp_config();
  cfg.formats = {"json", "svg"};
  CommandResult res = cmd_geometry(cfg);
  CHECK(res.exit_code == 0);
  CHECK(res.report["crossing_check"]["ok"].get<bool>());
  CHECK(res.report["sector_crossing"]["no_roots_at_1_07"].get<bool>());
  CHECK(res.report["sector_crossing"]["quartic_no_root_geq_1"].get<bool>());
  std::string svg = slurp("/tmp/unipoly_test_out/geometry.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("construct command on the doubling cascade") {
  RunConfig cfg = tmp_config();
  cfg.degree = 2;
  cfg.param_query = "cascade:5";
  cfg.levels = 4;
  cfg.samples = 2048;
  cfg.formats = {"json", "svg"};
  CommandResult res = cmd_construct(cfg);
  REQUIRE(res.report.contains("levels"));
  int contained = 0;
  for (const auto& lvl : res.report["levels"])
    if (lvl.contains("contained") && lvl["contained"].get<bool>()) ++contained;
  CHECK(contained >= 3);
  SUBCASE("svg trace endpoints match the reported interval") {
    // The emitted file exists for a passing level and carries curve markup.
    std::string svg = slurp("/tmp/unipoly_test_out/construct_s4.svg");
    CHECK(svg.find("polyline") != std::string::npos);
  }
  SUBCASE("escaping parameter reports an error entry and exits nonzero") {
    RunConfig bad = tmp_config();
    bad.degree = 2;
    bad.c1 = 0.7;
    bad.has_c1 = true;
    CommandResult r2 = cmd_construct(bad);
    CHECK(r2.exit_code == 2);
    CHECK(r2.report.contains("error"));
  }
}

TEST_CASE("search command certifies its outputs") {
  RunConfig cfg = tmp_config();
  cfg.degree = 2;
  cfg.param_query = "superstable:3";
  CommandResult res = cmd_search(cfg);
  CHECK(res.exit_code == 0);
  CHECK(res.report["certified"].get<bool>());
  CHECK(res.report["c1"]["value"].get<double>() == doctest::Approx(-1.754877666).epsilon(1e-7));
}

TEST_CASE("config round trip") {
  RunConfig cfg;
  cfg.degree = 4;
  cfg.c1 = -1.2;
  cfg.has_c1 = true;
  cfg.thetas = {0.3, 0.1};
  cfg.levels = 7;
  RunConfig back = RunConfig::from_json(cfg.to_json());
  CHECK(back.degree == 4);
  CHECK(back.c1 == -1.2);
  CHECK(back.thetas == std::vector<double>{0.3, 0.1});
  CHECK(back.levels == 7);
  SUBCASE("invalid angles are rejected") {
    json j = cfg.to_json();
    j["theta"] = {2.0};
    CHECK_THROWS_AS(RunConfig::from_json(j), Error);
  }
}

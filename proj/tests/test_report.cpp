#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "syndemic/report.hpp"

using namespace syndemic;
namespace fs = std::filesystem;

namespace {

Trajectory small_run() {
  Parameters p = Parameters::table1(13.0, 0.06);
  IntegratorOptions opts;
  opts.report_times = uniform_grid(0.0, 5.0, 6);
  return simulate(p, reference_initial_state(), 0.0, 5.0, opts);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("syndemic_report_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("number formatting keeps ten significant digits") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(49980.123456789) == "49980.12346");
  CHECK(std::stod(format_number(1.0 / 3.0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("trajectory CSV") {
  const Trajectory tr = small_run();
  const auto rows = lines(trajectory_csv(tr));
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == "time,S,L_T,I_T,R_T,I_H,A,L_TH,I_TH,R_TH,A_T,N");
  CHECK(rows[1].rfind("0,30000,7000,1500,0,2000,500,6000,2500,0,500,50000", 0) == 0);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(std::count(rows[k].begin(), rows[k].end(), ',') == 11);
  }
}

TEST_CASE("summary CSV quotes fields that need it") {
  std::vector<Check> checks = {make_check("N(20)", 10509.0, 10509.65, 0.05, true, "treatment-tb",
                                          "without-treatment", "minimal arm, alternative 8463"),
                               make_check("R1", 1.0, 2.0, 0.1, false, "s", "v")};
  const auto rows = lines(summary_csv(checks));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "name,expected,actual,tolerance,mode,result,scenario,variant,note");
  CHECK(rows[1] ==
        "N(20),10509,10509.65,0.05,relative,pass,treatment-tb,without-treatment,\"minimal arm, alternative 8463\"");
  CHECK(rows[2] == "R1,1,2,0.1,absolute,fail,s,v,");
}

TEST_CASE("table CSV") {
  Table t;
  t.columns = {"beta1", "R1"};
  t.labels = {"a"};
  t.rows = {{4.3, 0.99788}};
  CHECK(table_csv(t) == "label,beta1,R1\na,4.3,0.99788\n");
}

TEST_CASE("SVG output") {
  const Trajectory tr = small_run();
  const std::string svg = emit_svg(tr, {IT, ITH, AT}, "demo");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  const std::regex poly("<polyline[^>]*data-compartment=\"([A-Z_]+)\"");
  std::vector<std::string> seen;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), poly); it != std::sregex_iterator(); ++it) {
    seen.push_back((*it)[1]);
  }
  CHECK(seen == std::vector<std::string>{"I_T", "I_TH", "A_T"});
  CHECK(svg.find("demo") != std::string::npos);

  CHECK_THROWS_AS(emit_svg(tr, {}), std::invalid_argument);
  CHECK_THROWS_AS(emit_svg(Trajectory{}, {S}), std::invalid_argument);
}

TEST_CASE("atomic writes create directories and leave no temporary file") {
  const fs::path dir = scratch_dir("atomic");
  const fs::path file = dir / "nested" / "out.csv";
  write_file_atomic(file, "a,b\n");
  CHECK(slurp(file) == "a,b\n");
  write_file_atomic(file, "c\n");
  CHECK(slurp(file) == "c\n");
  CHECK(std::distance(fs::directory_iterator(dir / "nested"), fs::directory_iterator()) == 1);
  fs::remove_all(dir);
}

TEST_CASE("output directory override") {
  ::unsetenv("SYNDEMIC_OUT_DIR");
  CHECK(resolve_out_dir("here") == fs::path("here"));
  CHECK(resolve_out_dir("") == fs::path("."));
  ::setenv("SYNDEMIC_OUT_DIR", "/tmp/elsewhere", 1);
  CHECK(resolve_out_dir("here") == fs::path("/tmp/elsewhere"));
  ::setenv("SYNDEMIC_OUT_DIR", "", 1);
  CHECK(resolve_out_dir("here") == fs::path("here"));
  ::unsetenv("SYNDEMIC_OUT_DIR");
}

TEST_CASE("scenario files") {
  ScenarioSpec spec;
  spec.name = "demo run";
  spec.base = Parameters::table1(13.0, 0.06);
  spec.horizon = 2.0;
  spec.variants = {{"a/b", {}}};
  ScenarioResult r = run_scenario(spec);
  r.checks.push_back(make_check("x", 1.0, 1.0, 0.0, false, r.name, "a/b"));
  const fs::path dir = scratch_dir("scenario");
  const auto written = write_scenario(r, dir);
  REQUIRE(written.size() == 3);
  CHECK(written[0].filename() == "demo_run_summary.csv");
  CHECK(written[1].filename() == "demo_run_table.csv");
  CHECK(written[2].filename() == "demo_run_a_b.csv");
  for (const auto& p : written) CHECK(fs::exists(p));
  CHECK(lines(slurp(written[2])).size() == 242);
  fs::remove_all(dir);
}

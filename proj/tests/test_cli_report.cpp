#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "molpuc/report.hpp"
#include "molpuc/suites.hpp"

using namespace molpuc;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kData = MOLPUC_DATA_DIR;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("molpuc_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args) {
  const std::string cmd = std::string(MOLPUC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CheckResult toy(double r2) {
  CheckResult r;
  r.check = "toy";
  r.tol = 1e-9;
  r.add("a", {1}, 1e-12);
  r.add("b", {2, 3}, r2);
  return r;
}

}  // namespace

TEST_CASE("report JSON schema") {
  const json j = report_json({toy(1e-11), "abc", 8, 42});
  for (const char* k : {"check", "measure", "blocks", "tol", "max_residual", "pass", "items"})
    CHECK(j.contains(k));
  CHECK(j["pass"] == true);
  CHECK(j["blocks"] == 8);
  CHECK(j["items"].size() == 2);
  CHECK(j["items"][1]["id"] == "b");
  CHECK(j["items"][1]["indices"] == json::array({2, 3}));
  CHECK(j["max_residual"].get<double>() == 1e-11);
  CHECK(first_failure(toy(1e-11)).empty());
  CHECK(first_failure(toy(1e-3)) == "b");
}

TEST_CASE("non-finite residuals fail and are written as null") {
  const CheckResult r = toy(std::numeric_limits<double>::quiet_NaN());
  CHECK_FALSE(r.pass());
  const json j = report_json({r, "abc", 8, 42});
  CHECK(j["pass"] == false);
  CHECK(j["items"][1]["residual"].is_null());
  CHECK(j["max_residual"].is_null());
  CheckResult empty;
  empty.check = "empty";
  empty.tol = 1;
  CHECK_FALSE(empty.pass());
}

TEST_CASE("report CSV") {
  const std::string csv = report_csv({toy(1e-3), "abc", 8, 42});
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "check,measure,blocks,tol,kind,id,indices,residual,pass");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 2);
}

TEST_CASE("suite registry") {
  CHECK(verify_suite_names().size() == 7);
  for (const auto& s : verify_suite_names())
    CHECK(std::find(all_suite_names().begin(), all_suite_names().end(), s) != all_suite_names().end());
  const Measure mu = random_measure<double>(2, 2, 1);
  CHECK_THROWS_AS(run_suite("nope", mu, SuiteOptions{}), ConfigError);
  const MatrixXc d = seeded_diagonal(3, 5);
  for (int a = 0; a < 3; ++a) {
    CHECK(std::abs(d(a, a)) >= 0.1);
    CHECK(std::abs(d(a, a)) <= 0.3);
  }
  CHECK(all_axes(2).size() == 12);
}

TEST_CASE("verify structure on the Lebesgue measure") {
  const fs::path out = scratch("structure");
  CHECK(run("verify --suite structure --measure " + kData + "/lebesgue.json --blocks 8 --out " +
            out.string()) == 0);
  const json j = json::parse(slurp(out / "structure.json"));
  CHECK(j["pass"] == true);
  CHECK(j["max_residual"].get<double>() == 0.0);
  CHECK(j["blocks"] == 8);
}

TEST_CASE("configuration errors exit with 2") {
  const fs::path out = scratch("errors");
  const fs::path bad = out / "bad.json";
  std::ofstream(bad) << R"({"m": 2, "kind": "trig_poly", "coeffs": {"0": [[[1, 0]]]}})";
  CHECK(run("verify --suite structure --measure " + bad.string() + " --out " + out.string()) == 2);
  CHECK(fs::exists(out / "error.json"));
  CHECK(run("verify --suite structure --measure /nonexistent.json --out " + out.string()) == 2);
  CHECK(run("verify --suite nope --measure " + kData + "/herm2.json --out " + out.string()) == 2);
  CHECK(run("verify --suite structure --measure " + kData + "/herm2.json --format xml --out " +
            out.string()) == 2);
  CHECK(run("flow --axis L3:0 --measure " + kData + "/herm2.json --out " + out.string()) == 2);
}

TEST_CASE("a tolerance below the residual fails with 1") {
  const fs::path out = scratch("tight");
  CHECK(run("verify --suite biorthogonality --tol 1e-30 --measure " + kData + "/herm2.json --blocks 6 --out " +
            out.string()) == 1);
  const json j = json::parse(slurp(out / "biorthogonality.json"));
  CHECK(j["pass"] == false);
  CHECK(j["tol"].get<double>() == 1e-30);
}

TEST_CASE("reports are deterministic") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  const std::string args = "verify --suite cd --suite recursion --seed 7 --measure " + kData + "/nonherm2.json --blocks 10";
  CHECK(run(args + " --out " + a.string()) == 0);
  CHECK(run(args + " --out " + b.string()) == 0);
  for (const char* f : {"cd.json", "recursion.json"}) {
    CHECK_FALSE(slurp(a / f).empty());
    CHECK(slurp(a / f) == slurp(b / f));
  }
  CHECK(run("verify --suite cd --format csv --measure " + kData + "/nonherm2.json --blocks 10 --out " + a.string()) == 0);
  CHECK(slurp(a / "cd.csv").rfind("check,measure,blocks", 0) == 0);
}

TEST_CASE("flow writes a trajectory") {
  const fs::path out = scratch("flow");
  const fs::path cfg = scratch("flow_cfg") / "config.json";
  std::ofstream(cfg) << R"({"axis": {"side": "R", "j": 2, "a": "total"}, "t_end": 0.1, "steps": 10})";
  CHECK(run("flow --compare-oracle --config " + cfg.string() + " --measure " + kData + "/herm2.json --blocks 8 --out " +
            out.string()) == 0);
  std::ifstream in(out / "trajectory.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,l,component,row,col,re,im");
  std::string line, last;
  int rows = 0;
  while (std::getline(in, line)) {
    last = line;
    ++rows;
  }
  CHECK(rows > 0);
  CHECK(std::stod(last.substr(0, last.find(','))) == doctest::Approx(0.1));
  CHECK(fs::exists(out / "flow.json"));
}

TEST_CASE("all suites on a bundled measure") {
  const fs::path out = scratch("all");
  const auto t0 = std::chrono::steady_clock::now();
  CHECK(run("all --measure " + kData + "/herm2.json --blocks 12 --out " + out.string()) == 0);
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 60);
  int reports = 0;
  for (const auto& e : fs::directory_iterator(out)) {
    const json j = json::parse(slurp(e.path()));
    CHECK_MESSAGE(j["pass"] == true, e.path().string());
    ++reports;
  }
  CHECK(reports == int(all_suite_names().size()));
}

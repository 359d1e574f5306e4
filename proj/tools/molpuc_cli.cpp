// molpuc command-line front end: computes MOLPUC data for a measure file and runs the
// verification suites, writing one report per suite.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "molpuc/measure_io.hpp"
#include "molpuc/report.hpp"
#include "molpuc/suites.hpp"

using namespace molpuc;
using nlohmann::json;

namespace {

struct Common {
  std::string measure;
  int blocks = 12;
  double tol = 0;
  unsigned seed = 42;
  std::string out = "molpuc_out";
  std::string format = "json";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--measure", c.measure, "measure config (JSON)")->required();
  sub->add_option("--blocks,-N", c.blocks, "number of blocks N")->check(CLI::Range(2, 64));
  sub->add_option("--tol", c.tol, "override the suite tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "RNG seed for sample points");
  sub->add_option("--out", c.out, "output directory");
  sub->add_option("--format", c.format, "report format")->check(CLI::IsMember({"json", "csv"}));
}

SuiteOptions options(const Common& c) {
  SuiteOptions o;
  o.N = c.blocks;
  o.seed = c.seed;
  o.tol = c.tol;
  return o;
}

void write_json(const Common& c, const std::string& name, const json& j) {
  std::filesystem::create_directories(c.out);
  write_text((std::filesystem::path(c.out) / name).string(), j.dump(2) + "\n");
}

// runs the suites, writes their reports and prints one line each; exit 0 iff all pass
int run_suites(const Common& c, const Measure& mu, const std::vector<std::string>& names,
               const SuiteOptions& opt) {
  const std::string fp = measure_fingerprint(mu);
  bool ok = true;
  for (const auto& name : names) {
    Report rep{run_suite(name, mu, opt), fp, opt.N, opt.seed};
    const std::string path = write_report(rep, c.out, c.format);
    const bool pass = rep.result.pass();
    ok = ok && pass;
    std::cout << (pass ? "PASS " : "FAIL ") << rep.result.check
              << " max_residual=" << rep.result.max_residual() << " tol=" << rep.result.tol;
    if (!pass) std::cout << " first_failure=\"" << first_failure(rep.result) << "\"";
    std::cout << " -> " << path << "\n";
    for (const auto& n : rep.result.notes) std::cout << "  note: " << n << "\n";
  }
  return ok ? 0 : 1;
}

FlowAxis checked_axis(const std::string& s, int m) {
  const FlowAxis ax = parse_axis(s);
  if (ax.a >= m) throw ConfigError("flow axis component " + std::to_string(ax.a) + " >= m");
  return ax;
}

// {"axis": {"side": "L|R", "j": 1|2, "a": int|"total"}, "t_end": float, "steps": int}
void read_flow_config(const std::string& path, std::string& axis, double& t_end, int& steps) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open flow config " + path);
  json j;
  try {
    in >> j;
    const json& a = j.at("axis");
    const std::string side = a.at("side").get<std::string>();
    const int jj = a.at("j").get<int>();
    const std::string hj = side + std::to_string(jj);
    axis = a.at("a").is_string() ? "total:" + hj : hj + ":" + std::to_string(a.at("a").get<int>());
    if (a.at("a").is_string() && a.at("a").get<std::string>() != "total")
      throw ConfigError("flow axis \"a\" must be an integer or \"total\"");
    t_end = j.value("t_end", t_end);
    steps = j.value("steps", steps);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad flow config: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MOLPUC from block Gauss-Borel factorization of CMV moment matrices"};
  app.require_subcommand(1);
  Common c;

  auto* moments = app.add_subcommand("moments", "moments c_n, |n| < N");
  auto* factorize = app.add_subcommand("factorize", "block LU of g^L and g^R");
  auto* polys = app.add_subcommand("polys", "the four MOLPUC families and their dual routes");
  auto* verblunsky = app.add_subcommand("verblunsky", "Verblunsky matrices and quasi-norms");
  auto* verify = app.add_subcommand("verify", "run verification suites");
  auto* flow = app.add_subcommand("flow", "Toeplitz lattice flow along one axis");
  auto* bilinear = app.add_subcommand("bilinear", "bilinear equations on every axis");
  auto* darboux = app.add_subcommand("darboux", "discrete flows: ω routes, Lax, ZS, flip");
  auto* miwa = app.add_subcommand("miwa", "Miwa shifted kernels and scalar relations");
  auto* elteorema = app.add_subcommand("elteorema", "families from Miwa shifted quasi-norms");
  auto* all = app.add_subcommand("all", "every suite");
  for (auto* s : {moments, factorize, polys, verblunsky, verify, flow, bilinear, darboux, miwa,
                  elteorema, all})
    add_common(s, c);

  std::vector<std::string> suites;
  verify->add_option("--suite", suites, "suite name (repeatable)")
      ->required()
      ->check(CLI::IsMember(verify_suite_names()));

  std::string axis = "total:L1", flow_config;
  double t_end = 0.3;
  int steps = 100;
  bool compare = false;
  flow->add_option("--axis", axis, "total:H1, total:H2, H1:a or H2:a");
  flow->add_option("--t-end", t_end, "final time");
  flow->add_option("--steps", steps, "RK4 steps")->check(CLI::PositiveNumber);
  flow->add_option("--config", flow_config, "flow config (JSON)");
  flow->add_flag("--compare-oracle", compare, "compare the endpoint with refactorization");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Measure mu = load_measure(c.measure);
    SuiteOptions opt = options(c);
    if (moments->parsed()) {
      const Moments mom = compute_moments(mu, c.blocks - 1);
      json j = json::object();
      for (int n = -mom.n_max; n <= mom.n_max; ++n) j[std::to_string(n)] = matrix_to_json(mom(n));
      write_json(c, "moments.json", {{"measure", measure_fingerprint(mu)}, {"m", mu.m}, {"c", j}});
      std::cout << "wrote " << (std::filesystem::path(c.out) / "moments.json").string() << "\n";
      return 0;
    }
    if (factorize->parsed()) {
      const CmvSystem S = build_system(mu, c.blocks);
      json d = json::object();
      for (const auto& [name, f] : {std::pair{"L", &S.fL}, std::pair{"R", &S.fR}}) {
        json a = json::array(), cond = json::array();
        for (int l = 0; l < c.blocks; ++l) {
          a.push_back(matrix_to_json(f->D[l]));
          cond.push_back(f->cond[l]);
        }
        d[name] = {{"D", a}, {"cond", cond}};
      }
      write_json(c, "factorization_data.json", d);
      return run_suites(c, mu, {"factorization"}, opt);
    }
    if (polys->parsed()) {
      write_json(c, "families.json", families_json(build_system(mu, c.blocks)));
      return run_suites(c, mu, {"dual-route"}, opt);
    }
    if (verblunsky->parsed()) {
      write_json(c, "verblunsky_table.json", verblunsky_json(build_system(mu, c.blocks).V));
      return run_suites(c, mu, {"verblunsky"}, opt);
    }
    if (verify->parsed()) return run_suites(c, mu, suites, opt);
    if (flow->parsed()) {
      if (!flow_config.empty()) read_flow_config(flow_config, axis, t_end, steps);
      if (steps < 1) throw ConfigError("steps must be positive");
      opt.axis = checked_axis(axis, mu.m);
      opt.t_end = t_end;
      opt.steps = steps;
      const FlowTrajectory tr =
          compare ? flow_with_oracle(mu, opt.axis, c.blocks, t_end, steps)
                  : flow_integrate(build_system(mu, c.blocks).V, opt.axis, t_end / steps, steps);
      std::filesystem::create_directories(c.out);
      const std::string path = (std::filesystem::path(c.out) / "trajectory.csv").string();
      write_text(path, trajectory_csv(tr));
      std::cout << "wrote " << path << (tr.truncated ? " (truncated)" : "") << "\n";
      if (!compare) return tr.truncated ? 1 : 0;
      return run_suites(c, mu, {"flow"}, opt);
    }
    if (bilinear->parsed()) return run_suites(c, mu, {"bilinear"}, opt);
    if (darboux->parsed()) return run_suites(c, mu, {"darboux", "miwa-darboux"}, opt);
    if (miwa->parsed()) return run_suites(c, mu, {"miwa", "miwa-darboux"}, opt);
    if (elteorema->parsed()) return run_suites(c, mu, {"elteorema"}, opt);
    if (all->parsed()) return run_suites(c, mu, all_suite_names(), opt);
  } catch (const ConfigError& e) {
    const json err{{"error", "config"}, {"message", e.what()}, {"pass", false}};
    std::cout << err.dump() << "\n";
    try {
      write_json(c, "error.json", err);
    } catch (const std::exception&) {
    }
    return 2;
  } catch (const std::exception& e) {
    const json err{{"error", "runtime"}, {"message", e.what()}, {"pass", false}};
    std::cout << err.dump() << "\n";
    try {
      write_json(c, "error.json", err);
    } catch (const std::exception&) {
    }
    return 1;
  }
  return 2;
}

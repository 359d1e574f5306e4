#pragma once

#include <string>
#include <vector>

#include "molpuc/check.hpp"
#include "molpuc/molpuc.hpp"
#include "molpuc/toda.hpp"

namespace molpuc {

struct SuiteOptions {
  int N = 12;
  unsigned seed = 42;
  double tol = 0;  // > 0 replaces the suite's own tolerance
  FlowAxis axis{Side::L, 1, -1};
  double t_end = 0.3;
  int steps = 100;
};

// the suites accepted by `verify --suite`
const std::vector<std::string>& verify_suite_names();
// every suite, in the order `all` runs them
const std::vector<std::string>& all_suite_names();

// throws ConfigError for an unknown name
CheckResult run_suite(const std::string& name, const Measure& mu, const SuiteOptions& opt);

CheckResult suite_structure(const Measure& mu, const SuiteOptions& opt);
CheckResult suite_factorization(const Measure& mu, const SuiteOptions& opt);
CheckResult suite_biorthogonality(const Measure& mu, const SuiteOptions& opt);
CheckResult suite_dual_route(const Measure& mu, const SuiteOptions& opt);
CheckResult suite_verblunsky(const Measure& mu, const SuiteOptions& opt);
CheckResult suite_recursion(const Measure& mu, const SuiteOptions& opt);
CheckResult suite_appendixB(const Measure& mu, const SuiteOptions& opt);
CheckResult suite_cd(const Measure& mu, const SuiteOptions& opt);
CheckResult suite_kernels_cross(const Measure& mu, const SuiteOptions& opt);
CheckResult suite_secondkind(const Measure& mu, const SuiteOptions& opt);
CheckResult suite_toeplitz(const Measure& mu, const SuiteOptions& opt);
CheckResult suite_flow(const Measure& mu, const SuiteOptions& opt);
CheckResult suite_wave(const Measure& mu, const SuiteOptions& opt);
CheckResult suite_bilinear(const Measure& mu, const SuiteOptions& opt);
CheckResult suite_darboux(const Measure& mu, const SuiteOptions& opt);
CheckResult suite_miwa(const Measure& mu, const SuiteOptions& opt);
CheckResult suite_miwa_darboux(const Measure& mu, const SuiteOptions& opt);
CheckResult suite_elteorema(const Measure& mu, const SuiteOptions& opt);

// every flow coordinate for block size m: (side, j) × {total, 0..m-1}
std::vector<FlowAxis> all_axes(int m);

// seeded diagonal shift parameters of size m and modulus in [0.1, 0.3]
MatrixXc seeded_diagonal(int m, unsigned seed);

}  // namespace molpuc

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "molpuc/cd_kernels.hpp"
#include "molpuc/discrete.hpp"
#include "molpuc/measure_io.hpp"

using namespace molpuc;

namespace {

Measure lebesgue() {
  return make_measure<double>(1, MeasureKind::trig_poly, {{0, MatrixXc::Identity(1, 1)}}, true);
}

MatrixXc diag2(Complex a, Complex b) {
  MatrixXc d = MatrixXc::Zero(2, 2);
  d(0, 0) = a;
  d(1, 1) = b;
  return d;
}

std::vector<Shift> four_shifts() {
  return {{Side::L, 1, diag2({0.2, 0.1}, -0.15)},
          {Side::L, -1, diag2(0.1, {0, 0.25})},
          {Side::R, 1, diag2({-0.1, 0.2}, 0.3)},
          {Side::R, -1, diag2(0.25, {0.05, -0.1})}};
}

}  // namespace

TEST_CASE("zero shift is the identity") {
  const Measure mu = random_measure<double>(2, 2, 1);
  const Shift s{Side::L, 1, MatrixXc::Zero(2, 2)};
  const Measure t = shift_measure(mu, s);
  for (int n = -3; n <= 3; ++n) CHECK((t.coeff(n) - mu.coeff(n)).norm() == 0.0);
  const Blocks g = moment_matrix(mu, Side::L, 6);
  CHECK((shift_moment_matrix(g, Side::L, s).dense() - g.dense()).norm() == 0.0);
}

TEST_CASE("shifted Lebesgue measure") {
  const Measure mu = lebesgue();
  const Shift s{Side::L, 1, MatrixXc::Constant(1, 1, 0.3)};
  const Measure t = shift_measure(mu, s);
  // 1 - 0.3 e^{iθ}: the weight has a single extra harmonic
  for (double th : {0.0, 1.0, 2.5}) {
    const Complex expect = 1.0 - 0.3 * std::polar(1.0, th);
    CHECK(std::abs(weight_eval(t, th)(0, 0) - expect) < 1e-15);
  }
  const CheckResult r = darboux_check(mu, {s}, 8);
  CHECK(r.pass());
  CHECK(r.max_residual() < 1e-12);
  // the matrix-route shift agrees with the moments of the shifted measure
  const int N = 8;
  const Blocks a = shift_moment_matrix(moment_matrix(mu, Side::L, N + 2), Side::L, s);
  const MatrixXc b = moment_matrix(t, Side::L, N + 2).dense();
  CHECK((a.dense() - b).topLeftCorner(N, N).norm() < 1e-14);
}

TEST_CASE("Darboux transformations on a random measure") {
  const Measure mu = random_measure<double>(2, 2, 12);
  const CheckResult r = darboux_check(mu, four_shifts(), 8);
  CHECK(r.max_residual() < 1e-9);
  for (const auto& it : r.items)
    if (it.id.rfind("omega", 0) == 0) CHECK(it.residual < 1e-10);
  bool zs = false;
  for (const auto& it : r.items) zs = zs || it.id.rfind("ZS", 0) == 0;
  CHECK(zs);
  const CheckResult c = miwa_darboux_consistency(mu, four_shifts(), 8);
  CHECK(c.max_residual() < 1e-12);
}

TEST_CASE("Miwa kernels and scalar relations") {
  for (unsigned seed : {13u, 16u}) {
    const Measure mu = seed == 13 ? random_hermitian_measure<double>(2, 2, seed) : random_measure<double>(2, 2, seed);
    const CheckResult k = miwa_kernel_check(mu, diag2({0.3, 0.1}, -0.2), 10, cd_sample_pairs(6, seed));
    CHECK(k.items.size() > 0);
    CHECK(k.max_residual() < 1e-9);
    REQUIRE_FALSE(k.errata.empty());
    CHECK(k.errata.front().residual > 1e-3);
    const CheckResult s = miwa_scalar_relations(mu, {Complex(0.3, 0.2), Complex(-0.25, 0.4)}, 10);
    CHECK(s.items.size() > 0);
    CHECK(s.max_residual() < 1e-9);
  }
}

TEST_CASE("Miwa kernels of the Lebesgue measure") {
  const CheckResult k = miwa_kernel_check(lebesgue(), MatrixXc::Constant(1, 1, 0.4), 10, cd_sample_pairs(6, 3));
  CHECK(k.max_residual() < 1e-11);
  CHECK(miwa_kernel_check(lebesgue(), MatrixXc::Zero(1, 1), 10, cd_sample_pairs(6, 3)).max_residual() < 1e-14);
}

TEST_CASE("hermitian compatibility of discrete parameters") {
  DiscreteFlowParams p;
  p.nL_plus = 1;
  p.nR_minus = 1;
  p.dL_plus = {diag2({0.1, 0.2}, 0.3)};
  p.dR_minus = {p.dL_plus[0].adjoint()};
  CHECK(p.hermitian_compatible());
  CHECK(p.shifts().size() == 2);
  p.dR_minus[0](0, 0) += 0.01;
  CHECK_FALSE(p.hermitian_compatible());
  const Measure mu = random_hermitian_measure<double>(2, 2, 14);
  p.dR_minus = {p.dL_plus[0].adjoint()};
  const Measure t = apply_discrete_flows(mu, p);
  CHECK(hermitian_defect(t) < 1e-13);
}

TEST_CASE("reconstruction from quasi-norm products") {
  const Measure bs = load_measure(std::string(MOLPUC_DATA_DIR) + "/bernstein_szego.json");
  const auto zs = ring_samples({0.7, 1.4}, 4, 42);
  CHECK(elteorema_reconstruct(bs, {Complex(0.6, 0.3)}, 3).result.max_residual() < 1e-8);
  const ElteoremaReport e = elteorema_reconstruct(bs, zs, 3);
  CHECK(e.skipped.empty());
  CHECK(e.result.max_residual() < 1e-8);
  const ElteoremaReport h = elteorema_reconstruct(random_hermitian_measure<double>(2, 2, 15), zs, 2);
  CHECK(h.result.max_residual() < 1e-7);
  REQUIRE_FALSE(h.result.errata.empty());
}

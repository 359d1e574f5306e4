#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "molpuc/measure_io.hpp"
#include "molpuc/toda.hpp"

using namespace molpuc;

namespace {

Measure lebesgue() {
  return make_measure<double>(1, MeasureKind::trig_poly, {{0, MatrixXc::Identity(1, 1)}}, true);
}

FlowTimes sample_times(int m, double s) {
  FlowTimes t = FlowTimes::zero(m);
  for (int a = 0; a < m; ++a) {
    t.at(Side::L, 1)(a) = Complex(0.1 * s * (a + 1), 0.05 * s);
    t.at(Side::R, 2)(a) = std::conj(t.at(Side::L, 1)(a));
    t.at(Side::L, 2)(a) = Complex(-0.07 * s, 0.02 * s * a);
    t.at(Side::R, 1)(a) = std::conj(t.at(Side::L, 2)(a));
  }
  return t;
}

}  // namespace

TEST_CASE("flow axes parse and print") {
  const FlowAxis t = parse_axis("total:L1");
  CHECK(t.total());
  CHECK(t.side == Side::L);
  CHECK(t.j == 1);
  const FlowAxis p = parse_axis("R2:1");
  CHECK(p.side == Side::R);
  CHECK(p.j == 2);
  CHECK(p.a == 1);
  CHECK(axis_name(p) == "R2:1");
  CHECK(axis_name(t) == "total:L1");
  for (const char* bad : {"", "X1", "L3:0", "L1", "L1:-1", "L1:x", "total:L1:0", "total:"})
    CHECK_THROWS_AS(parse_axis(bad), ConfigError);
  CHECK_THROWS_AS(shifted(FlowTimes::zero(2), parse_axis("L1:2"), 0.1), ConfigError);
}

TEST_CASE("zero times leave the measure alone") {
  const Measure mu = random_measure<double>(2, 2, 3);
  const FlowTimes z = FlowTimes::zero(2);
  CHECK(z.is_zero());
  CHECK(z.hermitian_compatible());
  CHECK((flow_exponential(z.at(Side::L, 1), z.at(Side::L, 2), Complex(0.3, 0.8)) - MatrixXc::Identity(2, 2)).norm() == 0.0);
  const Measure d = deform_measure(mu, z, 10);
  for (int n = -2; n <= 2; ++n) CHECK((d.coeff(n) - mu.coeff(n)).norm() == 0.0);
}

TEST_CASE("deformed weight on the grid") {
  const Measure mu = random_hermitian_measure<double>(2, 2, 4);
  const FlowTimes t = sample_times(2, 1.0);
  CHECK(t.hermitian_compatible());
  const Measure d = deform_measure(mu, t, 40);
  CHECK(d.hermitian);
  for (double th : {0.2, 1.9, 3.3}) {
    const Complex z = std::polar(1.0, th);
    // independent Fourier sum of the deformed moments
    MatrixXc s = MatrixXc::Zero(2, 2);
    for (int n = -40; n <= 40; ++n) s += d.coeff(n) * std::pow(z, n);
    CHECK((s - deformed_fourier(mu, t, z)).norm() < 1e-12);
  }
}

TEST_CASE("Toeplitz lattice at vanishing Verblunsky matrices") {
  const CmvSystem S = build_system(lebesgue(), 8);
  CHECK(std::abs(S.x(0)(0, 0) - 1.0) == 0.0);
  const VerblunskyTable d = toeplitz_rhs(S.V, parse_axis("total:L1"));
  CHECK(std::abs(d.x[1](0, 0) + 1.0) < 1e-15);
  for (int k = 2; k < 8; ++k) CHECK(std::abs(d.x[k](0, 0)) < 1e-15);
  // the same derivative from refactorized deformed measures
  const double h = 1e-4;
  const FlowAxis ax = parse_axis("total:L1");
  const VerblunskyTable p = oracle_table(lebesgue(), shifted(FlowTimes::zero(1), ax, h), 8);
  const VerblunskyTable m = oracle_table(lebesgue(), shifted(FlowTimes::zero(1), ax, -h), 8);
  CHECK(std::abs((p.x[1](0, 0) - m.x[1](0, 0)) / (2 * h) + 1.0) < 1e-7);
}

TEST_CASE("total flow is the sum of its components") {
  const CmvSystem S = build_system(random_measure<double>(2, 2, 5), 10);
  for (const char* name : {"L1", "L2", "R1", "R2"}) {
    const VerblunskyTable tot = toeplitz_rhs(S.V, parse_axis(std::string("total:") + name));
    VerblunskyTable sum = table_axpy(tot, -1.0, tot);
    for (int a = 0; a < 2; ++a)
      sum = table_axpy(sum, 1.0, toeplitz_rhs(S.V, parse_axis(std::string(name) + ":" + std::to_string(a))));
    CHECK(table_distance(tot, sum, 0, 9) < 1e-12);
  }
}

TEST_CASE("Toeplitz lattice against finite differences of refactorizations") {
  for (unsigned seed : {6u, 7u}) {
    const Measure mu = seed == 6 ? random_hermitian_measure<double>(2, 2, seed) : random_measure<double>(2, 2, seed);
    for (const char* ax : {"total:L1", "total:R2", "L2:0", "R1:1"}) {
      CHECK(toeplitz_fd_residual(mu, FlowTimes::zero(2), parse_axis(ax), 10) < 5e-7);
      CHECK(toeplitz_fd_residual(mu, sample_times(2, 1.0), parse_axis(ax), 10) < 5e-7);
    }
  }
}

TEST_CASE("integrated flow converges at fourth order") {
  for (const char* ax : {"total:L1", "total:R2"}) {
    const FlowAxis a = parse_axis(ax);
    const FlowTrajectory fine = flow_with_oracle(lebesgue(), a, 12, 0.3, 100);
    CHECK_FALSE(fine.truncated);
    CHECK(fine.times.size() == 101);
    CHECK(fine.oracle_gap < 1e-7);
    // the step-halving ratio needs a table whose truncation error is below the RK4 error at 6 steps
    const Measure h2 = load_measure(std::string(MOLPUC_DATA_DIR) + "/herm2.json");
    const double g3 = flow_with_oracle(h2, a, 16, 0.3, 3).oracle_gap;
    const double g6 = flow_with_oracle(h2, a, 16, 0.3, 6).oracle_gap;
    CHECK(g3 / g6 >= 15);
    const Measure mu = random_hermitian_measure<double>(2, 2, 8);
    CHECK(flow_with_oracle(mu, a, 16, 0.3, 100).oracle_gap < 1e-7);
  }
  CHECK_THROWS_AS(flow_integrate(build_system(lebesgue(), 4).V, parse_axis("total:L1"), 0.1, 0), ConfigError);
}

TEST_CASE("wave equations, Lax and zero curvature") {
  const Measure mu = random_measure<double>(2, 2, 9);
  const CheckResult r = wave_and_zs_checks(mu, sample_times(2, 0.5), parse_axis("total:L1"), parse_axis("R2:0"), 8);
  CHECK_FALSE(r.items.empty());
  CHECK(r.max_residual() < 1e-5);
}

TEST_CASE("bilinear equations") {
  const Measure mu = random_hermitian_measure<double>(2, 2, 10);
  const FlowTimes t = sample_times(2, 0.5);
  CHECK(bilinear_check(mu, t, t, 8, 4).max_residual() < 1e-9);
  for (const char* ax : {"total:L1", "L2:1", "R1:0", "total:R2"}) {
    const CheckResult r = bilinear_check(mu, t, shifted(t, parse_axis(ax), 1e-2), 8, 4);
    CHECK_FALSE(r.items.empty());
    CHECK(r.max_residual() < 1e-9);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "molpuc/molpuc.hpp"

using namespace molpuc;

namespace {

const double kTau = 2 * std::numbers::pi;

// power of z carried by the CMV basis entry l: 0, -1, 1, -2, 2, ...
int power_oracle(int l) { return l == 0 ? 0 : (l % 2 ? -(l + 1) / 2 : l / 2); }

}  // namespace

TEST_CASE("CMV ordering of powers") {
  for (int l = 0; l < 20; ++l) {
    CHECK(cmv_power(l) == power_oracle(l));
    CHECK(cmv_index(cmv_power(l)) == l);
  }
  const Complex z(0.7, -0.4);
  for (int l = 0; l < 9; ++l) {
    CHECK(std::abs(chi_scalar<double>(l, z) - std::pow(z, power_oracle(l))) < 1e-15);
    const MatrixXc c = chi_eval<double>(l, z, 2);
    CHECK((c - std::pow(z, power_oracle(l)) * MatrixXc::Identity(2, 2)).norm() < 1e-15);
  }
  CHECK(std::abs(chi_scalar<double>(0, Complex(0.3)) - 1.0) == 0.0);
}

TEST_CASE("Lebesgue moment matrices") {
  const Measure mu = make_measure<double>(1, MeasureKind::trig_poly, {{0, MatrixXc::Identity(1, 1)}}, true);
  const Blocks gL = moment_matrix(mu, Side::L, 3);
  CHECK((gL.dense() - kTau * MatrixXc::Identity(3, 3)).norm() == 0.0);
  const auto s = structural_checks<double>(gL, moment_matrix(mu, Side::R, 3), upsilon<double>(3, 1),
                                           eta<double>(3, 1));
  CHECK(s.upsilon_commute_L == 0.0);
  CHECK(s.eta_intertwine == 0.0);
}

TEST_CASE("moment matrix entries follow the CMV powers") {
  const Measure mu = random_measure<double>(2, 3, 21);
  const int N = 7, m = 2;
  const Blocks gL = moment_matrix(mu, Side::L, N), gR = moment_matrix(mu, Side::R, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const MatrixXc eL = kTau * mu.coeff(power_oracle(j) - power_oracle(i));
      const MatrixXc eR = kTau * mu.coeff(power_oracle(i) - power_oracle(j));
      CHECK((gL.dense().block(i * m, j * m, m, m) - eL).norm() < 1e-14);
      CHECK((gR.dense().block(i * m, j * m, m, m) - eR).norm() < 1e-14);
    }
}

TEST_CASE("hermitian measures give hermitian moment matrices") {
  const Measure mu = random_hermitian_measure<double>(2, 3, 4);
  for (Side s : {Side::L, Side::R}) {
    const MatrixXc g = moment_matrix(mu, s, 10).dense();
    CHECK((g - g.adjoint()).norm() < 1e-14 * g.norm());
  }
}

TEST_CASE("Upsilon and eta act on the CMV vector") {
  const int N = 9, m = 2;
  const MatrixXc U = upsilon<double>(N, m).dense(), E = eta<double>(N, m).dense();
  const int n = (N - 2) * m;
  for (Complex z : {Complex(0.8, 0.3), Complex(-1.3, 0.2)}) {
    const MatrixXc chi = chi_vector<double>(N, z, m);
    CHECK(((U * chi).topRows(n) - z * chi.topRows(n)).norm() < 1e-13);
    CHECK(((E * chi).topRows(n) - chi_vector<double>(N, 1.0 / z, m).topRows(n)).norm() < 1e-13);
  }
  CHECK((E * E - MatrixXc::Identity(N * m, N * m)).norm() == 0.0);
  CHECK(interior_norm<double>(U * U.transpose() - MatrixXc::Identity(N * m, N * m), m, N - 2) == 0.0);
}

TEST_CASE("structural identities on random measures") {
  for (unsigned seed : {1u, 2u, 3u}) {
    const Measure mu = seed == 2 ? random_measure<double>(3, 2, seed) : random_hermitian_measure<double>(2, 3, seed);
    const int N = 12;
    const auto s = structural_checks<double>(moment_matrix(mu, Side::L, N), moment_matrix(mu, Side::R, N),
                                             upsilon<double>(N, mu.m), eta<double>(N, mu.m));
    CHECK(s.upsilon_commute_L < 1e-12 * s.g_norm);
    CHECK(s.upsilon_commute_R < 1e-12 * s.g_norm);
    CHECK(s.eta_intertwine < 1e-12 * s.g_norm);
    CHECK(s.eta_upsilon < 1e-14);
  }
}

TEST_CASE("block matrix utilities") {
  MatrixXc d(2, 2);
  d << 1, 2, 3, 4;
  const MatrixXc b = block_diag_repeat<double>(d, 3);
  CHECK(b.rows() == 6);
  CHECK((b.block(2, 2, 2, 2) - d).norm() == 0.0);
  CHECK(b.block(0, 2, 2, 2).norm() == 0.0);
  CHECK_THROWS_AS(Blocks(MatrixXc::Zero(3, 3), 2), Error);
  const Blocks g(MatrixXc::Identity(6, 6), 2);
  CHECK(g.blocks() == 3);
  CHECK(g.leading(2).dense().rows() == 4);
}

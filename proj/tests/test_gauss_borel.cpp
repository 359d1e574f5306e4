#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "molpuc/molpuc.hpp"

using namespace molpuc;

namespace {

const double kTau = 2 * std::numbers::pi;

Measure lebesgue() {
  return make_measure<double>(1, MeasureKind::trig_poly, {{0, MatrixXc::Identity(1, 1)}}, true);
}

double rel(const MatrixXc& a, const MatrixXc& b) { return (a - b).norm() / std::max(a.norm(), b.norm()); }

MatrixXc random_blocks(int N, int m, unsigned seed) {
  std::srand(seed);
  MatrixXc a = MatrixXc::Random(N * m, N * m);
  return a + 3.0 * MatrixXc::Identity(N * m, N * m);
}

}  // namespace

TEST_CASE("Lebesgue factorization is trivial") {
  const Factorization<double> f = block_lu(moment_matrix(lebesgue(), Side::L, 4), Side::L);
  CHECK((f.S1() - MatrixXc::Identity(4, 4)).norm() == 0.0);
  for (const auto& d : f.D) CHECK(std::abs(d(0, 0) - kTau) < 1e-14);
}

TEST_CASE("Schur complements of small matrices") {
  MatrixXc a(2, 2);
  a << 2, 0, 0, 3;
  CHECK(std::abs(schur_complement(Blocks(a, 1), 1)(0, 0) - 3.0) == 0.0);
  a << 1, 1, 1, 2;
  CHECK(std::abs(schur_complement(Blocks(a, 1), 1)(0, 0) - 1.0) < 1e-15);
  a << 0, 1, 1, 2;
  CHECK_THROWS(schur_complement(Blocks(a, 1), 1));
}

TEST_CASE("Schur complement chain reproduces the pivots") {
  const Blocks g(random_blocks(3, 2, 11), 2);
  for (Side s : {Side::L, Side::R}) {
    const Factorization<double> f = block_lu(g, s);
    for (int l = 0; l < 3; ++l) CHECK(rel(f.D[l], schur_complement(g.leading(l + 1), l)) < 1e-13);
  }
}

TEST_CASE("reconstruction and triangular structure") {
  const Measure mu = random_measure<double>(2, 3, 6);
  const int N = 16, m = 2;
  const CmvSystem S = build_system(mu, N);
  CHECK((S.S1i * S.S2 - S.gL.dense()).norm() < 1e-11 * S.gL.dense().norm());
  CHECK((S.Z2 * S.Z1i - S.gR.dense()).norm() < 1e-11 * S.gR.dense().norm());
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (j > i) {
        CHECK(S.blk(S.S1, i, j).norm() == 0.0);
        CHECK(S.blk(S.Z2, i, j).norm() == 0.0);
      }
      if (j < i) {
        CHECK(S.blk(S.S2, i, j).norm() == 0.0);
        CHECK(S.blk(S.Z1, i, j).norm() == 0.0);
      }
    }
  for (int l = 0; l < N; ++l) {
    CHECK((S.blk(S.S1, l, l) - MatrixXc::Identity(m, m)).norm() < 1e-14);
    CHECK((S.blk(S.Z2, l, l) - MatrixXc::Identity(m, m)).norm() < 1e-14);
    CHECK(rel(S.blk(S.S2, l, l), S.fL.D[l]) < 1e-14);
    CHECK(rel(S.blk(S.Z1, l, l), S.fR.D[l].inverse()) < 1e-12);
  }
}

TEST_CASE("hermitian duality of the normalized factors") {
  const Measure mu = random_hermitian_measure<double>(2, 2, 17);
  const CmvSystem S = build_system(mu, 12);
  const MatrixXc S2hat = S.fL.block_diag_D_inverse() * S.S2;
  const MatrixXc Z1hat = S.Z1 * S.fR.block_diag_D();
  CHECK(rel(S.S1.adjoint(), S2hat.inverse()) < 1e-11);
  CHECK(rel(S.Z2.adjoint(), Z1hat.inverse()) < 1e-11);
  for (int l = 0; l < 12; ++l) CHECK((S.fL.D[l] - S.fL.D[l].adjoint()).norm() < 1e-12 * S.fL.D[l].norm());
}

TEST_CASE("factorization is causal in N") {
  const Measure mu = random_measure<double>(2, 2, 31);
  const CmvSystem a = build_system(mu, 10), b = build_system(mu, 14);
  const int n = 20;
  CHECK(rel(b.S1.topLeftCorner(n, n), a.S1) < 1e-12);
  CHECK(rel(b.S2.topLeftCorner(n, n), a.S2) < 1e-12);
  CHECK(rel(b.Z1.topLeftCorner(n, n), a.Z1) < 1e-12);
  CHECK(rel(b.Z2.topLeftCorner(n, n), a.Z2) < 1e-12);
}

TEST_CASE("quasi-definiteness scan") {
  const auto v = quasi_definiteness_scan(moment_matrix(lebesgue(), Side::L, 5));
  REQUIRE(v.size() == 5);
  for (const auto& l : v) {
    CHECK(l.pass);
    CHECK(std::abs(l.det - std::pow(kTau, l.level)) < 1e-10 * std::pow(kTau, l.level));
  }
  for (const auto& l : quasi_definiteness_scan(moment_matrix(random_hermitian_measure<double>(2, 2, 3), Side::L, 8)))
    CHECK(l.pass);
  // c_0 = 0: the first leading block vanishes
  const Measure zero0 = make_measure<double>(
      1, MeasureKind::moment_list,
      {{-2, MatrixXc::Constant(1, 1, 0.1)}, {-1, MatrixXc::Constant(1, 1, 0.5)}, {0, MatrixXc::Zero(1, 1)},
       {1, MatrixXc::Constant(1, 1, 0.5)}, {2, MatrixXc::Constant(1, 1, 0.1)}},
      true);
  const Blocks g = moment_matrix(zero0, Side::L, 3);
  CHECK_FALSE(quasi_definiteness_scan(g)[0].pass);
  try {
    block_lu(g, Side::L);
    FAIL("expected a quasi-definiteness failure");
  } catch (const QuasiDefinitenessError& e) {
    CHECK(e.level() == 0);
  }
}

TEST_CASE("pivot condition numbers are reported") {
  const CmvSystem S = build_system(random_measure<double>(2, 2, 2), 6);
  REQUIRE(S.fL.cond.size() == 6);
  for (double c : S.fL.cond) CHECK(c >= 1.0);
}

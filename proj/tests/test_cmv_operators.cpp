#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "molpuc/cmv_operators.hpp"
#include "molpuc/measure_io.hpp"

using namespace molpuc;

namespace {

Measure lebesgue() {
  return make_measure<double>(1, MeasureKind::trig_poly, {{0, MatrixXc::Identity(1, 1)}}, true);
}

// stacked values of a family at z, N blocks tall
MatrixXc stack(const CmvSystem& S, MatrixXc (CmvSystem::*f)(int, Complex) const, Complex z) {
  MatrixXc v(S.N * S.m, S.m);
  for (int l = 0; l < S.N; ++l) v.middleRows(l * S.m, S.m) = (S.*f)(l, z);
  return v;
}

}  // namespace

TEST_CASE("Lebesgue operators are the bare shifts") {
  const CmvSystem S = build_system(lebesgue(), 10);
  const MatrixXc U = upsilon<double>(10, 1).dense();
  const CMVOperator JL = dress(S, OpKind::JL), JR = dress(S, OpKind::JR);
  const int n = JL.interior();
  CHECK((JL.payload.dense() - U).topLeftCorner(n, n).norm() < 1e-14);
  CHECK((JR.payload.dense() - U).topLeftCorner(n, n).norm() < 1e-14);
  CHECK(band_defect(JL) < 1e-14);
}

TEST_CASE("J^L has the CMV vector of phi1L as eigenvector") {
  for (unsigned seed : {1u, 2u}) {
    const Measure mu = seed == 1 ? random_hermitian_measure<double>(2, 2, seed) : random_measure<double>(2, 2, seed);
    const CmvSystem S = build_system(mu, 12);
    const CMVOperator JL = dress(S, OpKind::JL), JR = dress(S, OpKind::JR);
    for (Complex z : {Complex(0.7, 0.4), Complex(-1.2, 0.5)}) {
      const int n = JL.interior() * S.m;
      const MatrixXc v = stack(S, &CmvSystem::L1, z);
      const MatrixXc Jv = JL.payload.dense() * v;
      CHECK((Jv - z * v).topRows(n).norm() < 1e-10 * v.topRows(n).norm());
      // the right family as a row vector: Φ1^R J^R = z^{-1} Φ1^R
      MatrixXc w(S.m, S.N * S.m);
      for (int l = 0; l < S.N; ++l) w.middleCols(l * S.m, S.m) = S.R1(l, z);
      const MatrixXc wJ = w * JR.payload.dense();
      const int nr = JR.interior() * S.m;
      CHECK((wJ - w / z).leftCols(nr).norm() < 1e-10 * w.leftCols(nr).norm());
    }
    for (OpKind k : {OpKind::JL, OpKind::JR, OpKind::JLinv, OpKind::JRinv}) CHECK(band_defect(dress(S, k)) < 1e-12);
    CHECK(band_defect(dress(S, OpKind::C, 0)) < 1e-12);
    CHECK(band_defect(dress(S, OpKind::C, -1)) < 1e-12);
  }
}

TEST_CASE("operator identities, routes and closed-form entries") {
  const CmvSystem S = build_system(random_measure<double>(2, 2, 3), 12);
  const CheckResult ops = operator_identities(S);
  CHECK(ops.pass());
  CHECK(ops.max_residual() < 1e-9);
  const CheckResult b = appendixB_check(S);
  CHECK(b.max_residual() < 1e-9);
  // the typeset special rows disagree with the dressed operators
  REQUIRE_FALSE(b.errata.empty());
  double worst = 0;
  for (const auto& e : b.errata) worst = std::max(worst, e.residual);
  CHECK(worst > 1e-3);
}

TEST_CASE("recursions of the families and Szegő polynomials") {
  const auto zs = ring_samples({0.8, 1.0, 1.25}, 3, 5);
  for (unsigned seed : {4u, 5u}) {
    const Measure mu = seed == 4 ? random_hermitian_measure<double>(2, 3, seed) : random_measure<double>(2, 2, seed);
    const CmvSystem S = build_system(mu, 12);
    CHECK(recursion_residuals(S, zs).max_residual() < 1e-9);
    CHECK(szego_recursion_check(S, zs).max_residual() < 1e-9);
    CHECK(eigen_relations(S, zs).max_residual() < 1e-10);
  }
}

TEST_CASE("Szegő recursions on the Bernstein-Szegő weight") {
  const Measure bs = load_measure(std::string(MOLPUC_DATA_DIR) + "/bernstein_szego.json");
  const CmvSystem S = build_system(bs, 12);
  CHECK(szego_recursion_check(S, ring_samples({0.8, 1.0, 1.25}, 3, 5)).max_residual() < 1e-10);
}

TEST_CASE("routes that disagree are rejected") {
  CmvSystem S = build_system(random_measure<double>(2, 2, 6), 8);
  S.S2(0, 1) += 1.0;
  CHECK_THROWS_AS(dress(S, OpKind::JL), ConsistencyError);
  CHECK_NOTHROW(dress(S, OpKind::JL, 0, false));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "molpuc/check.hpp"
#include "molpuc/measure_io.hpp"
#include "molpuc/molpuc.hpp"

using namespace molpuc;

namespace {

const double kTau = 2 * std::numbers::pi;

Measure lebesgue(int m = 1) {
  return make_measure<double>(m, MeasureKind::trig_poly, {{0, MatrixXc::Identity(m, m)}}, true);
}

double rel(const MatrixXc& a, const MatrixXc& b) {
  return (a - b).norm() / std::max({a.norm(), b.norm(), 1e-300});
}

int power(int l) { return l == 0 ? 0 : (l % 2 ? -(l + 1) / 2 : l / 2); }

// monic P_n(0) from the normal equations Σ_j a_j <z^j, z^k> = -<z^n, z^k>, k < n, with the
// Bernstein-Szegő moments written in closed form
std::vector<double> yule_walker_p0(double a, int n_max) {
  auto c = [&](int n) { return std::pow(a, std::abs(n)) / (1 - a * a); };
  std::vector<double> out{1.0};
  for (int n = 1; n < n_max; ++n) {
    Eigen::MatrixXd G(n, n);
    Eigen::VectorXd rhs(n);
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) G(k, j) = c(k - j);
      rhs(k) = -c(k - n);
    }
    out.push_back(G.partialPivLu().solve(rhs)(0));
  }
  return out;
}

}  // namespace

TEST_CASE("Lebesgue families are the CMV basis") {
  const CmvSystem S = build_system(lebesgue(), 8);
  const Complex z(0.6, 0.9);
  for (int l = 0; l < 8; ++l) {
    const Complex chi = std::pow(z, power(l));
    CHECK(std::abs(S.L1(l, z)(0, 0) - chi) < 1e-14);
    CHECK(std::abs(S.L2(l, z)(0, 0) - chi / kTau) < 1e-14);
    CHECK(std::abs(S.R1(l, z)(0, 0) - chi / kTau) < 1e-14);
    CHECK(std::abs(S.R2(l, z)(0, 0) - chi) < 1e-14);
    CHECK(std::abs(S.P(Side::L, 1, l, z)(0, 0) - std::pow(z, l)) < 1e-13);
    CHECK(std::abs(S.hL(l)(0, 0) - kTau) < 1e-14);
    if (l > 0) CHECK(std::abs(S.x(l)(0, 0)) < 1e-15);
  }
  CHECK(std::abs(S.L1(2, Complex(1.0))(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(schur_phi1L(S.gL, 2, Complex(1.0))(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("power support and leading coefficients") {
  const CmvSystem S = build_system(random_measure<double>(2, 2, 5), 10);
  const MatrixXc I = MatrixXc::Identity(2, 2);
  for (int l = 0; l < 5; ++l) {
    const Poly& e = S.fam.phi1L[2 * l];
    CHECK(e.min_power() >= -l);
    CHECK(e.max_power() <= l);
    CHECK((e.coeff(l) - I).norm() < 1e-13);
    const Poly& o = S.fam.phi1L[2 * l + 1];
    CHECK(o.min_power() >= -l - 1);
    CHECK(o.max_power() <= l);
    CHECK((o.coeff(-l - 1) - I).norm() < 1e-13);
    for (const auto* f : {&S.fam.phi2L, &S.fam.phi1R, &S.fam.phi2R}) {
      CHECK((*f)[2 * l].min_power() >= -l);
      CHECK((*f)[2 * l + 1].max_power() <= l);
    }
  }
}

TEST_CASE("hermitian case: phi2 = D^-1 phi1") {
  const CmvSystem S = build_system(random_hermitian_measure<double>(2, 2, 8), 10);
  const Complex z(0.3, -1.1);
  for (int l = 0; l < 10; ++l) CHECK(rel(S.L2(l, z), S.fL.D[l].inverse() * S.L1(l, z)) < 1e-12);
}

TEST_CASE("biorthogonality by quadrature") {
  CHECK(biorthogonality_check(build_system(lebesgue(), 8), 8) < 1e-14);
  for (unsigned seed : {3u, 4u}) {
    const CmvSystem S = build_system(random_hermitian_measure<double>(2, 3, seed), 12);
    CHECK(biorthogonality_check(S, 12) < 1e-10);
  }
  CHECK(biorthogonality_check(build_system(random_measure<double>(2, 2, 7), 12), 12) < 1e-10);
}

TEST_CASE("Schur complement routes agree with the factorization") {
  const auto zs = ring_samples({0.7, 1.0, 1.4}, 4, 99);
  for (unsigned seed : {1u, 2u}) {
    const Measure mu = seed == 1 ? random_hermitian_measure<double>(2, 2, seed) : random_measure<double>(2, 2, seed);
    const CmvSystem S = build_system(mu, 10);
    for (int k = 0; k < 10; ++k) {
      const Complex z = zs[k];
      for (int l = 0; l < 10; ++l) {
        CHECK(rel(S.L1(l, z), schur_phi1L(S.gL, l, z)) < 1e-10);
        CHECK(rel(S.L2d(l, z), schur_phi2L_dagger(S.gL, l, z)) < 1e-10);
        CHECK(rel(S.R1(l, z), schur_phi1R(S.gR, l, z)) < 1e-10);
        CHECK(rel(S.R2d(l, z), schur_phi2R_dagger(S.gR, l, z)) < 1e-10);
        CHECK(rel(S.P(Side::L, 1, l, z), schur_szego_L1(S.gL, S.gR, l, z)) < 1e-10);
      }
    }
  }
}

TEST_CASE("Szegő polynomials are monic and tied to the families") {
  const CmvSystem S = build_system(random_measure<double>(2, 2, 12), 10);
  CHECK(szego_monic_defect(S.szego) < 1e-12);
  const Complex z(0.5, 0.8);
  for (int l = 0; l < 5; ++l)
    CHECK(rel(S.P(Side::L, 1, 2 * l, z), std::pow(z, l) * S.L1(2 * l, z)) < 1e-12);
}

TEST_CASE("Bernstein-Szegő values against normal equations") {
  const Measure bs = load_measure(std::string(MOLPUC_DATA_DIR) + "/bernstein_szego.json");
  const CmvSystem S = build_system(bs, 12);
  const auto p0 = yule_walker_p0(0.5, 12);
  CHECK(p0[1] == doctest::Approx(-0.5).epsilon(1e-13));
  for (int l = 1; l < 12; ++l) {
    CHECK(std::abs(S.P(Side::L, 1, l, 0.0)(0, 0) - p0[l]) < 1e-11);
    CHECK(std::abs(S.x(l)(0, 0) - p0[l]) < 1e-11);
    CHECK(std::abs(S.xr(l)(0, 0) - p0[l]) < 1e-11);
  }
}

TEST_CASE("Verblunsky table consistency") {
  for (unsigned seed : {5u, 6u}) {
    const bool herm = seed == 5;
    const Measure mu = herm ? random_hermitian_measure<double>(2, 2, seed) : random_measure<double>(2, 2, seed);
    const CmvSystem S = build_system(mu, 12);
    CHECK(verblunsky_routes(S).max() < 1e-10);
    for (double r : quasi_norm_relations(S)) CHECK(r < 1e-11);
    CHECK(norm_integral_residual(S, 12) < 1e-10);
    // quasi-norm assignment from the pivots
    for (int l = 0; l < 6; ++l) {
      CHECK(rel(S.hL(2 * l), S.fL.D[2 * l]) < 1e-14);
      CHECK(rel(S.hR(2 * l), S.fR.D[2 * l]) < 1e-14);
      if (2 * l + 1 < 12) {
        CHECK(rel(S.hL(2 * l + 1), S.fR.D[2 * l + 1]) < 1e-14);
        CHECK(rel(S.hR(2 * l + 1), S.fL.D[2 * l + 1]) < 1e-14);
      }
    }
    if (herm)
      for (int l = 1; l < 12; ++l) {
        CHECK((S.x(l) - S.yl(l).adjoint()).norm() < 1e-10);
        CHECK((S.xr(l) - S.yr(l).adjoint()).norm() < 1e-10);
      }
  }
}

TEST_CASE("second kind functions") {
  const CmvSystem L = build_system(lebesgue(), 6);
  const Complex z(1.7, 0.4);
  CHECK(std::abs(second_kind(L, SecondKind::C2L, 0, z)(0, 0) - kTau / z) < 1e-14);
  const CmvSystem S = build_system(random_measure<double>(2, 2, 14), 8);
  const SecondKindSeries ser = second_kind_series(S);
  for (SecondKind k : {SecondKind::C1L, SecondKind::C2L, SecondKind::C1R, SecondKind::C2R})
    for (int l = 0; l < 6; ++l) {
      CHECK(rel(second_kind_cauchy(S, k, l, 2.0, 1), second_kind_partial(ser, k, l, 2.0, 1)) < 1e-9);
      CHECK(rel(second_kind_cauchy(S, k, l, 0.4, 2), second_kind_partial(ser, k, l, 0.4, 2)) < 1e-9);
      for (Complex w : {Complex(2.0), Complex(0.4), Complex(0.9, 0.7)})
        CHECK(rel(second_kind_partial(ser, k, l, w, 1) + second_kind_partial(ser, k, l, w, 2),
                  second_kind(S, k, l, w)) < 1e-9);
    }
  for (int j = 0; j < 8; ++j) CHECK(gamma_series_residual(S, ser, j, Complex(1.5, 0.5)) < 1e-9);
  CHECK_THROWS_AS(second_kind_cauchy(S, SecondKind::C2L, 1, 0.5, 1), DomainError);
  CHECK_THROWS_AS(second_kind_cauchy(S, SecondKind::C2L, 1, 2.0, 2), DomainError);
  CHECK_THROWS_AS(second_kind(S, SecondKind::C2L, 1, 0.0), DomainError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <numbers>

#include "molpuc/measure_io.hpp"

using namespace molpuc;

namespace {

const double kPi = std::numbers::pi;

Measure lebesgue(int m = 1) {
  return make_measure<double>(m, MeasureKind::trig_poly, {{0, MatrixXc::Identity(m, m)}}, true);
}

Measure bundled(const char* name) {
  return load_measure(std::string(MOLPUC_DATA_DIR) + "/" + name + ".json");
}

double max_abs(const MatrixXc& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("Lebesgue Fourier series is the identity") {
  const Measure mu = lebesgue();
  CHECK(std::abs(fourier_series_eval(mu, Complex(0.5))(0, 0) - 1.0) == 0.0);
  CHECK_THROWS_AS(fourier_series_eval(mu, Complex(0)), DomainError);
}

TEST_CASE("exact read-off equals trapezoid moments at M and 2M nodes") {
  const Measure mu = random_hermitian_measure<double>(2, 3, 5);
  const int n_max = 10, K = mu.bandwidth();
  const int M = 2 * (K + n_max) + 1;
  const Moments exact = compute_moments(mu, n_max);
  const Moments q1 = moments_by_quadrature(mu, n_max, M);
  const Moments q2 = moments_by_quadrature(mu, n_max, 2 * M);
  const Moments qd = moments_by_quadrature(mu, n_max);
  for (int n = -n_max; n <= n_max; ++n) {
    const double s = std::max(1.0, max_abs(exact(n)));
    CHECK(max_abs(exact(n) - q1(n)) < 1e-13 * s);
    CHECK(max_abs(exact(n) - q2(n)) < 1e-13 * s);
    CHECK(max_abs(exact(n) - qd(n)) < 1e-13 * s);
  }
}

TEST_CASE("moments are bit-identical across calls") {
  const Measure mu = random_measure<double>(3, 2, 9);
  const Moments a = compute_moments(mu, 7), b = compute_moments(mu, 7);
  const Moments qa = moments_by_quadrature(mu, 7), qb = moments_by_quadrature(mu, 7);
  for (int n = -7; n <= 7; ++n) {
    CHECK(std::memcmp(a(n).data(), b(n).data(), sizeof(Complex) * a(n).size()) == 0);
    CHECK(std::memcmp(qa(n).data(), qb(n).data(), sizeof(Complex) * qa(n).size()) == 0);
  }
}

TEST_CASE("Fourier series on the circle matches the weight") {
  const Measure mu = random_measure<double>(2, 3, 4);
  for (double th : {0.0, 0.3, 1.7, 4.1}) {
    // independent sum Σ c_n e^{inθ}
    MatrixXc w = MatrixXc::Zero(2, 2);
    for (int n = -3; n <= 3; ++n) w += mu.coeff(n) * std::exp(Complex(0, n * th));
    CHECK(max_abs(fourier_series_eval(mu, std::polar(1.0, th)) - w) < 1e-13);
    CHECK(max_abs(weight_eval(mu, th) - w) < 1e-13);
  }
}

TEST_CASE("moment lists must cover the requested range") {
  const Measure bs = bundled("bernstein_szego");
  CHECK(bs.kind == MeasureKind::moment_list);
  CHECK_NOTHROW(compute_moments(bs, 80));
  CHECK_THROWS(compute_moments(bs, 81));
  CHECK(std::abs(bs.coeff(3)(0, 0) - 4.0 / 3.0 * 0.125) < 1e-15);
}

TEST_CASE("hermitian flag is validated") {
  std::map<int, MatrixXc> c{{0, MatrixXc::Identity(1, 1)}, {1, MatrixXc::Constant(1, 1, 0.2)}};
  CHECK_THROWS_AS(make_measure<double>(1, MeasureKind::trig_poly, c, true), ConfigError);
  c[-1] = MatrixXc::Constant(1, 1, 0.2);
  CHECK_NOTHROW(make_measure<double>(1, MeasureKind::trig_poly, c, true));
  CHECK_THROWS_AS(make_measure<double>(2, MeasureKind::trig_poly, c, false), ConfigError);
}

TEST_CASE("bundled weights are positive definite on the circle") {
  CHECK(min_weight_eigenvalue(bundled("lebesgue")) == doctest::Approx(1.0));
  CHECK(min_weight_eigenvalue(bundled("herm2")) > 0.1);
  CHECK(min_weight_eigenvalue(bundled("bernstein_szego")) == doctest::Approx(4.0 / 9.0).epsilon(1e-9));
  // the non-Hermitian example has a positive definite Hermitian part
  CHECK(min_weight_eigenvalue(bundled("nonherm2")) > 0.1);
  CHECK(bundled("herm2").hermitian);
  CHECK_FALSE(bundled("nonherm2").hermitian);
}

TEST_CASE("linear factor multiplies the weight pointwise") {
  const Measure mu = random_measure<double>(2, 2, 3);
  MatrixXc d = MatrixXc::Zero(2, 2);
  d(0, 0) = Complex(0.2, 0.1);
  d(1, 1) = -0.3;
  for (int sign : {1, -1})
    for (Side side : {Side::L, Side::R}) {
      const Measure s = multiply_linear(mu, d, sign, side);
      for (double th : {0.1, 2.0, 5.5}) {
        const MatrixXc f = MatrixXc::Identity(2, 2) - d * std::polar(1.0, sign * th);
        const MatrixXc w = weight_eval(mu, th);
        const MatrixXc expect = side == Side::L ? MatrixXc(f * w) : MatrixXc(w * f);
        CHECK(max_abs(weight_eval(s, th) - expect) < 1e-14);
      }
    }
}

TEST_CASE("measure JSON round trip and fingerprint") {
  const Measure mu = random_measure<double>(2, 2, 8);
  const Measure back = measure_from_json(nlohmann::json::parse(measure_to_json(mu).dump()));
  CHECK(back.m == 2);
  CHECK(back.coeffs.size() == mu.coeffs.size());
  for (const auto& [n, c] : mu.coeffs) CHECK(max_abs(back.coeff(n) - c) == 0.0);
  CHECK(measure_fingerprint(back) == measure_fingerprint(mu));
  CHECK(measure_fingerprint(mu).size() == 16);
  CHECK(measure_fingerprint(mu) != measure_fingerprint(random_measure<double>(2, 2, 9)));
}

TEST_CASE("malformed configs are rejected") {
  using nlohmann::json;
  auto bad = [](const char* s) { return measure_from_json(json::parse(s)); };
  CHECK_THROWS_AS(bad(R"({"kind": "trig_poly", "coeffs": {"0": [[[1, 0]]]}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"m": 1, "kind": "spline", "coeffs": {"0": [[[1, 0]]]}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"m": 2, "kind": "trig_poly", "coeffs": {"0": [[[1, 0]]]}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"m": 1, "kind": "trig_poly", "coeffs": {"x": [[[1, 0]]]}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"m": 1, "kind": "trig_poly", "coeffs": {"0": [[[1, 0, 2]]]}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"m": 1, "kind": "moment_list", "coeffs": {"1": [[[1, 0]]]}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"m": 1, "kind": "trig_poly", "hermitian": true,
                          "coeffs": {"0": [[[1, 0]]], "1": [[[0.1, 0]]]}})"), ConfigError);
  CHECK_THROWS_AS(load_measure("/nonexistent/measure.json"), ConfigError);
  const Measure ok = bad(R"({"m": 1, "kind": "trig_poly", "coeffs": {"0": [[2]], "-1": [[[0, 1]]]}})");
  CHECK(ok.coeff(-1)(0, 0) == Complex(0, 1));
  CHECK(ok.coeff(0)(0, 0) == Complex(2, 0));
}

TEST_CASE("Lebesgue moment c_0 gives 2π after assembly") {
  const Blocks g = moment_matrix(lebesgue(), Side::L, 1);
  CHECK(g.dense()(0, 0).real() == doctest::Approx(2 * kPi));
}

TEST_CASE("bundled measure fingerprints are frozen") {
  CHECK(measure_fingerprint(bundled("lebesgue")) == "46765e090470e35e");
  CHECK(measure_fingerprint(bundled("bernstein_szego")) == "1b0c6eee9b9ad8ba");
  CHECK(measure_fingerprint(bundled("herm2")) == "358a12e44c1daa12");
  CHECK(measure_fingerprint(bundled("nonherm2")) == "92450d717abe66cd");
}

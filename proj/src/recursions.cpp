#include "molpuc/cmv_operators.hpp"

namespace molpuc {

CheckResult recursion_residuals(const CmvSystem& s, const std::vector<Complex>& zs) {
  CheckResult r;
  r.check = "recursion";
  r.tol = 1e-9;
  const MatrixXc I = s.id();
  auto x = [&](int n) -> MatrixXc { return s.x(n); };
  auto xd = [&](int n) -> MatrixXc { return s.x(n).adjoint(); };
  auto xr = [&](int n) -> MatrixXc { return s.xr(n); };
  auto yr = [&](int n) -> MatrixXc { return s.yr(n); };
  auto a2R = [&](int n) -> MatrixXc { return s.yr(n).adjoint(); };
  auto Q = [&](const MatrixXc& a, const MatrixXc& b) -> MatrixXc { return I - a * b; };

  for (Complex z : zs) {
    const Complex zb = std::conj(z), zi = 1.0 / z, zbi = 1.0 / zb;
    auto L1 = [&](int n) { return s.L1(n, z); };
    auto L2 = [&](int n) { return s.L2(n, z); };
    auto R1 = [&](int n) { return s.R1(n, z); };
    auto R2 = [&](int n) { return s.R2(n, z); };
    auto L2d = [&](int n) { return s.L2d(n, z); };
    auto R2d = [&](int n) { return s.R2d(n, z); };
    auto put = [&](const char* id, int k, const MatrixXc& lhs, const MatrixXc& rhs) {
      r.add(id, {k}, rel_residual(lhs, rhs));
    };
    auto typeset = [&](const char* id, int k, const MatrixXc& lhs, const MatrixXc& rhs) {
      r.add_erratum(id, {k}, rel_residual(lhs, rhs));
    };

    for (int k = 1; 2 * k + 3 < s.N; ++k) {
      const int e = 2 * k, o = 2 * k + 1;
      // z-recursions of the four families
      put("z phi1L even", k, z * L1(e),
          -x(o) * Q(yr(e), x(e)) * L1(e - 1) - x(o) * yr(e) * L1(e) - x(e + 2) * L1(o) + L1(e + 2));
      put("z phi1L odd", k, z * L1(o),
          Q(yr(o), x(o)) * Q(yr(e), x(e)) * L1(e - 1) + Q(yr(o), x(o)) * yr(e) * L1(e) -
              yr(o) * x(e + 2) * L1(o) + yr(o) * L1(e + 2));
      const MatrixXc ss3_head = -a2R(o) * L2(e - 1) - a2R(o) * xd(e) * L2(e);
      const MatrixXc ss3_tail = Q(a2R(o), xd(o)) * Q(a2R(e + 2), xd(e + 2)) * L2(e + 2);
      put("z phi2L even", k, z * L2(e), ss3_head - Q(a2R(o), xd(o)) * a2R(e + 2) * L2(o) + ss3_tail);
      typeset("z phi2L even", k, z * L2(e), ss3_head - Q(a2R(o), xd(o)) * L2(o) + ss3_tail);
      put("z phi2L odd", k, z * L2(o),
          L2(e - 1) + xd(e) * L2(e) - xd(o) * a2R(e + 2) * L2(o) +
              xd(o) * Q(a2R(e + 2), xd(e + 2)) * L2(e + 2));
      put("z phi1R even", k, z * R1(e),
          -R1(e - 1) * x(o) - R1(e) * yr(e) * x(o) - R1(o) * x(e + 2) * Q(yr(o), x(o)) +
              R1(e + 2) * Q(yr(e + 2), x(e + 2)) * Q(yr(o), x(o)));
      put("z phi1R odd", k, z * R1(o),
          R1(e - 1) + R1(e) * yr(e) - R1(o) * x(e + 2) * yr(o) +
              R1(e + 2) * Q(yr(e + 2), x(e + 2)) * yr(o));
      put("z phi2R even", k, z * R2(e),
          -R2(e - 1) * Q(a2R(e), xd(e)) * a2R(o) - R2(e) * xd(e) * a2R(o) - R2(o) * a2R(e + 2) +
              R2(e + 2));
      const MatrixXc ss8_rest = R2(e - 1) * Q(a2R(e), xd(e)) * Q(a2R(o), xd(o)) +
                                R2(e) * xd(e) * Q(a2R(o), xd(o)) + R2(e + 2) * xd(o);
      put("z phi2R odd", k, z * R2(o), ss8_rest - R2(o) * a2R(e + 2) * xd(o));
      typeset("z phi2R odd", k, z * R2(o), ss8_rest - R2(o) * a2R(o) * xd(o));

      // φ₂ at 1/z̄ in terms of φ₁
      put("phi2R^+ even at 1/conj(z)", k, s.R2d(e, zbi), Q(yr(e), x(e)) * L1(e - 1) + yr(e) * L1(e));
      put("phi2R^+ odd at 1/conj(z)", k, s.R2d(o, zbi), -x(e + 2) * L1(o) + L1(e + 2));
      put("phi2L^+ even at 1/conj(z)", k, s.L2d(e, zbi), R1(e - 1) + R1(e) * yr(e));
      put("phi2L^+ odd at 1/conj(z)", k, s.L2d(o, zbi), -R1(o) * x(e + 2) + R1(e + 2) * Q(yr(e + 2), x(e + 2)));
      put("z^-1 phi2R^+ even at 1/conj(z)", k, s.R2d(e, zbi) / z, -yr(o) * L1(e) + L1(o));
      put("z^-1 phi2R^+ odd at 1/conj(z)", k, s.R2d(o, zbi) / z, Q(x(o), yr(o)) * L1(e) + x(o) * L1(o));
      put("z^-1 phi2L^+ odd at 1/conj(z)", k, s.L2d(o, zbi) / z, R1(e) + R1(o) * x(o));
      typeset("z^-1 phi2L^+ odd at 1/conj(z)", k, s.L2d(o, zbi) / z, R1(e) + R1(e) * x(o));
      put("z^-1 phi2L^+ even at 1/conj(z)", k, s.L2d(e, zbi) / z, -R1(e) * yr(o) + R1(o) * Q(x(o), yr(o)));

      // complete set: z and z^{-1} for every family
      put("full z phi1L even", k, z * L1(e),
          -x(o) * Q(yr(e), x(e)) * L1(e - 1) - x(o) * yr(e) * L1(e) - x(e + 2) * L1(o) + L1(e + 2));
      put("full z phi1L odd", k, z * L1(o),
          Q(yr(o), x(o)) * Q(yr(e), x(e)) * L1(e - 1) + Q(yr(o), x(o)) * yr(e) * L1(e) -
              yr(o) * x(e + 2) * L1(o) + yr(o) * L1(e + 2));
      const MatrixXc c5_rest = Q(x(e), yr(e)) * Q(x(e - 1), yr(e - 1)) * L1(e - 2) +
                               Q(x(e), yr(e)) * x(e - 1) * L1(e - 1) - x(e) * yr(o) * L1(e);
      put("full z^-1 phi1L even", k, zi * L1(e), c5_rest + x(e) * L1(o));
      typeset("full z^-1 phi1L even", k, zi * L1(e), c5_rest + xd(e) * L1(o));
      put("full z^-1 phi1L odd", k, zi * L1(o),
          -yr(e + 2) * Q(x(o), yr(o)) * L1(e) - yr(e + 2) * x(o) * L1(o) - yr(e + 3) * L1(e + 2) +
              L1(e + 3));
      put("full conj(z) phi2L^+ even", k, zb * L2d(e),
          -L2d(e - 1) * yr(o) - L2d(e) * x(e) * yr(o) - L2d(o) * yr(e + 2) * Q(x(o), yr(o)) +
              L2d(e + 2) * Q(x(e + 2), yr(e + 2)) * Q(x(o), yr(o)));
      put("full conj(z) phi2L^+ odd", k, zb * L2d(o),
          L2d(e - 1) + L2d(e) * x(e) - L2d(o) * yr(e + 2) * x(o) +
              L2d(e + 2) * Q(x(e + 2), yr(e + 2)) * x(o));
      const MatrixXc c10_rest =
          L2d(e - 2) - L2d(e) * x(o) * yr(e) + L2d(o) * Q(yr(o), x(o)) * yr(e);
      put("full 1/conj(z) phi2L^+ even", k, zbi * L2d(e), c10_rest + L2d(e - 1) * yr(e - 1));
      typeset("full 1/conj(z) phi2L^+ even", k, zbi * L2d(e), c10_rest - L2d(e - 1) * yr(e - 1));
      put("full 1/conj(z) phi2L^+ odd", k, zbi * L2d(o),
          -L2d(e) * x(e + 2) - L2d(o) * yr(o) * x(e + 2) -
              L2d(e + 2) * x(e + 3) * Q(yr(e + 2), x(e + 2)) +
              L2d(e + 3) * Q(yr(e + 3), x(e + 3)) * Q(yr(e + 2), x(e + 2)));
      put("full z phi1R even", k, z * R1(e),
          -R1(e - 1) * x(o) - R1(e) * yr(e) * x(o) - R1(o) * x(e + 2) * Q(yr(o), x(o)) +
              R1(e + 2) * Q(yr(e + 2), x(e + 2)) * Q(yr(o), x(o)));
      put("full z phi1R odd", k, z * R1(o),
          R1(e - 1) + R1(e) * yr(e) - R1(o) * x(e + 2) * yr(o) +
              R1(e + 2) * Q(yr(e + 2), x(e + 2)) * yr(o));
      const MatrixXc c14_rest =
          R1(e - 2) + R1(e - 1) * x(e - 1) + R1(o) * Q(x(o), yr(o)) * x(e);
      put("full z^-1 phi1R even", k, zi * R1(e), c14_rest - R1(e) * yr(o) * x(e));
      typeset("full z^-1 phi1R even", k, zi * R1(e), c14_rest - R1(e) * x(e) * yr(o));
      const MatrixXc c15_rest = -R1(e - 2) * yr(e) - R1(e - 1) * x(e - 1) * yr(e) +
                                R1(o) * Q(x(o), yr(o)) * Q(x(e), yr(e));
      put("full z^-1 phi1R odd below", k, zi * R1(e - 1), c15_rest - R1(e) * yr(o) * Q(x(e), yr(e)));
      typeset("full z^-1 phi1R odd below", k, zi * R1(e - 1), c15_rest - R1(e) * xd(o) * Q(x(e), yr(e)));
      const MatrixXc c16_rest = -yr(o) * x(e) * R2d(e) - yr(e + 2) * R2d(o) + R2d(e + 2);
      put("full conj(z) phi2R^+ even", k, zb * R2d(e), c16_rest - yr(o) * Q(x(e), yr(e)) * R2d(e - 1));
      typeset("full conj(z) phi2R^+ even", k, zb * R2d(e), c16_rest - yr(o) * Q(x(e), yr(e)) * R2d(o));
      const MatrixXc c17_rest = Q(x(o), yr(o)) * Q(x(e), yr(e)) * R2d(e - 1) +
                                Q(x(o), yr(o)) * x(e) * R2d(e) + x(o) * R2d(e + 2);
      put("full conj(z) phi2R^+ odd", k, zb * R2d(o), c17_rest - x(o) * yr(e + 2) * R2d(o));
      typeset("full conj(z) phi2R^+ odd", k, zb * R2d(o), c17_rest - x(o) * yr(o) * R2d(o));
      put("full 1/conj(z) phi2R^+ even", k, zbi * R2d(e),
          Q(yr(e), x(e)) * Q(yr(e - 1), x(e - 1)) * R2d(e - 2) +
              Q(yr(e), x(e)) * yr(e - 1) * R2d(e - 1) - yr(e) * x(o) * R2d(e) + yr(e) * R2d(o));
      put("full 1/conj(z) phi2R^+ odd below", k, zbi * R2d(e - 1),
          -x(e) * Q(yr(e - 1), x(e - 1)) * R2d(e - 2) - x(e) * yr(e - 1) * R2d(e - 1) -
              x(o) * R2d(e) + R2d(o));
    }
    // k = 0 rows
    if (s.N >= 3) {
      put("full z phi1L(0)", 0, z * L1(0), -x(1) * L1(0) - x(2) * L1(1) + L1(2));
      typeset("full z phi1L(0)", 0, z * L1(0), -xr(1) * L1(0) - x(2) * L1(1) + L1(2));
      put("full z phi1L(1)", 0, z * L1(1), Q(yr(1), x(1)) * L1(0) - yr(1) * x(2) * L1(1) + yr(1) * L1(2));
      put("full z^-1 phi1L(0)", 0, zi * L1(0), -yr(1) * L1(0) + L1(1));
      put("full conj(z) phi2R^+(0)", 0, zb * R2d(0), -yr(1) * R2d(0) - yr(2) * R2d(1) + R2d(2));
      put("full conj(z) phi2R^+(1)", 0, zb * R2d(1), Q(x(1), yr(1)) * R2d(0) - x(1) * yr(2) * R2d(1) + x(1) * R2d(2));
      typeset("full conj(z) phi2R^+(1)", 0, zb * R2d(1), Q(x(1), yr(1)) * R2d(0) - x(1) * yr(2) * R2d(1) * x(1) * R2d(2));
      put("full 1/conj(z) phi2R^+(0)", 0, zbi * R2d(0), -x(1) * R2d(0) + R2d(1));
    }
  }
  r.collapse();
  return r;
}

CheckResult szego_recursion_check(const CmvSystem& s, const std::vector<Complex>& zs) {
  CheckResult r;
  r.check = "szego";
  r.tol = 1e-9;
  const MatrixXc I = s.id();
  auto x = [&](int n) -> MatrixXc { return s.x(n); };
  auto xr = [&](int n) -> MatrixXc { return s.xr(n); };
  auto yl = [&](int n) -> MatrixXc { return s.yl(n); };
  auto yr = [&](int n) -> MatrixXc { return s.yr(n); };
  for (Complex z : zs) {
    auto P = [&](Side h, int i, int n) { return s.P(h, i, n, z); };
    auto Ps = [&](Side h, int i, int n) { return s.Pstar(h, i, n, z); };
    const Side L = Side::L, R = Side::R;
    for (int l = 1; 2 * l + 2 < s.N; ++l) {
      const int e = 2 * l, o = 2 * l + 1;
      auto put = [&](const char* id, const MatrixXc& lhs, const MatrixXc& rhs) {
        r.add(id, {l}, rel_residual(lhs, rhs));
      };
      put("szego z P^L_1 odd", z * P(L, 1, o) - P(L, 1, e + 2), -x(e + 2) * Ps(R, 2, o));
      put("szego P^R_2* even", Ps(R, 2, e), (I - yr(e) * x(e)) * Ps(R, 2, e - 1) + yr(e) * P(L, 1, e));
      put("szego P^L_2* even", Ps(L, 2, e), Ps(L, 2, e - 1) * (I - xr(e) * yl(e)) + P(R, 1, e) * yl(e));
      put("szego z P^R_1 odd", z * P(R, 1, o) - P(R, 1, e + 2), -Ps(L, 2, o) * xr(e + 2));
      r.add_erratum("szego z P^R_1 odd", {l},
                    rel_residual(z * P(R, 1, o) - P(R, 1, e + 2), -Ps(L, 2, o) * x(e + 2)));
      put("szego P^R_2* odd", Ps(R, 2, o) - Ps(R, 2, e), yr(o) * (z * P(L, 1, e)));
      put("szego P^L_1 odd", P(L, 1, o), (I - x(o) * yr(o)) * (z * P(L, 1, e)) + x(o) * Ps(R, 2, o));
      put("szego P^R_1 odd", P(R, 1, o), z * P(R, 1, e) * (I - yl(o) * xr(o)) + Ps(L, 2, o) * xr(o));
      put("szego P^L_2* odd", Ps(L, 2, e) - Ps(L, 2, o), -z * P(R, 1, e) * yl(o));
    }
  }
  r.collapse();
  return r;
}

}  // namespace molpuc

#include "molpuc/discrete.hpp"

#include <algorithm>
#include <string>

namespace molpuc {

namespace {

MatrixXc inv(const MatrixXc& a) { return a.inverse(); }

MatrixXc ups(int N, int m, int p) {
  const MatrixXc u = upsilon<double>(N, m).dense();
  return p > 0 ? u : MatrixXc(u.transpose());
}

MatrixXc lead(const MatrixXc& a, int m, int n) { return a.topLeftCorner(n * m, n * m); }

double rel_lead(const MatrixXc& a, const MatrixXc& b, int m, int n) {
  const MatrixXc x = lead(a, m, n), y = lead(b, m, n);
  return (x - y).norm() / std::max({1.0, x.norm(), y.norm()});
}

std::string shift_name(const Shift& s) {
  return std::string(1, side_char(s.side)) + (s.sign > 0 ? "+" : "-");
}

void check_shift(const Shift& s, int m) {
  if (s.sign != 1 && s.sign != -1) throw ConfigError("shift sign must be +1 or -1");
  if (s.d.rows() != m || s.d.cols() != m) throw ConfigError("shift parameter must be m x m");
  if (!s.d.isDiagonal()) throw ConfigError("shift parameter must be diagonal");
}

}  // namespace

Measure shift_measure(const Measure& mu, const Shift& s) {
  check_shift(s, mu.m);
  return multiply_linear(mu, s.d, s.sign, s.side);
}

Blocks shift_moment_matrix(const Blocks& g, Side matrix_side, const Shift& s) {
  const int m = g.block_size(), N = g.blocks();
  check_shift(s, m);
  const MatrixXc Dh = block_diag_repeat<double>(s.d, N);
  // Υ g^L ↔ z dμ on the left, g^L Υ ↔ z on the right; g^R sees the opposite power
  const int p = matrix_side == Side::L ? s.sign : -s.sign;
  const MatrixXc F = MatrixXc::Identity(N * m, N * m) - Dh * ups(N, m, p);
  return Blocks(s.side == Side::L ? MatrixXc(F * g.dense()) : MatrixXc(g.dense() * F), m);
}

bool DiscreteFlowParams::hermitian_compatible(double tol) const {
  auto pair = [&](const std::vector<MatrixXc>& a, const std::vector<MatrixXc>& b) {
    if (a.size() != b.size()) return false;
    for (size_t j = 0; j < a.size(); ++j)
      if ((a[j].adjoint() - b[j]).norm() > tol) return false;
    return true;
  };
  return nL_plus == nR_minus && nL_minus == nR_plus && pair(dR_minus, dL_plus) &&
         pair(dR_plus, dL_minus);
}

std::vector<Shift> DiscreteFlowParams::shifts() const {
  std::vector<Shift> out;
  auto add = [&](const std::vector<MatrixXc>& d, int n, Side side, int sign) {
    if (n > int(d.size())) throw ConfigError("discrete flow counter exceeds its sequence");
    for (int j = 0; j < n; ++j) out.push_back({side, sign, d[j]});
  };
  add(dL_plus, nL_plus, Side::L, 1);
  add(dL_minus, nL_minus, Side::L, -1);
  add(dR_plus, nR_plus, Side::R, 1);
  add(dR_minus, nR_minus, Side::R, -1);
  return out;
}

Measure apply_discrete_flows(const Measure& mu, const DiscreteFlowParams& p) {
  Measure out = mu;
  for (const Shift& s : p.shifts()) out = shift_measure(out, s);
  return out;
}

Omegas omegas(const CmvSystem& b, const CmvSystem& t, Side H) {
  Omegas o;
  if (H == Side::L) {
    o.L = t.S2 * b.S2i;
    o.R = b.Z1i * t.Z1;
  } else {
    o.L = t.S1 * b.S1i;
    o.R = b.Z2i * t.Z2;
  }
  return o;
}

CheckResult darboux_check(const Measure& mu, const std::vector<Shift>& shifts, int N) {
  CheckResult r;
  r.check = "darboux";
  r.tol = 1e-9;
  const int m = mu.m;
  const int NE = N + 6;
  const CmvSystem F = build_system(mu, NE);
  const MatrixXc I = MatrixXc::Identity(NE * m, NE * m);
  const MatrixXc U = upsilon<double>(NE, m).dense();
  const MatrixXc JL = F.S1 * U * F.S1i;
  const MatrixXc JR = F.Z1i * U * F.Z1;
  const MatrixXc E = eta<double>(NE, m).dense();
  const MatrixXc C0 = F.Z2i * E * F.S1i;
  const MatrixXc Cm1 = F.Z2i * E * U.transpose() * F.S1i;

  std::vector<Omegas> oms;
  for (const Shift& s : shifts) {
    const std::string nm = shift_name(s);
    const CmvSystem T = build_system(shift_measure(mu, s), NE);
    const Omegas om = omegas(F, T, s.side);
    oms.push_back(om);
    const MatrixXc Dh = block_diag_repeat<double>(s.d, NE);
    const MatrixXc Us = ups(NE, m, s.sign), Um = ups(NE, m, -s.sign);
    const bool left = s.side == Side::L;

    // H' = L: δ = S(I - dΥ^{±1})S^{-1} = L U with U = T S2 S2^{-1}, L^{-1} = T S1 S1^{-1}
    const MatrixXc& SL = left ? F.S1 : F.S2;
    const MatrixXc& SLi = left ? F.S1i : F.S2i;
    const MatrixXc dL = SL * (I - Dh * Us) * SLi;
    const Factorization<double> fl = block_lu(Blocks(lead(dL, m, N + 2), m), Side::L);
    r.add("omega LU upper " + nm, {}, rel_lead(fl.upper, T.S2 * F.S2i, m, N));
    r.add("omega LU lower " + nm, {}, rel_lead(fl.inverse_lower(), T.S1 * F.S1i, m, N));
    // H' = R: δ = Z^{-1}(I - dΥ^{∓1})Z = L U with L = Z2^{-1} T Z2, U^{-1} = Z1^{-1} T Z1
    const MatrixXc& ZR = left ? F.Z2 : F.Z1;
    const MatrixXc& ZRi = left ? F.Z2i : F.Z1i;
    const MatrixXc dR = ZRi * (I - Dh * Um) * ZR;
    const Factorization<double> fr = block_lu(Blocks(lead(dR, m, N + 2), m), Side::R);
    r.add("omega LU lower " + nm + " R", {}, rel_lead(fr.lower, F.Z2i * T.Z2, m, N));
    r.add("omega LU upper " + nm + " R", {}, rel_lead(fr.inverse_upper(), F.Z1i * T.Z1, m, N));

    // δ = I - d^{HH'} (J^{H'})^{±1}
    const MatrixXc PL = SL * Dh * SLi;
    const MatrixXc PR = ZRi * Dh * ZR;
    r.add("delta J^L " + nm, {}, rel_lead(dL, I - PL * (F.S1 * Us * F.S1i), m, N));
    r.add("delta J^R " + nm, {}, rel_lead(dR, I - PR * (F.Z1i * Um * F.Z1), m, N));

    // discrete Lax and intertwiners
    const MatrixXc TJL = T.S1 * U * T.S1i;
    const MatrixXc TJR = T.Z1i * U * T.Z1;
    r.add("Lax J^L " + nm, {}, rel_lead(TJL, om.L * JL * inv(om.L), m, N));
    r.add("Lax J^R " + nm, {}, rel_lead(TJR, inv(om.R) * JR * om.R, m, N));
    r.add("intertwiner C_[0] " + nm, {},
          rel_lead(T.Z2i * E * T.S1i, inv(om.R) * C0 * inv(om.L), m, N));
    r.add("intertwiner C_[-1] " + nm, {},
          rel_lead(T.Z2i * E * U.transpose() * T.S1i, inv(om.R) * Cm1 * inv(om.L), m, N));

    // flip: the δ of the shifted measure is δ_+ δ_-^{-1}
    const MatrixXc& TS = left ? T.S1 : T.S2;
    const MatrixXc& TSi = left ? T.S1i : T.S2i;
    r.add("flip " + nm, {},
          rel_lead(TS * (I - Dh * Us) * TSi, (T.S2 * F.S2i) * inv(T.S1 * F.S1i), m, N));
  }

  // (T_a ω_b) ω_a = (T_b ω_a) ω_b on the left, ω_a (T_a ω_b) = ω_b (T_b ω_a) on the right
  for (size_t a = 0; a < shifts.size(); ++a) {
    for (size_t b = a + 1; b < shifts.size(); ++b) {
      const Shift &sa = shifts[a], &sb = shifts[b];
      const Measure ma = shift_measure(mu, sa), mb = shift_measure(mu, sb);
      const CmvSystem Ta = build_system(ma, NE), Tb = build_system(mb, NE);
      const Omegas Ta_ob = omegas(Ta, build_system(shift_measure(ma, sb), NE), sb.side);
      const Omegas Tb_oa = omegas(Tb, build_system(shift_measure(mb, sa), NE), sa.side);
      const std::string nm = shift_name(sa) + " " + shift_name(sb);
      r.add("ZS left " + nm, {int(a), int(b)},
            rel_lead(Ta_ob.L * oms[a].L, Tb_oa.L * oms[b].L, m, N));
      r.add("ZS right " + nm, {int(a), int(b)},
            rel_lead(oms[a].R * Ta_ob.R, oms[b].R * Tb_oa.R, m, N));
    }
  }
  return r;
}

CheckResult miwa_darboux_consistency(const Measure& mu, const std::vector<Shift>& shifts, int N) {
  CheckResult r;
  r.check = "miwa_darboux";
  r.tol = 1e-12;
  const int m = mu.m;
  const Blocks gL = moment_matrix(mu, Side::L, N + 2);
  const Blocks gR = moment_matrix(mu, Side::R, N + 2);
  for (const Shift& s : shifts) {
    const std::string nm = shift_name(s);
    const Measure ms = shift_measure(mu, s);
    const Blocks mL(lead(shift_moment_matrix(gL, Side::L, s).dense(), m, N), m);
    const Blocks mR(lead(shift_moment_matrix(gR, Side::R, s).dense(), m, N), m);
    const CmvSystem T = build_system(ms, N);
    const double sc = std::max(1.0, T.gL.dense().norm());
    r.add("moment matrix L " + nm, {}, (mL.dense() - T.gL.dense()).norm() / sc);
    r.add("moment matrix R " + nm, {}, (mR.dense() - T.gR.dense()).norm() / sc);
    const Factorization<double> fL = block_lu(mL, Side::L), fR = block_lu(mR, Side::R);
    r.add("factor S1 " + nm, {}, rel_residual(fL.inverse_lower(), T.S1));
    r.add("factor S2 " + nm, {}, rel_residual(fL.upper, T.S2));
    r.add("factor Z1 " + nm, {}, rel_residual(fR.inverse_upper(), T.Z1));
    r.add("factor Z2 " + nm, {}, rel_residual(fR.lower, T.Z2));
  }
  return r;
}

CheckResult miwa_kernel_check(const Measure& mu, const MatrixXc& w, int N,
                              const std::vector<std::pair<Complex, Complex>>& pairs, int l_max) {
  CheckResult r;
  r.check = "miwa_kernels";
  r.tol = 1e-9;
  const int m = mu.m;
  const MatrixXc I = MatrixXc::Identity(m, m);
  l_max = std::min(l_max, (N - 2) / 2);
  const CmvSystem S = build_system(mu, N);
  const CmvSystem Lp = build_system(shift_measure(mu, {Side::L, 1, w}), N);
  const CmvSystem Lm = build_system(shift_measure(mu, {Side::L, -1, w}), N);
  const CmvSystem Rp = build_system(shift_measure(mu, {Side::R, 1, w}), N);
  const CmvSystem Rm = build_system(shift_measure(mu, {Side::R, -1, w}), N);
  auto KL = [](const CmvSystem& s, int l, Complex z, Complex u) {
    MatrixXc k = MatrixXc::Zero(s.m, s.m);
    for (int j = 0; j < l; ++j) k += s.L2d(j, z) * s.L1(j, u);
    return k;
  };
  auto KR = [](const CmvSystem& s, int l, Complex z, Complex u) {
    MatrixXc k = MatrixXc::Zero(s.m, s.m);
    for (int j = 0; j < l; ++j) k += s.R1(j, z) * s.R2d(j, u);
    return k;
  };
  for (const auto& [z, u] : pairs) {
    const Complex zc = std::conj(z), uc = std::conj(u);
    for (int l = 1; l <= l_max; ++l) {
      const int e = 2 * l, o = 2 * l + 1, p = 2 * l - 1;
      r.add("K^L odd, L+", {l}, rel_residual(KL(S, o, z, u),
            KL(Lp, e, z, u) * (I - w * u) + Lp.L2d(e, z) * Lp.hL(e) * inv(S.hL(e)) * S.L1(e, u)));
      r.add("K^R even, L+", {l}, rel_residual(KR(S, e, z, u),
            KR(Lp, p, z, u) * (I - w / uc) + Lp.R1(p, z) * Lp.hL(p) * inv(S.hL(p)) * S.R2d(p, u)));
      r.add("K^L even, L-", {l}, rel_residual(KL(S, e, z, u),
            KL(Lm, p, z, u) * (I - w / u) + Lm.L2d(p, z) * Lm.hR(p) * inv(S.hR(p)) * S.L1(p, u)));
      const MatrixXc base = KR(Lm, e, z, u) * (I - w * uc);
      r.add("K^R odd, L-", {l}, rel_residual(KR(S, o, z, u),
            base + Lm.R1(e, z) * Lm.hR(e) * inv(S.hR(e)) * S.R2d(e, u)));
      r.add_erratum("K^R odd, L- typeset", {l}, rel_residual(KR(S, o, z, u),
            base + Lm.R1(e, z) * Lm.hL(e) * inv(S.hL(e)) * S.R2d(e, u)));
      r.add("K^L even, R+", {l}, rel_residual(KL(S, e, z, u),
            (I - w / zc) * KL(Rp, p, z, u) + S.L2d(p, z) * Rp.L1(p, u)));
      r.add("K^R odd, R+", {l}, rel_residual(KR(S, o, z, u),
            (I - w * z) * KR(Rp, e, z, u) + S.R1(e, z) * Rp.R2d(e, u)));
      r.add("K^L odd, R-", {l}, rel_residual(KL(S, o, z, u),
            (I - w * zc) * KL(Rm, e, z, u) + S.L2d(e, z) * Rm.L1(e, u)));
      r.add("K^R even, R-", {l}, rel_residual(KR(S, e, z, u),
            (I - w / z) * KR(Rm, p, z, u) + S.R1(p, z) * Rm.R2d(p, u)));
    }
  }
  r.collapse();
  return r;
}

CheckResult miwa_scalar_relations(const Measure& mu, const std::vector<Complex>& ws, int N,
                                  int l_max) {
  CheckResult r;
  r.check = "miwa_scalar";
  r.tol = 1e-9;
  const MatrixXc I = MatrixXc::Identity(mu.m, mu.m);
  l_max = std::min(l_max, (N - 2) / 2);
  const CmvSystem S = build_system(mu, N);
  for (Complex w : ws) {
    const CmvSystem P = build_system(shift_measure(mu, {Side::L, 1, w * I}), N);
    const CmvSystem M = build_system(shift_measure(mu, {Side::L, -1, w * I}), N);
    const Complex wc = std::conj(w);
    for (int l = 1; l <= l_max; ++l) {
      const int e = 2 * l, o = 2 * l + 1, p = 2 * l - 1;
      r.add("scalar relation 1", {l}, rel_residual(S.L2d(p, wc) * P.hR(p), S.R1(e, 1.0 / w) * S.hR(e)));
      r.add("scalar relation 2", {l}, rel_residual(M.hR(p) * inv(S.hR(p)) * S.L1(p, w), S.R2d(e, 1.0 / wc)));
      r.add("scalar relation 3", {l}, rel_residual(S.R1(p, w) * M.hL(p), S.L2d(e, 1.0 / wc) * S.hL(e)));
      r.add("scalar relation 4", {l}, rel_residual(P.hL(p) * inv(S.hL(p)) * S.R2d(p, wc), S.L1(e, 1.0 / w)));
      r.add("scalar relation 5", {l}, rel_residual(S.R1(e, 1.0 / w) * P.hR(e), w * S.L2d(o, wc) * S.hR(o)));
      r.add("scalar relation 6", {l}, rel_residual(M.hR(e) * inv(S.hR(e)) * S.R2d(e, 1.0 / wc), w * S.L1(o, w)));
      r.add("scalar relation 7", {l}, rel_residual(S.L2d(e, 1.0 / wc) * M.hL(e), w * S.R1(o, w) * S.hL(o)));
      r.add("scalar relation 8", {l}, rel_residual(P.hL(e) * inv(S.hL(e)) * S.L1(e, 1.0 / w), w * S.R2d(o, wc)));
    }
  }
  r.collapse();
  return r;
}

ElteoremaReport elteorema_reconstruct(const Measure& mu, const std::vector<Complex>& zs,
                                      int l_max, int N) {
  ElteoremaReport out;
  CheckResult& r = out.result;
  r.check = "elteorema";
  r.tol = 1e-7;
  if (N <= 0) N = 2 * l_max + 2;
  if (2 * l_max + 2 > N) throw ConfigError("elteorema needs N >= 2 l_max + 2");
  const MatrixXc I = MatrixXc::Identity(mu.m, mu.m);
  const CmvSystem S = build_system(mu, N);
  auto rel = [](const MatrixXc& a, const MatrixXc& b) {
    return (a - b).norm() / std::max({a.norm(), b.norm(), 1e-300});
  };
  for (Complex z : zs) {
    CmvSystem P, M;
    try {
      P = build_system(shift_measure(mu, {Side::L, 1, I / z}), N);
      M = build_system(shift_measure(mu, {Side::L, -1, z * I}), N);
    } catch (const QuasiDefinitenessError&) {
      out.skipped.push_back(z);
      continue;
    }
    // ∏ over k = hi down to 0 of A(k), or k = 0 up to hi
    auto down = [&](int hi, auto f) {
      MatrixXc a = I;
      for (int k = hi; k >= 0; --k) a = a * f(k);
      return a;
    };
    auto up = [&](int hi, auto f) {
      MatrixXc a = I;
      for (int k = 0; k <= hi; ++k) a = a * f(k);
      return a;
    };
    auto PhL = [&](int k) { return MatrixXc(P.hL(k) * inv(S.hL(k))); };
    auto MhR = [&](int k) { return MatrixXc(M.hR(k) * inv(S.hR(k))); };
    auto hLM = [&](int k) { return MatrixXc(inv(S.hL(k)) * M.hL(k)); };
    auto hRP = [&](int k) { return MatrixXc(inv(S.hR(k)) * P.hR(k)); };
    const Complex zb = 1.0 / std::conj(z);
    for (int l = 1; l <= l_max; ++l) {
      const int e = 2 * l, o = 2 * l + 1;
      const double ld = l;
      r.add("phi1L even", {l}, rel(S.L1(e, z), std::pow(z, ld) * down(e - 1, PhL)));
      r.add("phi1L odd", {l}, rel(S.L1(o, z), std::pow(z, -ld - 1) * down(e, MhR)));
      r.add("phi2L even", {l}, rel(S.L2d(e, zb), std::pow(z, -ld) * up(e - 1, hLM) * inv(S.hL(e))));
      r.add_erratum("phi2L even typeset", {l},
                    rel(S.L2d(e, zb), std::pow(z, -ld) * up(e - 2, hLM) * S.hL(e - 1) *
                                          M.hL(e - 1) * inv(S.hL(e))));
      r.add("phi2L odd", {l}, rel(S.L2d(o, zb), std::pow(z, ld + 1) * up(e, hRP) * inv(S.hR(o))));
      r.add("phi1R even", {l}, rel(S.R1(e, z), std::pow(z, ld) * up(e - 1, hRP) * inv(S.hR(e))));
      r.add("phi1R odd", {l}, rel(S.R1(o, z), std::pow(z, -ld - 1) * up(e, hLM) * inv(S.hL(o))));
      r.add("phi2R even", {l}, rel(S.R2d(e, zb), std::pow(z, -ld) * down(e - 1, MhR)));
      r.add("phi2R odd", {l}, rel(S.R2d(o, zb), std::pow(z, ld + 1) * down(e, PhL)));
    }
  }
  r.collapse();
  return out;
}

}  // namespace molpuc

#include "molpuc/cmv_operators.hpp"

#include <cmath>
#include <functional>
#include <map>

namespace molpuc {

namespace {

MatrixXc upsilon_power(int N, int m, int p) {
  const MatrixXc u = upsilon<double>(N, m).dense();
  MatrixXc r = MatrixXc::Identity(N * m, N * m);
  for (int i = 0; i < std::abs(p); ++i) r = r * (p > 0 ? u : MatrixXc(u.transpose()));
  return r;
}

// interior block pattern of the nonzero entries
bool in_pattern(OpKind kind, int p, int i, int j) {
  switch (kind) {
    case OpKind::JL:
    case OpKind::JR:
      return i % 2 == 0 ? (j >= i - 1 && j <= i + 2) : (j >= i - 2 && j <= i + 1);
    case OpKind::JLinv:
    case OpKind::JRinv:
      return j % 2 == 0 ? (i >= j - 1 && i <= j + 2) : (i >= j - 2 && i <= j + 1);
    case OpKind::C:
    case OpKind::Cinv:
      if (p == 0) return i % 2 == 0 ? (j == i - 1 || j == i) : (j == i || j == i + 1);
      if (p == -1) return i % 2 == 0 ? (j == i || j == i + 1) : (j == i - 1 || j == i);
      return true;
  }
  return true;
}

}  // namespace

std::string op_name(OpKind kind, int p) {
  switch (kind) {
    case OpKind::JL: return "J^L";
    case OpKind::JR: return "J^R";
    case OpKind::JLinv: return "(J^L)^-1";
    case OpKind::JRinv: return "(J^R)^-1";
    case OpKind::C: return "C_[" + std::to_string(p) + "]";
    case OpKind::Cinv: return "C_[" + std::to_string(p) + "]^-1";
  }
  return "?";
}

CMVOperator dress(const CmvSystem& s, OpKind kind, int p, bool throw_on_mismatch) {
  const int N = s.N, m = s.m;
  const MatrixXc u = upsilon<double>(N, m).dense();
  const MatrixXc ut = u.transpose();
  const MatrixXc e = eta<double>(N, m).dense();
  CMVOperator op;
  op.kind = kind;
  op.p = p;
  MatrixXc a, b;
  switch (kind) {
    case OpKind::JL:
      a = s.S1 * u * s.S1i;
      b = s.S2 * u * s.S2i;
      break;
    case OpKind::JR:
      a = s.Z1i * u * s.Z1;
      b = s.Z2i * u * s.Z2;
      break;
    case OpKind::JLinv:
      a = s.S1 * ut * s.S1i;
      b = s.S2 * ut * s.S2i;
      break;
    case OpKind::JRinv:
      a = s.Z1i * ut * s.Z1;
      b = s.Z2i * ut * s.Z2;
      break;
    case OpKind::C: {
      const MatrixXc up = upsilon_power(N, m, p);
      a = s.Z2i * e * up * s.S1i;
      b = s.Z1i * e * up * s.S2i;
      break;
    }
    case OpKind::Cinv: {
      const MatrixXc up = upsilon_power(N, m, -p);
      a = s.S1 * up * e * s.Z2;
      b = s.S2 * up * e * s.Z1;
      break;
    }
  }
  op.margin = (kind == OpKind::C || kind == OpKind::Cinv) ? std::max(2, 2 * std::abs(p) + 1) : 2;
  op.payload = Blocks(std::move(a), m);
  op.alt = Blocks(std::move(b), m);
  const int n = op.interior();
  const double scale = std::max(1.0, interior_norm<double>(op.payload.dense(), m, n));
  op.route_residual =
      interior_norm<double>(op.payload.dense() - op.alt.dense(), m, n) / scale;
  if (throw_on_mismatch && op.route_residual > 1e-9)
    throw ConsistencyError(op_name(kind, p) + ": defining routes disagree by " +
                           std::to_string(op.route_residual));
  return op;
}

double band_defect(const CMVOperator& op) {
  const int n = op.interior(), m = op.payload.block_size();
  const double scale = std::max(1e-300, interior_norm<double>(op.payload.dense(), m, n));
  double worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!in_pattern(op.kind, op.p, i, j))
        worst = std::max(worst, op.payload.block(i, j).norm() / scale);
  return worst;
}

CheckResult operator_identities(const CmvSystem& s) {
  CheckResult r;
  r.check = "operators";
  r.tol = 1e-9;
  const int m = s.m;
  const int n = std::max(s.N - 3, 0);
  std::vector<CMVOperator> ops;
  for (OpKind k : {OpKind::JL, OpKind::JR, OpKind::JLinv, OpKind::JRinv})
    ops.push_back(dress(s, k, 0, false));
  for (int p : {-2, -1, 0, 1, 2}) {
    ops.push_back(dress(s, OpKind::C, p, false));
    ops.push_back(dress(s, OpKind::Cinv, p, false));
  }
  for (const auto& op : ops) {
    r.add("routes " + op_name(op.kind, op.p), {}, op.route_residual);
    if (op.kind != OpKind::C && op.kind != OpKind::Cinv) {
      r.add("band " + op_name(op.kind, op.p), {}, band_defect(op));
    } else if (op.p == 0 || op.p == -1) {
      r.add("band " + op_name(op.kind, op.p), {}, band_defect(op));
    }
  }
  auto find = [&](OpKind k, int p) -> const MatrixXc& {
    for (const auto& op : ops)
      if (op.kind == k && op.p == p) return op.payload.dense();
    throw Error("operator not built");
  };
  auto rel = [&](const MatrixXc& a, const MatrixXc& b) {
    return interior_norm<double>(a - b, m, n) /
           std::max(1.0, interior_norm<double>(b, m, n));
  };
  const MatrixXc I = MatrixXc::Identity(s.N * m, s.N * m);
  const MatrixXc& JR = find(OpKind::JR, 0);
  r.add("J^R = C_[0] C_[1]^-1", {0, 1}, rel(find(OpKind::C, 0) * find(OpKind::Cinv, 1), JR));
  r.add("J^R = C_[-1] C_[0]^-1", {-1, 0}, rel(find(OpKind::C, -1) * find(OpKind::Cinv, 0), JR));
  r.add("J^L (J^L)^-1 = I", {}, rel(find(OpKind::JL, 0) * find(OpKind::JLinv, 0), I));
  r.add("J^R (J^R)^-1 = I", {}, rel(JR * find(OpKind::JRinv, 0), I));
  for (int p : {-2, -1, 0, 1, 2}) {
    // wider band, wider truncation margin
    const int np = std::max(s.N - 2 * std::max(2, 2 * std::abs(p) + 1), 0);
    const MatrixXc d = find(OpKind::C, p) * find(OpKind::Cinv, p) - I;
    r.add("C_[p] C_[p]^-1 = I", {p}, interior_norm<double>(d, m, np) / std::sqrt(double(np * m)));
  }
  return r;
}

namespace {

struct Entry {
  std::string op;
  int di, dj;  // block (2k + di, 2k + dj)
  std::function<MatrixXc(int)> f;
  int kmin = 0;
};

}  // namespace

CheckResult appendixB_check(const CmvSystem& s) {
  CheckResult r;
  r.check = "appendixB";
  r.tol = 1e-9;
  const MatrixXc I = s.id();
  auto x = [&](int n) { return s.x(n); };
  auto xr = [&](int n) { return s.xr(n); };
  auto yl = [&](int n) { return s.yl(n); };
  auto yr = [&](int n) { return s.yr(n); };
  auto hL = [&](int n) { return s.hL(n); };
  auto hR = [&](int n) { return s.hR(n); };
  auto hLi = [&](int n) { return MatrixXc(s.hL(n).inverse()); };
  auto hRi = [&](int n) { return MatrixXc(s.hR(n).inverse()); };
  using F = std::function<MatrixXc(int)>;
  const F one = [&](int) { return I; };

  std::vector<Entry> E = {
      {"J^L", 0, -1, [&](int k) -> MatrixXc { return -hL(2 * k) * xr(2 * k + 1) * hRi(2 * k - 1); }, 1},
      {"J^L", 0, 0, [&](int k) -> MatrixXc { return -hL(2 * k) * xr(2 * k + 1) * yl(2 * k) * hLi(2 * k); }},
      {"J^L", 0, 1, [&](int k) -> MatrixXc { return -x(2 * k + 2); }},
      {"J^L", 0, 2, one},
      {"J^L", 1, -1, [&](int k) -> MatrixXc { return hR(2 * k + 1) * hRi(2 * k - 1); }, 1},
      {"J^L", 1, 0, [&](int k) -> MatrixXc { return hR(2 * k + 1) * yl(2 * k) * hLi(2 * k); }},
      {"J^L", 1, 1, [&](int k) -> MatrixXc { return -yr(2 * k + 1) * x(2 * k + 2); }},
      {"J^L", 1, 2, [&](int k) -> MatrixXc { return yr(2 * k + 1); }},
      {"J^R", 0, -1, [&](int k) -> MatrixXc { return -hR(2 * k) * yl(2 * k + 1) * hLi(2 * k - 1); }, 1},
      {"J^R", 0, 0, [&](int k) -> MatrixXc { return -hR(2 * k) * yl(2 * k + 1) * xr(2 * k) * hRi(2 * k); }},
      {"J^R", 0, 1, [&](int k) -> MatrixXc { return -yr(2 * k + 2); }},
      {"J^R", 0, 2, one},
      {"J^R", 1, -1, [&](int k) -> MatrixXc { return hL(2 * k + 1) * hLi(2 * k - 1); }, 1},
      {"J^R", 1, 0, [&](int k) -> MatrixXc { return hL(2 * k + 1) * xr(2 * k) * hRi(2 * k); }},
      {"J^R", 1, 1, [&](int k) -> MatrixXc { return -x(2 * k + 1) * yr(2 * k + 2); }},
      {"J^R", 1, 2, [&](int k) -> MatrixXc { return x(2 * k + 1); }},
      {"(J^L)^-1", -1, 0, [&](int k) -> MatrixXc { return -yr(2 * k + 1); }, 1},
      {"(J^L)^-1", 0, 0, [&](int k) -> MatrixXc { return -x(2 * k) * yr(2 * k + 1); }},
      {"(J^L)^-1", 1, 0, [&](int k) -> MatrixXc { return -hR(2 * k + 1) * yl(2 * k + 2) * hLi(2 * k); }},
      {"(J^L)^-1", 2, 0, [&](int k) -> MatrixXc { return hL(2 * k + 2) * hLi(2 * k); }},
      {"(J^L)^-1", -1, 1, one, 1},
      {"(J^L)^-1", 0, 1, [&](int k) -> MatrixXc { return x(2 * k); }},
      {"(J^L)^-1", 1, 1, [&](int k) -> MatrixXc { return -hR(2 * k + 1) * yl(2 * k + 2) * xr(2 * k + 1) * hRi(2 * k + 1); }},
      {"(J^L)^-1", 2, 1, [&](int k) -> MatrixXc { return hL(2 * k + 2) * xr(2 * k + 1) * hRi(2 * k + 1); }},
      {"(J^R)^-1", -1, 0, [&](int k) -> MatrixXc { return -x(2 * k + 1); }, 1},
      {"(J^R)^-1", 0, 0, [&](int k) -> MatrixXc { return -yr(2 * k) * x(2 * k + 1); }},
      {"(J^R)^-1", 1, 0, [&](int k) -> MatrixXc { return -hL(2 * k + 1) * xr(2 * k + 2) * hRi(2 * k); }},
      {"(J^R)^-1", 2, 0, [&](int k) -> MatrixXc { return hR(2 * k + 2) * hRi(2 * k); }},
      {"(J^R)^-1", -1, 1, one, 1},
      {"(J^R)^-1", 0, 1, [&](int k) -> MatrixXc { return yr(2 * k); }},
      {"(J^R)^-1", 1, 1, [&](int k) -> MatrixXc { return -hL(2 * k + 1) * xr(2 * k + 2) * yl(2 * k + 1) * hLi(2 * k + 1); }},
      {"(J^R)^-1", 2, 1, [&](int k) -> MatrixXc { return hR(2 * k + 2) * yl(2 * k + 1) * hLi(2 * k + 1); }},
      {"C_[0]", 0, -1, [&](int k) -> MatrixXc { return hR(2 * k) * hRi(2 * k - 1); }, 1},
      {"C_[0]", 0, -1, [&](int k) -> MatrixXc { return I - yr(2 * k) * x(2 * k); }, 1},
      {"C_[0]", 0, 0, [&](int k) -> MatrixXc { return yr(2 * k); }},
      {"C_[0]", 0, 0, [&](int k) -> MatrixXc { return hR(2 * k) * yl(2 * k) * hLi(2 * k); }},
      {"C_[0]", 1, 1, [&](int k) -> MatrixXc { return -x(2 * k + 2); }},
      {"C_[0]", 1, 1, [&](int k) -> MatrixXc { return -hL(2 * k + 1) * xr(2 * k + 2) * hRi(2 * k + 1); }},
      {"C_[0]", 1, 2, one},
      {"C_[0]", 1, 2, [&](int k) -> MatrixXc { return hL(2 * k + 1) * (I - xr(2 * k + 2) * yl(2 * k + 2)) * hLi(2 * k + 2); }},
      {"C_[0]^-1", 0, -1, [&](int k) -> MatrixXc { return hL(2 * k) * hLi(2 * k - 1); }, 1},
      {"C_[0]^-1", 0, -1, [&](int k) -> MatrixXc { return I - x(2 * k) * yr(2 * k); }, 1},
      {"C_[0]^-1", 0, 0, [&](int k) -> MatrixXc { return x(2 * k); }},
      {"C_[0]^-1", 0, 0, [&](int k) -> MatrixXc { return hL(2 * k) * xr(2 * k) * hRi(2 * k); }},
      {"C_[0]^-1", 1, 1, [&](int k) -> MatrixXc { return -yr(2 * k + 2); }},
      {"C_[0]^-1", 1, 1, [&](int k) -> MatrixXc { return -hR(2 * k + 1) * yl(2 * k + 2) * hLi(2 * k + 1); }},
      {"C_[0]^-1", 1, 2, one},
      {"C_[0]^-1", 1, 2, [&](int k) -> MatrixXc { return hR(2 * k + 1) * (I - yl(2 * k + 2) * xr(2 * k + 2)) * hRi(2 * k + 2); }},
      {"C_[-1]", 0, 0, [&](int k) -> MatrixXc { return -yr(2 * k + 1); }},
      {"C_[-1]", 0, 0, [&](int k) -> MatrixXc { return -hR(2 * k) * yl(2 * k + 1) * hLi(2 * k); }},
      {"C_[-1]", 0, 1, one},
      {"C_[-1]", 1, 0, [&](int k) -> MatrixXc { return I - x(2 * k + 1) * yr(2 * k + 1); }},
      {"C_[-1]", 1, 0, [&](int k) -> MatrixXc { return hL(2 * k + 1) * hLi(2 * k); }},
      {"C_[-1]", 1, 1, [&](int k) -> MatrixXc { return x(2 * k + 1); }},
      {"C_[-1]", 1, 1, [&](int k) -> MatrixXc { return hL(2 * k + 1) * xr(2 * k + 1) * hRi(2 * k + 1); }},
      {"C_[-1]^-1", 0, 0, [&](int k) -> MatrixXc { return -x(2 * k + 1); }},
      {"C_[-1]^-1", 0, 0, [&](int k) -> MatrixXc { return -hL(2 * k) * xr(2 * k + 1) * hRi(2 * k); }},
      {"C_[-1]^-1", 0, 1, one},
      {"C_[-1]^-1", 1, 0, [&](int k) -> MatrixXc { return I - yr(2 * k + 1) * x(2 * k + 1); }},
      {"C_[-1]^-1", 1, 0, [&](int k) -> MatrixXc { return hR(2 * k + 1) * hRi(2 * k); }},
      {"C_[-1]^-1", 1, 1, [&](int k) -> MatrixXc { return yr(2 * k + 1); }},
      {"C_[-1]^-1", 1, 1, [&](int k) -> MatrixXc { return hR(2 * k + 1) * yl(2 * k + 1) * hLi(2 * k + 1); }},
  };
  // typeset forms that disagree with the dressed operators
  std::vector<Entry> typeset = {
      {"J^R", 0, -1, [&](int k) -> MatrixXc { return hR(2 * k) * yl(2 * k + 1) * hLi(2 * k - 1); }, 1},
      {"(J^R)^-1", -1, 0, [&](int k) -> MatrixXc { return -xr(2 * k + 1); }, 1},
      {"C_[-1]^-1", 0, 0, [&](int k) -> MatrixXc { return -hL(2 * k) * yl(2 * k + 1) * hRi(2 * k); }},
  };

  std::map<std::string, MatrixXc> ops;
  for (OpKind k : {OpKind::JL, OpKind::JR, OpKind::JLinv, OpKind::JRinv})
    ops[op_name(k)] = dress(s, k, 0, false).payload.dense();
  for (int p : {0, -1}) {
    ops[op_name(OpKind::C, p)] = dress(s, OpKind::C, p, false).payload.dense();
    ops[op_name(OpKind::Cinv, p)] = dress(s, OpKind::Cinv, p, false).payload.dense();
  }
  const int m = s.m;
  const int n = s.N - 2;  // interior blocks
  auto offset = [](int d) { return d == 0 ? std::string() : (d > 0 ? "+" : "") + std::to_string(d); };
  auto run = [&](const std::vector<Entry>& list, bool erratum) {
    for (const auto& e : list) {
      const MatrixXc& M = ops.at(e.op);
      for (int k = e.kmin; 2 * k + 3 < s.N; ++k) {
        const int i = 2 * k + e.di, j = 2 * k + e.dj;
        if (i < 0 || j < 0 || i >= n || j >= n) continue;
        const double res = rel_residual(M.block(i * m, j * m, m, m), e.f(k));
        const std::string id = e.op + " (2k" + offset(e.di) + ",2k" + offset(e.dj) + ")";
        if (erratum)
          r.add_erratum(id + " typeset", {i, j}, res);
        else
          r.add(id, {i, j}, res);
      }
    }
  };
  run(E, false);
  run(typeset, true);
  // the k = 0 rows as typeset
  if (s.N >= 5) {
    auto blk = [&](const std::string& op, int i, int j) { return MatrixXc(ops.at(op).block(i * m, j * m, m, m)); };
    r.add_erratum("J^L (1,1) typeset", {1, 1}, rel_residual(blk("J^L", 1, 1), -xr(2).adjoint() * x(2)));
    r.add_erratum("J^L (1,2) typeset", {1, 2}, rel_residual(blk("J^L", 1, 2), xr(2).adjoint()));
    r.add_erratum("J^R (1,2) typeset", {1, 2}, rel_residual(blk("J^R", 1, 2), x(2)));
  }
  r.collapse();
  return r;
}

CheckResult eigen_relations(const CmvSystem& s, const std::vector<Complex>& zs) {
  CheckResult r;
  r.check = "eigen";
  r.tol = 1e-10;
  const int m = s.m, N = s.N, n = N - 2;
  const CMVOperator JL = dress(s, OpKind::JL, 0, false);
  const CMVOperator JR = dress(s, OpKind::JR, 0, false);
  const CMVOperator JLi = dress(s, OpKind::JLinv, 0, false);
  // rows of J are exact on the interior in the lower-triangular route,
  // columns in the upper-triangular one
  const MatrixXc& JLrow = JL.payload.dense();
  const MatrixXc& JLcol = JL.alt.dense();
  const MatrixXc& JRcol = JR.payload.dense();
  const MatrixXc& JRrow = JR.alt.dense();
  for (Complex z : zs) {
    MatrixXc L1(N * m, m), L2d(m, N * m), R1(m, N * m), R2d(N * m, m);
    for (int l = 0; l < N; ++l) {
      L1.block(l * m, 0, m, m) = s.L1(l, z);
      L2d.block(0, l * m, m, m) = s.L2d(l, z);
      R1.block(0, l * m, m, m) = s.R1(l, z);
      R2d.block(l * m, 0, m, m) = s.R2d(l, z);
    }
    auto top = [&](const MatrixXc& a) { return MatrixXc(a.topRows(n * m)); };
    auto left = [&](const MatrixXc& a) { return MatrixXc(a.leftCols(n * m)); };
    r.add("J^L phi1L = z phi1L", {}, rel_residual(top(JLrow * L1), z * top(L1)));
    r.add("(J^L)^-1 phi1L = z^-1 phi1L", {},
          rel_residual(top(JLi.payload.dense() * L1), top(L1) / z));
    r.add("phi2L^+ J^L = conj(z)^-1 phi2L^+", {},
          rel_residual(left(L2d * JLcol), left(L2d) / std::conj(z)));
    r.add("phi1R J^R = z^-1 phi1R", {}, rel_residual(left(R1 * JRcol), left(R1) / z));
    r.add("J^R phi2R^+ = conj(z) phi2R^+", {},
          rel_residual(top(JRrow * R2d), std::conj(z) * top(R2d)));
  }
  r.collapse();
  return r;
}

}  // namespace molpuc

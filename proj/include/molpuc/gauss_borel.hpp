#pragma once

#include <vector>

#include "molpuc/block_matrix.hpp"

namespace molpuc {

// Side L: g = S1^{-1} S2 with S1 unit lower, S2 upper.
// Side R: g = Z2 Z1^{-1} with Z2 unit lower, Z1 upper.
// lower/upper hold the raw Doolittle factors g = lower * upper.
template <typename Real>
struct Factorization {
  Side side = Side::L;
  int N = 0;
  int m = 0;
  MatX<Real> lower;  // unit lower
  MatX<Real> upper;
  std::vector<MatX<Real>> D;
  std::vector<Real> cond;  // 2-norm condition number of each D_l

  // side L
  MatX<Real> S1() const { return inverse_lower(); }
  const MatX<Real>& S2() const { return upper; }
  // side R
  const MatX<Real>& Z2() const { return lower; }
  MatX<Real> Z1() const { return inverse_upper(); }

  MatX<Real> inverse_lower() const {
    return lower.template triangularView<Eigen::UnitLower>().solve(
        MatX<Real>::Identity(N * m, N * m));
  }
  // diagonal blocks of upper are full, so split off D first: upper = D * (unit upper)
  MatX<Real> inverse_upper() const {
    const MatX<Real> dinv = block_diag_D_inverse();
    const MatX<Real> unit = dinv * upper;
    return unit.template triangularView<Eigen::UnitUpper>().solve(dinv);
  }
  MatX<Real> block_diag_D() const {
    MatX<Real> d = MatX<Real>::Zero(N * m, N * m);
    for (int k = 0; k < N; ++k) d.block(k * m, k * m, m, m) = D[k];
    return d;
  }
  MatX<Real> block_diag_D_inverse() const {
    MatX<Real> d = MatX<Real>::Zero(N * m, N * m);
    for (int k = 0; k < N; ++k) d.block(k * m, k * m, m, m) = D[k].inverse();
    return d;
  }
};

template <typename Real>
Real smallest_singular_value(const MatX<Real>& a) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<MatX<Real>> svd(a);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

// block Doolittle without pivoting
template <typename Real>
Factorization<Real> block_lu(const BlockMatrix<Real>& g, Side side) {
  const int m = g.block_size();
  const int N = g.blocks();
  if (N < 1) throw Error("block_lu: empty matrix");
  const Real scale = g.dense().norm();
  Factorization<Real> f;
  f.side = side;
  f.N = N;
  f.m = m;
  f.lower = MatX<Real>::Identity(N * m, N * m);
  f.upper = g.dense();
  for (int k = 0; k < N; ++k) {
    MatX<Real> pivot = f.upper.block(k * m, k * m, m, m);
    Eigen::JacobiSVD<MatX<Real>> svd(pivot);
    const auto& sv = svd.singularValues();
    const Real smin = sv(m - 1);
    if (!(smin >= Real(1e-10) * scale))
      throw QuasiDefinitenessError(k, "not quasi-definite at level " + std::to_string(k));
    f.D.push_back(pivot);
    f.cond.push_back(sv(0) / smin);
    if (k + 1 == N) break;
    const int rest = (N - k - 1) * m;
    const MatX<Real> mult =
        f.upper.block((k + 1) * m, k * m, rest, m) * Eigen::FullPivLU<MatX<Real>>(pivot).inverse();
    f.lower.block((k + 1) * m, k * m, rest, m) = mult;
    const int cols = (N - k) * m;
    f.upper.block((k + 1) * m, k * m, rest, cols) -=
        mult * f.upper.block(k * m, k * m, m, cols);
    f.upper.block((k + 1) * m, k * m, rest, m).setZero();
  }
  return f;
}

// D - C A^{-1} B for the split of M after p blocks
template <typename Real>
MatX<Real> schur_complement(const BlockMatrix<Real>& M, int p) {
  const int m = M.block_size();
  const int n = M.blocks() * m;
  const int s = p * m;
  if (p == 0) return M.dense();
  const MatX<Real> A = M.dense().topLeftCorner(s, s);
  if (smallest_singular_value<Real>(A) < Real(1e-14) * std::max(Real(1), A.norm()))
    throw Error("schur_complement: leading block is singular");
  Eigen::FullPivLU<MatX<Real>> lu(A);
  return M.dense().bottomRightCorner(n - s, n - s) -
         M.dense().bottomLeftCorner(n - s, s) * lu.solve(M.dense().topRightCorner(s, n - s));
}

template <typename Real>
struct LevelVerdict {
  int level = 0;  // size l of the leading minor g^{[l]}
  Cplx<Real> det;
  Real sigma_min = 0;
  bool pass = false;
};

template <typename Real>
std::vector<LevelVerdict<Real>> quasi_definiteness_scan(const BlockMatrix<Real>& g) {
  const int m = g.block_size();
  const Real scale = g.dense().norm();
  std::vector<LevelVerdict<Real>> out;
  for (int l = 1; l <= g.blocks(); ++l) {
    MatX<Real> a = g.dense().topLeftCorner(l * m, l * m);
    LevelVerdict<Real> v;
    v.level = l;
    v.det = Eigen::PartialPivLU<MatX<Real>>(a).determinant();
    v.sigma_min = smallest_singular_value<Real>(a);
    v.pass = scale > 0 && v.sigma_min >= Real(1e-10) * scale;
    out.push_back(v);
  }
  return out;
}

}  // namespace molpuc

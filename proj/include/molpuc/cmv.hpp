#pragma once

#include <numbers>

#include "molpuc/block_matrix.hpp"
#include "molpuc/measure.hpp"

namespace molpuc {

// CMV exponent: a(0)=0, a(2k)=k, a(2k-1)=-k
constexpr int cmv_power(int l) { return l == 0 ? 0 : (l % 2 == 0 ? l / 2 : -(l + 1) / 2); }

// inverse of cmv_power
constexpr int cmv_index(int power) { return power >= 0 ? 2 * power : -2 * power - 1; }

template <typename Real>
Cplx<Real> chi_scalar(int l, Cplx<Real> z) {
  const int p = cmv_power(l);
  if (p < 0 && z == Cplx<Real>(0)) throw DomainError("chi evaluated at z = 0 with negative power");
  return std::pow(z, p);
}

template <typename Real>
MatX<Real> chi_eval(int l, Cplx<Real> z, int m) {
  return chi_scalar<Real>(l, z) * MatX<Real>::Identity(m, m);
}

// (g^L)_{ij} = 2π c_{a(j)-a(i)},  (g^R)_{ij} = 2π c_{a(i)-a(j)}
template <typename Real>
BlockMatrix<Real> build_moment_matrix(const MomentSet<Real>& c, Side side, int blocks) {
  const int m = c.m;
  BlockMatrix<Real> g(blocks, m);
  const Real two_pi = 2 * std::numbers::pi_v<Real>;
  for (int i = 0; i < blocks; ++i) {
    for (int j = 0; j < blocks; ++j) {
      const int n = side == Side::L ? cmv_power(j) - cmv_power(i) : cmv_power(i) - cmv_power(j);
      if (std::abs(n) > c.n_max)
        throw Error("moment matrix needs c_" + std::to_string(n) + " but n_max = " +
                    std::to_string(c.n_max));
      g.block(i, j) = two_pi * c(n);
    }
  }
  return g;
}

// moments required for an N-block moment matrix
constexpr int moments_needed(int blocks) { return blocks <= 1 ? 0 : blocks - 1; }

template <typename Real>
BlockMatrix<Real> moment_matrix(const MatrixMeasure<Real>& mu, Side side, int blocks) {
  return build_moment_matrix(compute_moments(mu, moments_needed(blocks)), side, blocks);
}

// truncation of Υ: row 1 -> col 0, even row r -> col r+2, odd row r>=3 -> col r-2
template <typename Real>
BlockMatrix<Real> upsilon(int blocks, int m) {
  BlockMatrix<Real> u(blocks, m);
  const MatX<Real> id = MatX<Real>::Identity(m, m);
  for (int r = 0; r < blocks; ++r) {
    int c = -1;
    if (r == 1)
      c = 0;
    else if (r % 2 == 0)
      c = r + 2;
    else
      c = r - 2;
    if (c >= 0 && c < blocks) u.block(r, c) = id;
  }
  return u;
}

// η: (0,0) = I and swaps each pair (2k-1, 2k); a trailing unpaired index stays fixed
template <typename Real>
BlockMatrix<Real> eta(int blocks, int m) {
  BlockMatrix<Real> e(blocks, m);
  const MatX<Real> id = MatX<Real>::Identity(m, m);
  e.block(0, 0) = id;
  for (int k = 1; k < blocks; k += 2) {
    if (k + 1 < blocks) {
      e.block(k, k + 1) = id;
      e.block(k + 1, k) = id;
    } else {
      e.block(k, k) = id;
    }
  }
  return e;
}

// block vector (χ^{(0)}(z), ..., χ^{(n-1)}(z))^T
template <typename Real>
MatX<Real> chi_vector(int n, Cplx<Real> z, int m) {
  MatX<Real> v(n * m, m);
  for (int l = 0; l < n; ++l) v.block(l * m, 0, m, m) = chi_eval<Real>(l, z, m);
  return v;
}

template <typename Real>
struct StructuralResiduals {
  Real upsilon_commute_L = 0;  // Υ g^L - g^L Υ
  Real upsilon_commute_R = 0;
  Real eta_intertwine = 0;     // η g^R - g^L η
  Real eta_upsilon = 0;        // η Υ - Υ^{-1} η
  Real g_norm = 0;
};

// residuals measured on interior blocks 0..N-3
template <typename Real>
StructuralResiduals<Real> structural_checks(const BlockMatrix<Real>& gL, const BlockMatrix<Real>& gR,
                                            const BlockMatrix<Real>& ups,
                                            const BlockMatrix<Real>& et) {
  const int m = gL.block_size();
  const int n = std::max(gL.blocks() - 2, 0);
  const MatX<Real>& u = ups.dense();
  const MatX<Real>& e = et.dense();
  StructuralResiduals<Real> r;
  r.upsilon_commute_L = interior_norm<Real>(u * gL.dense() - gL.dense() * u, m, n);
  r.upsilon_commute_R = interior_norm<Real>(u * gR.dense() - gR.dense() * u, m, n);
  r.eta_intertwine = interior_norm<Real>(e * gR.dense() - gL.dense() * e, m, n);
  r.eta_upsilon = interior_norm<Real>(e * u - u.transpose() * e, m, n);
  r.g_norm = std::max(gL.dense().norm(), gR.dense().norm());
  return r;
}

}  // namespace molpuc

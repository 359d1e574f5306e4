#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "molpuc/cmv.hpp"
#include "molpuc/gauss_borel.hpp"
#include "molpuc/laurent.hpp"

namespace molpuc {

using Poly = LaurentPoly<double>;
using Measure = MatrixMeasure<double>;
using Moments = MomentSet<double>;
using Blocks = BlockMatrix<double>;

struct Families {
  std::vector<Poly> phi1L, phi2L, phi1R, phi2R;
};

// P[side][i-1][n], n = 0..N-1
struct SzegoSet {
  std::array<std::array<std::vector<Poly>, 2>, 2> P;
  const Poly& operator()(Side s, int i, int n) const { return P[int(s)][i - 1][n]; }
};

// index 0 holds the boundary value I for the α's
struct VerblunskyTable {
  std::vector<MatrixXc> x;   // α^L_1
  std::vector<MatrixXc> xr;  // α^R_1
  std::vector<MatrixXc> yl;  // (α^L_2)^†
  std::vector<MatrixXc> yr;  // (α^R_2)^†
  std::vector<MatrixXc> hL, hR;
  double cross_check_residual = 0;
  int size() const { return int(x.size()); }
};

struct CmvSystem {
  Measure mu;
  bool has_measure = false;
  int m = 1;
  int N = 0;
  Blocks gL, gR;
  Factorization<double> fL, fR;
  MatrixXc S1, S2, S1i, S2i;
  MatrixXc Z1, Z2, Z1i, Z2i;
  std::vector<MatrixXc> DL, DR;
  Families fam;
  SzegoSet szego;
  VerblunskyTable V;

  MatrixXc blk(const MatrixXc& a, int i, int j) const { return a.block(i * m, j * m, m, m); }
  MatrixXc id() const { return MatrixXc::Identity(m, m); }

  MatrixXc L1(int l, Complex z) const { return eval(fam.phi1L.at(l), z); }
  MatrixXc L2(int l, Complex z) const { return eval(fam.phi2L.at(l), z); }
  MatrixXc R1(int l, Complex z) const { return eval(fam.phi1R.at(l), z); }
  MatrixXc R2(int l, Complex z) const { return eval(fam.phi2R.at(l), z); }
  // (φ₂^L)^{(l)}(z)^† and (φ₂^R)^{(l)}(z)^†
  MatrixXc L2d(int l, Complex z) const { return eval_adjoint(fam.phi2L.at(l), z); }
  MatrixXc R2d(int l, Complex z) const { return eval_adjoint(fam.phi2R.at(l), z); }
  MatrixXc P(Side s, int i, int n, Complex z) const { return eval(szego(s, i, n), z); }
  // reciprocal (P^H_{i,n})^*(z)
  MatrixXc Pstar(Side s, int i, int n, Complex z) const {
    return eval(reciprocal(szego(s, i, n), n), z);
  }

  const MatrixXc& x(int n) const { return V.x.at(n); }
  const MatrixXc& xr(int n) const { return V.xr.at(n); }
  const MatrixXc& yl(int n) const { return V.yl.at(n); }
  const MatrixXc& yr(int n) const { return V.yr.at(n); }
  const MatrixXc& hL(int n) const { return V.hL.at(n); }
  const MatrixXc& hR(int n) const { return V.hR.at(n); }
};

// moments -> factorizations -> families -> Szegő -> Verblunsky
CmvSystem build_system(const Measure& mu, int N);
CmvSystem build_system(const Moments& c, int N);

Families molpuc_from_factorization(const CmvSystem& sys);
SzegoSet szego_from_molpuc(const Families& fam, const std::vector<MatrixXc>& DL,
                           const std::vector<MatrixXc>& DR);
double szego_monic_defect(const SzegoSet& P);
VerblunskyTable verblunsky_extract(const CmvSystem& sys);

// worst deviation of the four factor-entry routes from P(0)
struct VerblunskyRoutes {
  double s1 = 0, s2 = 0, z2 = 0, z1 = 0;
  double max() const { return std::max({s1, s2, z2, z1}); }
};
VerblunskyRoutes verblunsky_routes(const CmvSystem& sys);

// the eight relations between quasi-norms and Verblunsky matrices, n = 1..N-2
std::vector<double> quasi_norm_relations(const CmvSystem& sys);

// quadrature on the unit circle: (2π/M) Σ f(z_k, w(θ_k))
MatrixXc circle_quadrature(const Measure& mu, int nodes,
                           const std::function<MatrixXc(Complex, const MatrixXc&)>& f);

// max |⟪φ₂^H(j), φ₁^H(k)⟫_H − δ_jk I| over j,k < l_max and both sides
double biorthogonality_check(const CmvSystem& sys, int l_max, int nodes = 0);

// quasi-norms as integrals of the families against monomials
double norm_integral_residual(const CmvSystem& sys, int l_max, int nodes = 128);

// bordered-truncation routes, independent of the factorization
MatrixXc schur_phi1L(const Blocks& gL, int l, Complex z);
MatrixXc schur_phi1L_last_row(const Blocks& gL, int l, Complex z);
MatrixXc schur_phi2L_dagger(const Blocks& gL, int l, Complex z);
MatrixXc schur_phi1R(const Blocks& gR, int l, Complex z);
MatrixXc schur_phi2R_dagger(const Blocks& gR, int l, Complex z);

// P^L_{1,n}(z) from bordered truncations
MatrixXc schur_szego_L1(const Blocks& gL, const Blocks& gR, int n, Complex z);

enum class SecondKind { C1L, C2L, C1R, C2R };
const char* second_kind_name(SecondKind k);

// series coefficients of the second kind functions built from extended moment matrices
struct SecondKindSeries {
  int m = 1, N = 0, Ne = 0;
  MatrixXc S2row, S1inv_col, Z2col, Z1inv_row;
};
SecondKindSeries second_kind_series(const CmvSystem& sys, int extra_blocks = -1);

// which = 1: the part in negative powers (|z| > 1); which = 2: positive powers (|z| < 1)
MatrixXc second_kind_partial(const SecondKindSeries& s, SecondKind kind, int l, Complex z,
                             int which);
// closed form through the Fourier series
MatrixXc second_kind(const CmvSystem& sys, SecondKind kind, int l, Complex z);
// Cauchy integral of the partial function; throws DomainError outside its region
MatrixXc second_kind_cauchy(const CmvSystem& sys, SecondKind kind, int l, Complex z, int which,
                            int nodes = 256);
// Σ_k (g^L)_{jk} χ-series vs 2π z^{-1} F(1/z) χ^{(j)}(1/z)
double gamma_series_residual(const CmvSystem& sys, const SecondKindSeries& s, int j, Complex z);

}  // namespace molpuc

#include "molpuc/molpuc.hpp"

#include <cmath>
#include <numbers>

namespace molpuc {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

MatrixXc sub(const MatrixXc& a, int m, int i, int j) { return a.block(i * m, j * m, m, m); }

Poly make_poly(int m, const char* tag, int l) { return Poly{m, {}, tag, l}; }

// stacked χ^{(j)}(z), j < l
MatrixXc chi_stack(int l, Complex z, int m) { return chi_vector<double>(l, z, m); }

MatrixXc leading_inverse(const Blocks& g, int l) {
  const int m = g.block_size();
  MatrixXc a = g.dense().topLeftCorner(l * m, l * m);
  if (smallest_singular_value<double>(a) < 1e-10 * g.dense().norm())
    throw QuasiDefinitenessError(l, "not quasi-definite at level " + std::to_string(l));
  return Eigen::FullPivLU<MatrixXc>(a).inverse();
}

MatrixXc row_left_of(const Blocks& g, int l) {
  const int m = g.block_size();
  return g.dense().block(l * m, 0, m, l * m);
}
MatrixXc col_above(const Blocks& g, int l) {
  const int m = g.block_size();
  return g.dense().block(0, l * m, l * m, m);
}

// D_l = g^{[l+1]} / g^{[l]}
MatrixXc schur_D(const Blocks& g, int l) { return schur_complement(g.leading(l + 1), l); }

}  // namespace

Families molpuc_from_factorization(const CmvSystem& s) {
  const int m = s.m;
  Families f;
  for (int l = 0; l < s.N; ++l) {
    Poly p1 = make_poly(m, "phi1L", l), p2 = make_poly(m, "phi2L", l);
    Poly r1 = make_poly(m, "phi1R", l), r2 = make_poly(m, "phi2R", l);
    for (int j = 0; j <= l; ++j) {
      const int a = cmv_power(j);
      p1.coeffs[a] = sub(s.S1, m, l, j);
      p2.coeffs[a] = sub(s.S2i, m, j, l).adjoint();
      r1.coeffs[a] = sub(s.Z1, m, j, l);
      r2.coeffs[a] = sub(s.Z2i, m, l, j).adjoint();
    }
    f.phi1L.push_back(std::move(p1));
    f.phi2L.push_back(std::move(p2));
    f.phi1R.push_back(std::move(r1));
    f.phi2R.push_back(std::move(r2));
  }
  return f;
}

SzegoSet szego_from_molpuc(const Families& f, const std::vector<MatrixXc>& DL,
                           const std::vector<MatrixXc>& DR) {
  SzegoSet out;
  auto& L1 = out.P[0][0];
  auto& L2 = out.P[0][1];
  auto& R1 = out.P[1][0];
  auto& R2 = out.P[1][1];
  const int N = int(f.phi1L.size());
  for (int n = 0; n < N; ++n) {
    const Poly a = f.phi1L[n];
    const Poly b = lmul<double>(DL[n].adjoint(), f.phi2L[n]);
    const Poly c = f.phi2R[n];
    const Poly d = rmul<double>(f.phi1R[n], DR[n]);
    if (n % 2 == 0) {
      const int l = n / 2;
      L1.push_back(shift(a, l));
      L2.push_back(shift(b, l));
      R2.push_back(shift(c, l));
      R1.push_back(shift(d, l));
    } else {
      const int l = (n - 1) / 2;
      R2.push_back(reciprocal(shift(a, l + 1), n));
      R1.push_back(reciprocal(shift(b, l + 1), n));
      L1.push_back(reciprocal(shift(c, l + 1), n));
      L2.push_back(reciprocal(shift(d, l + 1), n));
    }
    L1.back().tag = "P^L_1";
    L2.back().tag = "P^L_2";
    R1.back().tag = "P^R_1";
    R2.back().tag = "P^R_2";
  }
  return out;
}

double szego_monic_defect(const SzegoSet& P) {
  double worst = 0;
  for (const auto& side : P.P)
    for (const auto& fam : side)
      for (int n = 0; n < int(fam.size()); ++n) worst = std::max(worst, monic_defect(fam[n], n));
  return worst;
}

VerblunskyTable verblunsky_extract(const CmvSystem& s) {
  VerblunskyTable t;
  const MatrixXc I = s.id();
  for (int n = 0; n < s.N; ++n) {
    if (n == 0) {
      t.x.push_back(I);
      t.xr.push_back(I);
      t.yl.push_back(I);
      t.yr.push_back(I);
    } else {
      t.x.push_back(s.szego(Side::L, 1, n).coeff(0));
      t.xr.push_back(s.szego(Side::R, 1, n).coeff(0));
      t.yl.push_back(s.szego(Side::L, 2, n).coeff(0).adjoint());
      t.yr.push_back(s.szego(Side::R, 2, n).coeff(0).adjoint());
    }
    t.hL.push_back(n % 2 == 0 ? s.DL[n] : s.DR[n]);
    t.hR.push_back(n % 2 == 0 ? s.DR[n] : s.DL[n]);
  }
  return t;
}

VerblunskyRoutes verblunsky_routes(const CmvSystem& s) {
  const int m = s.m;
  const MatrixXc S2hi = s.S2i * s.fL.block_diag_D();  // (D^{-1} S2)^{-1}
  const MatrixXc Z1h = s.Z1 * s.fR.block_diag_D();
  VerblunskyRoutes r;
  auto upd = [](double& w, const MatrixXc& a, const MatrixXc& b) {
    w = std::max(w, (a - b).norm() / std::max(1.0, b.norm()));
  };
  for (int k = 0; 2 * k + 1 < s.N; ++k) {
    upd(r.s1, sub(s.S1, m, 2 * k + 1, 2 * k), s.yr(2 * k + 1));
    upd(r.s2, sub(S2hi, m, 2 * k, 2 * k + 1), s.xr(2 * k + 1));
    upd(r.z2, sub(s.Z2i, m, 2 * k + 1, 2 * k), s.x(2 * k + 1));
    upd(r.z1, sub(Z1h, m, 2 * k, 2 * k + 1), s.yl(2 * k + 1));
  }
  for (int k = 1; 2 * k < s.N; ++k) {
    upd(r.s1, sub(s.S1, m, 2 * k, 2 * k - 1), s.x(2 * k));
    upd(r.s2, sub(S2hi, m, 2 * k - 1, 2 * k), s.yl(2 * k));
    upd(r.z2, sub(s.Z2i, m, 2 * k, 2 * k - 1), s.yr(2 * k));
    upd(r.z1, sub(Z1h, m, 2 * k - 1, 2 * k), s.xr(2 * k));
  }
  return r;
}

std::vector<double> quasi_norm_relations(const CmvSystem& s) {
  std::vector<double> r(8, 0.0);
  const MatrixXc I = s.id();
  auto put = [&](int i, const MatrixXc& v) { r[i] = std::max(r[i], v.norm()); };
  for (int n = 1; n + 1 < s.N; ++n) {
    put(0, s.hR(n) * s.yl(n) - s.yr(n) * s.hL(n));
    put(1, s.hL(n) * s.xr(n + 1) - s.x(n + 1) * s.hR(n));
    put(2, s.x(n) * s.hR(n) - s.hL(n) * s.xr(n));
    put(3, s.yr(n + 1) * s.hL(n) - s.hR(n) * s.yl(n + 1));
    put(4, s.hL(n) - (I - s.x(n) * s.yr(n)) * s.hL(n - 1));
    put(5, s.hR(n) - (I - s.yr(n) * s.x(n)) * s.hR(n - 1));
    put(6, s.hL(n) - s.hL(n - 1) * (I - s.xr(n) * s.yl(n)));
    put(7, s.hR(n) - s.hR(n - 1) * (I - s.yl(n) * s.xr(n)));
  }
  return r;
}

namespace {

void finish_system(CmvSystem& s) {
  s.fL = block_lu(s.gL, Side::L);
  s.fR = block_lu(s.gR, Side::R);
  s.S1 = s.fL.inverse_lower();
  s.S1i = s.fL.lower;
  s.S2 = s.fL.upper;
  s.S2i = s.fL.inverse_upper();
  s.Z2 = s.fR.lower;
  s.Z2i = s.fR.inverse_lower();
  s.Z1i = s.fR.upper;
  s.Z1 = s.fR.inverse_upper();
  s.DL = s.fL.D;
  s.DR = s.fR.D;
  s.fam = molpuc_from_factorization(s);
  s.szego = szego_from_molpuc(s.fam, s.DL, s.DR);
  const double monic = szego_monic_defect(s.szego);
  if (monic > 1e-10)
    throw ConsistencyError("Szego polynomials are not monic (defect " + std::to_string(monic) +
                           ")");
  s.V = verblunsky_extract(s);
  const VerblunskyRoutes routes = verblunsky_routes(s);
  s.V.cross_check_residual = routes.max();
  if (routes.max() > 1e-10)
    throw ConsistencyError("Verblunsky factor-entry routes disagree with P(0) by " +
                           std::to_string(routes.max()));
}

}  // namespace

CmvSystem build_system(const Moments& c, int N) {
  if (N < 1) throw ConfigError("number of blocks must be positive");
  CmvSystem s;
  s.m = c.m;
  s.N = N;
  s.gL = build_moment_matrix(c, Side::L, N);
  s.gR = build_moment_matrix(c, Side::R, N);
  finish_system(s);
  return s;
}

CmvSystem build_system(const Measure& mu, int N) {
  if (N < 1) throw ConfigError("number of blocks must be positive");
  CmvSystem s = build_system(compute_moments(mu, moments_needed(N)), N);
  s.mu = mu;
  s.has_measure = true;
  return s;
}

MatrixXc circle_quadrature(const Measure& mu, int nodes,
                           const std::function<MatrixXc(Complex, const MatrixXc&)>& f) {
  MatrixXc acc;
  for (int k = 0; k < nodes; ++k) {
    const double th = kTwoPi * k / nodes;
    MatrixXc v = f(std::polar(1.0, th), weight_eval(mu, th));
    if (k == 0)
      acc = v;
    else
      acc += v;
  }
  return acc * (kTwoPi / nodes);
}

double biorthogonality_check(const CmvSystem& s, int l_max, int nodes) {
  if (!s.has_measure) throw ConfigError("biorthogonality needs a measure");
  l_max = std::min(l_max, s.N);
  if (nodes <= 0) nodes = 4 * (l_max + s.mu.bandwidth()) + 8;
  const MatrixXc I = s.id();
  double worst = 0;
  // sample the families once
  std::vector<std::vector<MatrixXc>> L1(l_max), L2d(l_max), R1(l_max), R2d(l_max);
  std::vector<MatrixXc> W(nodes);
  for (int k = 0; k < nodes; ++k) {
    const double th = kTwoPi * k / nodes;
    const Complex z = std::polar(1.0, th);
    W[k] = weight_eval(s.mu, th);
    for (int l = 0; l < l_max; ++l) {
      L1[l].push_back(s.L1(l, z));
      L2d[l].push_back(s.L2d(l, z));
      R1[l].push_back(s.R1(l, z));
      R2d[l].push_back(s.R2d(l, z));
    }
  }
  for (int j = 0; j < l_max; ++j) {
    for (int k = 0; k < l_max; ++k) {
      MatrixXc left = MatrixXc::Zero(s.m, s.m), right = MatrixXc::Zero(s.m, s.m);
      for (int q = 0; q < nodes; ++q) {
        left += L1[k][q] * W[q] * L2d[j][q];
        right += R2d[j][q] * W[q] * R1[k][q];
      }
      left *= kTwoPi / nodes;
      right *= kTwoPi / nodes;
      const MatrixXc target = j == k ? I : MatrixXc::Zero(s.m, s.m);
      worst = std::max({worst, (left - target).norm(), (right - target).norm()});
    }
  }
  return worst;
}

double norm_integral_residual(const CmvSystem& s, int l_max, int nodes) {
  if (!s.has_measure) throw ConfigError("quasi-norm integrals need a measure");
  double worst = 0;
  auto cmp = [&](const MatrixXc& h, const std::function<MatrixXc(Complex, const MatrixXc&)>& f) {
    worst = std::max(worst, (h - circle_quadrature(s.mu, nodes, f)).norm() / h.norm());
  };
  for (int l = 0; 2 * l + 1 < std::min(l_max, s.N); ++l) {
    const double lp = l;
    cmp(s.hR(2 * l + 1), [&](Complex z, const MatrixXc& w) -> MatrixXc {
      return s.L1(2 * l + 1, z) * w * std::pow(z, lp + 1);
    });
    cmp(s.hL(2 * l), [&](Complex z, const MatrixXc& w) -> MatrixXc {
      return s.L1(2 * l, z) * w * std::pow(z, -lp);
    });
    cmp(s.hR(2 * l), [&](Complex z, const MatrixXc& w) -> MatrixXc {
      return s.R2d(2 * l, z) * w * std::pow(z, lp);
    });
    cmp(s.hL(2 * l + 1), [&](Complex z, const MatrixXc& w) -> MatrixXc {
      return s.R2d(2 * l + 1, z) * w * std::pow(z, -lp - 1);
    });
  }
  return worst;
}

MatrixXc schur_phi1L(const Blocks& g, int l, Complex z) {
  const int m = g.block_size();
  const MatrixXc lead = chi_eval<double>(l, z, m);
  if (l == 0) return lead;
  return lead - row_left_of(g, l) * leading_inverse(g, l) * chi_stack(l, z, m);
}

MatrixXc schur_phi1L_last_row(const Blocks& g, int l, Complex z) {
  const int m = g.block_size();
  const MatrixXc inv = leading_inverse(g, l + 1);
  return schur_D(g, l) * inv.bottomRows(m) * chi_stack(l + 1, z, m);
}

MatrixXc schur_phi2L_dagger(const Blocks& g, int l, Complex z) {
  const int m = g.block_size();
  MatrixXc lead = std::conj(chi_scalar<double>(l, z)) * MatrixXc::Identity(m, m);
  if (l > 0) lead -= chi_stack(l, z, m).adjoint() * leading_inverse(g, l) * col_above(g, l);
  return lead * schur_D(g, l).inverse();
}

MatrixXc schur_phi1R(const Blocks& g, int l, Complex z) {
  const int m = g.block_size();
  MatrixXc lead = chi_eval<double>(l, z, m);
  if (l > 0) lead -= chi_stack(l, z, m).transpose() * leading_inverse(g, l) * col_above(g, l);
  return lead * schur_D(g, l).inverse();
}

MatrixXc schur_phi2R_dagger(const Blocks& g, int l, Complex z) {
  const int m = g.block_size();
  MatrixXc lead = std::conj(chi_scalar<double>(l, z)) * MatrixXc::Identity(m, m);
  if (l > 0) lead -= row_left_of(g, l) * leading_inverse(g, l) * chi_stack(l, z, m).conjugate();
  return lead;
}

MatrixXc schur_szego_L1(const Blocks& gL, const Blocks& gR, int n, Complex z) {
  if (n % 2 == 0) return std::pow(z, n / 2) * schur_phi1L(gL, n, z);
  // odd degree comes from the right family: z^l (φ₂^R)^{(n)}(1/z̄)^†
  return std::pow(z, (n - 1) / 2) * schur_phi2R_dagger(gR, n, 1.0 / std::conj(z));
}

const char* second_kind_name(SecondKind k) {
  switch (k) {
    case SecondKind::C1L: return "C1L";
    case SecondKind::C2L: return "C2L";
    case SecondKind::C1R: return "C1R";
    case SecondKind::C2R: return "C2R";
  }
  return "?";
}

namespace {

// moment matrix of Ne blocks whose entries past the stored moments read as zero; the rows and
// columns used by the second kind series stay inside the stored range when Ne <= 2K - N
Blocks padded_moment_matrix(const Measure& mu, Side side, int Ne) {
  Moments c{mu.m, std::max(Ne - 1, 0), {}};
  for (int n = -c.n_max; n <= c.n_max; ++n) c.data.push_back(mu.coeff(n));
  return build_moment_matrix(c, side, Ne);
}

}  // namespace

SecondKindSeries second_kind_series(const CmvSystem& s, int extra_blocks) {
  if (!s.has_measure) throw ConfigError("second kind functions need a measure");
  const int K = s.mu.bandwidth();
  int Ne = extra_blocks >= 0 ? s.N + extra_blocks : s.N + 4 * K + 4;
  if (s.mu.kind == MeasureKind::moment_list) Ne = std::min(Ne, 2 * K - s.N);
  Ne = std::max(Ne, s.N);
  const int m = s.m, n = s.N * m;
  const Blocks gLe = padded_moment_matrix(s.mu, Side::L, Ne);
  const Blocks gRe = padded_moment_matrix(s.mu, Side::R, Ne);
  SecondKindSeries r;
  r.m = m;
  r.N = s.N;
  r.Ne = Ne;
  r.S2row = s.S1 * gLe.dense().topRows(n);
  r.S1inv_col = gLe.dense().leftCols(n) * s.S2i;
  r.Z2col = gRe.dense().leftCols(n) * s.Z1;
  r.Z1inv_row = s.Z2i * gRe.dense().topRows(n);
  return r;
}

namespace {

// basis of the two partial functions
Complex basis(int k, Complex z, int which) {
  if (which == 1) return k % 2 == 0 ? std::pow(z, -(k / 2) - 1) : Complex(0);
  return k % 2 == 0 ? Complex(0) : std::pow(z, (k - 1) / 2);
}

}  // namespace

MatrixXc second_kind_partial(const SecondKindSeries& s, SecondKind kind, int l, Complex z,
                             int which) {
  if (z == Complex(0)) throw DomainError("second kind function at z = 0");
  const int m = s.m;
  MatrixXc acc = MatrixXc::Zero(m, m);
  for (int k = 0; k < s.Ne; ++k) {
    const Complex v = basis(k, z, which);
    if (v == Complex(0)) continue;
    switch (kind) {
      case SecondKind::C2L: acc += sub(s.S2row, m, l, k) * v; break;
      case SecondKind::C1L: acc += sub(s.S1inv_col, m, k, l).adjoint() * v; break;
      case SecondKind::C2R: acc += v * sub(s.Z2col, m, k, l); break;
      case SecondKind::C1R: acc += v * sub(s.Z1inv_row, m, l, k).adjoint(); break;
    }
  }
  return acc;
}

MatrixXc second_kind(const CmvSystem& s, SecondKind kind, int l, Complex z) {
  if (!s.has_measure) throw ConfigError("second kind functions need a measure");
  if (z == Complex(0)) throw DomainError("second kind function at z = 0");
  const Complex zi = 1.0 / z;
  const Complex pre = kTwoPi / z;
  switch (kind) {
    case SecondKind::C1L: return pre * s.L2(l, zi) * fourier_series_eval_dagger(s.mu, z);
    case SecondKind::C2L: return pre * s.L1(l, zi) * fourier_series_eval(s.mu, zi);
    case SecondKind::C1R: return pre * fourier_series_eval_dagger(s.mu, z) * s.R2(l, zi);
    case SecondKind::C2R: return pre * fourier_series_eval(s.mu, zi) * s.R1(l, zi);
  }
  return {};
}

MatrixXc second_kind_cauchy(const CmvSystem& s, SecondKind kind, int l, Complex z, int which,
                            int nodes) {
  if (!s.has_measure) throw ConfigError("second kind functions need a measure");
  if (which == 1 && !(std::abs(z) > 1))
    throw DomainError("Cauchy representation of the first partial needs |z| > 1");
  if (which == 2 && !(std::abs(z) < 1 && z != Complex(0)))
    throw DomainError("Cauchy representation of the second partial needs 0 < |z| < 1");
  const double sgn = which == 1 ? 1.0 : -1.0;
  const Complex zi = 1.0 / z;
  MatrixXc acc = circle_quadrature(s.mu, nodes, [&](Complex u, const MatrixXc& w) -> MatrixXc {
    const Complex kern = sgn * (u / z) / (u - zi);
    switch (kind) {
      case SecondKind::C2L: return s.L1(l, u) * w * kern;
      case SecondKind::C1L: return std::conj(kern) * w * s.L2d(l, u);
      case SecondKind::C2R: return kern * w * s.R1(l, u);
      case SecondKind::C1R: return s.R2d(l, u) * w * std::conj(kern);
    }
    return {};
  });
  if (kind == SecondKind::C1L || kind == SecondKind::C1R) return acc.adjoint();
  return acc;
}

double gamma_series_residual(const CmvSystem& s, const SecondKindSeries& ser, int j, Complex z) {
  const int m = s.m;
  const Blocks gLe = padded_moment_matrix(s.mu, Side::L, ser.Ne);
  MatrixXc acc = MatrixXc::Zero(m, m);
  for (int k = 0; k < ser.Ne; ++k)
    acc += gLe.block(j, k) * (basis(k, z, 1) + basis(k, z, 2));
  const Complex zi = 1.0 / z;
  const MatrixXc ref = (kTwoPi / z) * fourier_series_eval(s.mu, zi) * chi_scalar<double>(j, zi);
  return (acc - ref).norm() / std::max(1.0, ref.norm());
}

}  // namespace molpuc

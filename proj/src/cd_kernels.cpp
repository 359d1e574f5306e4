#include "molpuc/cd_kernels.hpp"

#include <random>

namespace molpuc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

MatrixXc inv(const MatrixXc& a) { return a.inverse(); }
MatrixXc dag(const MatrixXc& a) { return a.adjoint(); }

void need_measure(const CmvSystem& s, const char* what) {
  if (!s.has_measure) throw ConfigError(std::string(what) + " needs a measure");
}

}  // namespace

MatrixXc kernel_eval(const CmvSystem& s, Side side, int l, Complex z, Complex w) {
  if (l < 0 || l > s.N) throw DomainError("kernel level out of range");
  MatrixXc k = MatrixXc::Zero(s.m, s.m);
  for (int j = 0; j < l; ++j)
    k += side == Side::L ? MatrixXc(s.L2d(j, z) * s.L1(j, w)) : MatrixXc(s.R1(j, z) * s.R2d(j, w));
  return k;
}

int kernel_nodes(const CmvSystem& s, int l) { return 4 * (l + s.mu.bandwidth()) + 33; }

double reproducing_check(const CmvSystem& s, Side side, int l, Complex z, Complex y, int nodes) {
  need_measure(s, "reproducing_check");
  if (nodes <= 0) nodes = kernel_nodes(s, l);
  const MatrixXc lhs = kernel_eval(s, side, l, z, y);
  const MatrixXc rhs = circle_quadrature(s.mu, nodes, [&](Complex u, const MatrixXc& w) {
    return MatrixXc(kernel_eval(s, side, l, z, u) * w * kernel_eval(s, side, l, u, y));
  });
  return rel_residual(lhs, rhs);
}

std::vector<MatrixXc> project(const CmvSystem& s, Side side, int l,
                              const std::vector<MatrixXc>& f, int nodes) {
  need_measure(s, "project");
  if (int(f.size()) != nodes) throw ConfigError("project: f must be sampled at every node");
  std::vector<MatrixXc> c(l, MatrixXc::Zero(s.m, s.m));
  for (int k = 0; k < nodes; ++k) {
    const double th = kTwoPi * k / nodes;
    const Complex u = std::polar(1.0, th);
    const MatrixXc w = weight_eval(s.mu, th);
    for (int j = 0; j < l; ++j) {
      if (side == Side::L)
        c[j] += f[k] * w * s.L2d(j, u);
      else
        c[j] += s.R2d(j, u) * w * f[k];
    }
  }
  for (auto& a : c) a *= kTwoPi / nodes;
  return c;
}

ProjectorResiduals projector_check(const CmvSystem& s, Side side, int l, unsigned seed,
                                   int nodes) {
  need_measure(s, "projector_check");
  const int deg = l + 2;
  if (nodes <= 0) nodes = kernel_nodes(s, l + deg);
  std::mt19937 gen(seed);
  std::normal_distribution<double> nd;
  auto rnd = [&] {
    MatrixXc a(s.m, s.m);
    for (int i = 0; i < a.size(); ++i) a.data()[i] = Complex(nd(gen), nd(gen));
    return a;
  };
  auto basis = [&](int j, Complex u) { return side == Side::L ? s.L1(j, u) : s.R1(j, u); };
  auto synth = [&](const std::vector<MatrixXc>& c) {
    std::vector<MatrixXc> f(nodes, MatrixXc::Zero(s.m, s.m));
    for (int k = 0; k < nodes; ++k) {
      const Complex u = std::polar(1.0, kTwoPi * k / nodes);
      for (int j = 0; j < int(c.size()); ++j)
        f[k] += side == Side::L ? MatrixXc(c[j] * basis(j, u)) : MatrixXc(basis(j, u) * c[j]);
    }
    return f;
  };
  auto diff = [](const std::vector<MatrixXc>& a, const std::vector<MatrixXc>& b) {
    double r = 0;
    for (size_t j = 0; j < a.size(); ++j) r = std::max(r, rel_residual(a[j], b[j]));
    return r;
  };

  ProjectorResiduals out;
  std::vector<MatrixXc> c0(l);
  for (auto& a : c0) a = rnd();
  out.span = diff(project(s, side, l, synth(c0), nodes), c0);

  // generic Laurent polynomial with support wider than the span
  std::vector<MatrixXc> f(nodes, MatrixXc::Zero(s.m, s.m));
  std::vector<MatrixXc> coef;
  for (int p = -deg; p <= deg; ++p) coef.push_back(rnd());
  for (int k = 0; k < nodes; ++k) {
    const Complex u = std::polar(1.0, kTwoPi * k / nodes);
    for (int p = -deg; p <= deg; ++p) f[k] += coef[p + deg] * std::pow(u, p);
  }
  const auto once = project(s, side, l, f, nodes);
  out.idempotency = diff(project(s, side, l, synth(once), nodes), once);
  return out;
}

KernelPsd kernel_psd(const CmvSystem& s, int l, int samples) {
  KernelPsd out;
  out.min_eig_ratio = 1e300;
  for (int k = 0; k < samples; ++k) {
    const Complex z = std::polar(1.0, kTwoPi * (k + 0.25) / samples);
    const MatrixXc K = kernel_eval(s, Side::L, l, z, z);
    const MatrixXc herm = (K + K.adjoint()) / 2.0;
    out.hermitian_defect = std::max(out.hermitian_defect, (K - herm).norm() / herm.norm());
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(herm);
    const double tr = herm.trace().real();
    out.min_eig_ratio = std::min(out.min_eig_ratio, es.eigenvalues()(0) / tr);
  }
  return out;
}

std::vector<std::pair<Complex, Complex>> cd_sample_pairs(int count, unsigned seed,
                                                         double reject) {
  const double radii[3] = {0.8, 1.0, 1.25};
  std::mt19937 gen(seed);
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_real_distribution<double> ang(0, kTwoPi);
  std::vector<std::pair<Complex, Complex>> out;
  while (int(out.size()) < count) {
    const Complex z = std::polar(radii[pick(gen)], ang(gen));
    const Complex w = std::polar(radii[pick(gen)], ang(gen));
    if (std::abs(1.0 - std::conj(z) * w) < reject) continue;
    out.emplace_back(z, w);
  }
  return out;
}

int cd_max_level(const CmvSystem& s) { return (s.N - 3) / 2; }

CheckResult cd_formula_residuals(const CmvSystem& s,
                                 const std::vector<std::pair<Complex, Complex>>& pairs,
                                 int l_max) {
  CheckResult r;
  r.check = "cd_formulas";
  r.tol = 1e-9;
  l_max = std::min(l_max, cd_max_level(s));
  for (const auto& [z, w] : pairs) {
    const Complex zc = std::conj(z), wc = std::conj(w);
    const Complex zbi = 1.0 / zc, wbi = 1.0 / wc;
    for (int l = 1; l <= l_max; ++l) {
      const int e = 2 * l, o = 2 * l + 1;
      const double ld = l;

      // K^L, even level
      MatrixXc lhs = (1.0 - zc * w) * kernel_eval(s, Side::L, e, z, w);
      r.add("KL_even_a", {l}, rel_residual(lhs,
            s.R1(e, zbi) * s.hR(e) * inv(s.hR(e - 1)) * s.L1(e - 1, w) - s.R1(e - 1, zbi) * s.L1(e, w)));
      r.add("KL_even_b", {l}, rel_residual(lhs,
            (zc * s.L2d(o, z) * s.hR(o) - zc * s.L2d(e, z) * s.hL(e) * s.xr(o)) * inv(s.hR(e - 1)) *
                    s.L1(e - 1, w) -
                (zc * s.L2d(e - 2, z) + zc * s.L2d(e - 1, z) * s.yr(e - 1)) * s.L1(e, w)));

      // K^L, odd level
      lhs = (1.0 - zc * w) * kernel_eval(s, Side::L, o, z, w);
      r.add("KL_odd_a", {l}, rel_residual(lhs,
            zc * s.L2d(o, z) * s.hR(o) * inv(s.hR(e)) * s.R2d(e, wbi) - zc * s.L2d(e, z) * s.R2d(o, wbi)));
      r.add("KL_odd_b", {l}, rel_residual(lhs,
            zc * s.L2d(o, z) * s.hR(o) *
                    (inv(s.hR(e - 1)) * s.L1(e - 1, w) + s.yl(e) * inv(s.hL(e)) * s.L1(e, w)) -
                zc * s.L2d(e, z) * (s.L1(e + 2, w) - s.x(e + 2) * s.L1(o, w))));

      // K^R, even level; [φ]^†(1/z) is read as φ(1/z̄)^†
      lhs = (1.0 - wc * z) * kernel_eval(s, Side::R, e, z, w);
      r.add("KR_even_a", {l}, rel_residual(lhs,
            s.L2d(e, zbi) * s.hL(e) * inv(s.hL(e - 1)) * s.R2d(e - 1, w) - s.L2d(e - 1, zbi) * s.R2d(e, w)));
      r.add("KR_even_b", {l}, rel_residual(lhs,
            z * (s.R1(o, z) * s.hL(o) - s.R1(e, z) * s.hR(e) * s.yl(o)) * inv(s.hL(e - 1)) * s.R2d(e - 1, w) -
                z * (s.R1(e - 2, z) + s.R1(e - 1, z) * s.x(e - 1)) * s.R2d(e, w)));
      r.add_erratum("KR_even_b_typeset", {l}, rel_residual(lhs,
            z * (s.R1(o, z) * s.hL(o) - s.R1(e, z) * s.hR(e) * s.yl(o)) * inv(s.hL(o)) * s.R2d(e - 1, w) -
                z * (s.R1(e - 2, z) - s.R1(e - 1, z) * s.x(e - 1)) * s.R2d(e, w)));

      // K^R, odd level
      lhs = (1.0 - wc * z) * kernel_eval(s, Side::R, o, z, w);
      r.add("KR_odd_a", {l}, rel_residual(lhs,
            z * s.R1(o, z) * s.hL(o) * inv(s.hL(e)) * s.L1(e, wbi) - z * s.R1(e, z) * s.L1(o, wbi)));
      r.add_erratum("KR_odd_a_typeset", {l}, rel_residual(lhs,
            z * s.R1(o, z) * s.hL(o) * inv(s.hL(e)) * s.L1(e - 1, wbi) - z * s.R1(e, z) * s.L1(o, wbi)));
      r.add("KR_odd_b", {l}, rel_residual(lhs,
            z * s.R1(o, z) * s.hL(o) *
                    (inv(s.hL(e - 1)) * s.R2d(e - 1, w) + s.xr(e) * inv(s.hR(e)) * s.R2d(e, w)) -
                z * s.R1(e, z) * (s.R2d(e + 2, w) - s.yr(e + 2) * s.R2d(o, w))));

      // Szegő-polynomial forms
      MatrixXc K = kernel_eval(s, Side::L, e, z, w);
      Complex pre = std::pow(zc / w, ld) / (1.0 - zc * w);
      r.add("KL_even_szego", {l}, rel_residual(K,
            pre * (s.P(Side::R, 1, e, zbi) * inv(s.hR(e - 1)) * s.Pstar(Side::R, 2, e - 1, w) -
                   s.Pstar(Side::L, 2, e - 1, zbi) * inv(s.hL(e - 1)) * s.P(Side::L, 1, e, w))));

      K = kernel_eval(s, Side::L, o, z, w);
      pre = std::pow(zc, ld + 1) * std::pow(w, -ld) / (1.0 - zc * w);
      r.add("KL_odd_szego", {l}, rel_residual(K,
            pre * (s.P(Side::R, 1, o, zbi) * inv(s.hR(e)) * s.Pstar(Side::R, 2, e, w) -
                   s.Pstar(Side::L, 2, e, zbi) * inv(s.hL(e)) * s.P(Side::L, 1, o, w))));
      r.add_erratum("KL_odd_szego_typeset", {l}, rel_residual(K,
            pre * (s.P(Side::R, 1, o, zbi) * inv(s.hR(e)) * s.Pstar(Side::R, 2, e, w) -
                   s.Pstar(Side::L, 2, e, 1.0 / z) * inv(s.hL(e)) * s.P(Side::L, 1, o, w))));

      K = kernel_eval(s, Side::R, e, z, w);
      pre = std::pow(z / wc, ld) / (1.0 - wc * z);
      r.add("KR_even_szego", {l}, rel_residual(K,
            pre * (dag(s.P(Side::L, 2, e, zbi)) * inv(s.hL(e - 1)) * dag(s.Pstar(Side::L, 1, e - 1, w)) -
                   dag(s.Pstar(Side::R, 1, e - 1, zbi)) * inv(s.hR(e - 1)) * dag(s.P(Side::R, 2, e, w)))));

      K = kernel_eval(s, Side::R, o, z, w);
      pre = std::pow(z, ld + 1) * std::pow(wc, -ld) / (1.0 - wc * z);
      const MatrixXc first = dag(s.P(Side::L, 2, o, zbi)) * inv(s.hL(e)) * dag(s.Pstar(Side::L, 1, e, w));
      const MatrixXc mid = dag(s.Pstar(Side::R, 1, e, zbi)) * inv(s.hR(e));
      r.add("KR_odd_szego", {l}, rel_residual(K, pre * (first - mid * dag(s.P(Side::R, 2, o, w)))));
      r.add_erratum("KR_odd_szego_typeset", {l},
                    rel_residual(K, pre * (first - mid * dag(s.P(Side::R, 1, o, w)))));
    }
  }
  r.collapse();
  return r;
}

CheckResult kernel_cross_relations(const CmvSystem& s,
                                   const std::vector<std::pair<Complex, Complex>>& pairs,
                                   int l_max) {
  CheckResult r;
  r.check = "kernel_cross";
  r.tol = 1e-9;
  l_max = std::min(l_max, cd_max_level(s));
  const MatrixXc I = s.id();
  for (const auto& [z, w] : pairs) {
    const Complex zbi = 1.0 / std::conj(z), wbi = 1.0 / std::conj(w);
    for (int l = 1; l <= l_max; ++l) {
      const int o = 2 * l + 1, e2 = 2 * l + 2, e = 2 * l;
      const MatrixXc kr_o = kernel_eval(s, Side::R, o, z, wbi);
      const MatrixXc kl_o = kernel_eval(s, Side::L, o, zbi, w);
      const MatrixXc kr_e = kernel_eval(s, Side::R, e2, z, wbi);
      const MatrixXc kl_e = kernel_eval(s, Side::L, e2, zbi, w);
      r.add("odd_equal", {l}, rel_residual(kr_o, kl_o));
      r.add("even_difference", {l}, rel_residual(kr_e - kl_e,
            s.R1(o, z) * s.L1(e2, w) - s.R1(e2, z) * (I - s.yr(e2) * s.x(e2)) * s.L1(o, w)));
      r.add("odd_difference", {l}, rel_residual(kr_o / w - kl_o / z,
            s.R1(e, z) * s.L1(o, w) - s.R1(o, z) * (I - s.x(o) * s.yr(o)) * s.L1(e, w)));
      r.add("even_scaled_equal", {l}, rel_residual(kr_e / w, kl_e / z));
    }
  }
  r.collapse();
  return r;
}

}  // namespace molpuc

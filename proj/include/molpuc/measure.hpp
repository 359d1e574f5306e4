#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "molpuc/types.hpp"

namespace molpuc {

enum class MeasureKind { trig_poly, moment_list };

// m x m matrix weight on the unit circle.
// trig_poly: w(θ) = Σ W_n e^{inθ} over a finite support.
// moment_list: the moments c_n are stored directly.
template <typename Real>
struct MatrixMeasure {
  int m = 1;
  MeasureKind kind = MeasureKind::trig_poly;
  bool hermitian = false;
  std::map<int, MatX<Real>> coeffs;

  MatX<Real> coeff(int n) const {
    auto it = coeffs.find(n);
    if (it == coeffs.end()) return MatX<Real>::Zero(m, m);
    return it->second;
  }
  // largest |n| with stored data
  int bandwidth() const {
    int k = 0;
    for (const auto& [n, c] : coeffs) k = std::max(k, std::abs(n));
    return k;
  }
};

template <typename Real>
Real hermitian_defect(const MatrixMeasure<Real>& mu) {
  Real worst = 0;
  for (const auto& [n, c] : mu.coeffs) {
    worst = std::max(worst, (c - mu.coeff(-n).adjoint()).cwiseAbs().maxCoeff());
  }
  return worst;
}

template <typename Real>
MatrixMeasure<Real> make_measure(int m, MeasureKind kind, std::map<int, MatX<Real>> coeffs,
                                 bool hermitian) {
  if (m <= 0) throw ConfigError("block size m must be positive");
  for (const auto& [n, c] : coeffs) {
    if (c.rows() != m || c.cols() != m)
      throw ConfigError("coefficient " + std::to_string(n) + " is not " + std::to_string(m) +
                        "x" + std::to_string(m));
  }
  MatrixMeasure<Real> mu{m, kind, hermitian, std::move(coeffs)};
  if (hermitian) {
    Real scale = 1;
    for (const auto& [n, c] : mu.coeffs) scale = std::max(scale, c.cwiseAbs().maxCoeff());
    if (hermitian_defect(mu) > Real(1e-13) * scale)
      throw ConfigError("measure flagged hermitian but c_{-n} != c_n^dagger");
  }
  return mu;
}

template <typename Real>
struct MomentSet {
  int m = 1;
  int n_max = 0;
  std::vector<MatX<Real>> data;  // c_{-n_max} .. c_{n_max}

  const MatX<Real>& operator()(int n) const {
    if (std::abs(n) > n_max)
      throw Error("moment c_" + std::to_string(n) + " not available (n_max = " +
                  std::to_string(n_max) + ")");
    return data[n + n_max];
  }
};

template <typename Real>
MomentSet<Real> compute_moments(const MatrixMeasure<Real>& mu, int n_max) {
  if (n_max < 0) throw Error("n_max must be non-negative");
  if (mu.kind == MeasureKind::moment_list && mu.bandwidth() < n_max)
    throw Error("insufficient moments: need |n| <= " + std::to_string(n_max) + ", have " +
                std::to_string(mu.bandwidth()));
  MomentSet<Real> out{mu.m, n_max, {}};
  out.data.reserve(2 * n_max + 1);
  for (int n = -n_max; n <= n_max; ++n) out.data.push_back(mu.coeff(n));
  return out;
}

// pointwise weight. For moment_list the stored (truncated) Fourier series is summed.
template <typename Real>
MatX<Real> weight_eval(const MatrixMeasure<Real>& mu, Real theta) {
  MatX<Real> w = MatX<Real>::Zero(mu.m, mu.m);
  for (const auto& [n, c] : mu.coeffs) w += c * std::polar(Real(1), n * theta);
  return w;
}

template <typename Real>
MatX<Real> fourier_series_eval(const MatrixMeasure<Real>& mu, Cplx<Real> z) {
  if (z == Cplx<Real>(0)) throw DomainError("Fourier series evaluated at z = 0");
  MatX<Real> f = MatX<Real>::Zero(mu.m, mu.m);
  for (const auto& [n, c] : mu.coeffs) f += c * std::pow(z, n);
  return f;
}

// F^dagger-series: Σ c_n^dagger z^n
template <typename Real>
MatX<Real> fourier_series_eval_dagger(const MatrixMeasure<Real>& mu, Cplx<Real> z) {
  if (z == Cplx<Real>(0)) throw DomainError("Fourier series evaluated at z = 0");
  MatX<Real> f = MatX<Real>::Zero(mu.m, mu.m);
  for (const auto& [n, c] : mu.coeffs) f += c.adjoint() * std::pow(z, n);
  return f;
}

template <typename Real>
int default_nodes(int bandwidth, int n_max) {
  return 4 * (bandwidth + n_max) + 1;
}

// trapezoid rule on M uniform nodes: c_n = (1/M) Σ_k e^{-inθ_k} w(θ_k)
template <typename Real, typename WeightFn>
MomentSet<Real> moments_by_quadrature(WeightFn&& weight, int m, int n_max, int nodes) {
  std::vector<MatX<Real>> samples;
  samples.reserve(nodes);
  const Real step = 2 * std::numbers::pi_v<Real> / nodes;
  for (int k = 0; k < nodes; ++k) samples.push_back(weight(k * step));
  MomentSet<Real> out{m, n_max, {}};
  for (int n = -n_max; n <= n_max; ++n) {
    MatX<Real> c = MatX<Real>::Zero(m, m);
    for (int k = 0; k < nodes; ++k) c += samples[k] * std::polar(Real(1), -n * k * step);
    out.data.push_back(c / Real(nodes));
  }
  return out;
}

template <typename Real>
MomentSet<Real> moments_by_quadrature(const MatrixMeasure<Real>& mu, int n_max, int nodes = 0) {
  if (nodes <= 0) nodes = default_nodes<Real>(mu.bandwidth(), n_max);
  return moments_by_quadrature<Real>([&](Real t) { return weight_eval(mu, t); }, mu.m, n_max,
                                     nodes);
}

// (I - w z^{sign}) dμ for side L, dμ (I - w z^{sign}) for side R; exact on coefficients.
template <typename Real>
MatrixMeasure<Real> multiply_linear(const MatrixMeasure<Real>& mu, const MatX<Real>& w, int sign,
                                    Side side) {
  std::map<int, MatX<Real>> out;
  for (const auto& [n, c] : mu.coeffs) {
    auto& a = out.try_emplace(n, MatX<Real>::Zero(mu.m, mu.m)).first->second;
    a += c;
    auto& b = out.try_emplace(n + sign, MatX<Real>::Zero(mu.m, mu.m)).first->second;
    b -= side == Side::L ? MatX<Real>(w * c) : MatX<Real>(c * w);
  }
  MatrixMeasure<Real> r{mu.m, mu.kind, false, std::move(out)};
  if (mu.kind == MeasureKind::moment_list) {
    // the outermost indices lose a partner term; keep a symmetric valid range
    const int b = mu.bandwidth();
    for (int n : {b, -b, b + 1, -b - 1}) r.coeffs.erase(n);
  }
  return r;
}

// min over a uniform grid of the smallest eigenvalue of the Hermitian part of w(θ)
template <typename Real>
Real min_weight_eigenvalue(const MatrixMeasure<Real>& mu, int grid = 2048) {
  Real worst = std::numeric_limits<Real>::infinity();
  for (int k = 0; k < grid; ++k) {
    MatX<Real> w = weight_eval(mu, 2 * std::numbers::pi_v<Real> * k / grid);
    MatX<Real> h = (w + w.adjoint()) / Real(2);
    Eigen::SelfAdjointEigenSolver<MatX<Real>> es(h, Eigen::EigenvaluesOnly);
    worst = std::min(worst, es.eigenvalues().minCoeff());
  }
  return worst;
}

// seeded test measures with coefficients decaying like eps/n up to |n| = band
template <typename Real>
MatrixMeasure<Real> random_hermitian_measure(int m, int band, unsigned seed, Real eps = 0.3) {
  std::mt19937 gen(seed);
  std::normal_distribution<Real> nd;
  std::map<int, MatX<Real>> c;
  c[0] = MatX<Real>::Identity(m, m);
  for (int n = 1; n <= band; ++n) {
    MatX<Real> a(m, m);
    for (int i = 0; i < a.size(); ++i) a.data()[i] = Cplx<Real>(nd(gen), nd(gen)) * (eps / n);
    c[n] = a;
    c[-n] = a.adjoint();
  }
  MatrixMeasure<Real> mu{m, MeasureKind::trig_poly, true, std::move(c)};
  const Real lo = min_weight_eigenvalue(mu);
  if (lo < Real(0.2)) mu.coeffs[0] += (Real(0.2) - lo) * MatX<Real>::Identity(m, m);
  return mu;
}

template <typename Real>
MatrixMeasure<Real> random_measure(int m, int band, unsigned seed, Real eps = 0.2) {
  std::mt19937 gen(seed);
  std::normal_distribution<Real> nd;
  auto rnd = [&](Real s) {
    MatX<Real> a(m, m);
    for (int i = 0; i < a.size(); ++i) a.data()[i] = Cplx<Real>(nd(gen), nd(gen)) * s;
    return a;
  };
  std::map<int, MatX<Real>> c;
  c[0] = MatX<Real>::Identity(m, m) + rnd(Real(0.1));
  for (int n = 1; n <= band; ++n) {
    c[n] = rnd(eps / n);
    c[-n] = rnd(eps / n);
  }
  return MatrixMeasure<Real>{m, MeasureKind::trig_poly, false, std::move(c)};
}

}  // namespace molpuc

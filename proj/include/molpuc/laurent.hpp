#pragma once

#include <map>
#include <string>

#include "molpuc/types.hpp"

namespace molpuc {

// Σ_k C_k z^k with m x m coefficients
template <typename Real>
struct LaurentPoly {
  int m = 1;
  std::map<int, MatX<Real>> coeffs;
  std::string tag;
  int index = 0;

  MatX<Real> coeff(int k) const {
    auto it = coeffs.find(k);
    return it == coeffs.end() ? MatX<Real>::Zero(m, m) : it->second;
  }
  int min_power() const { return coeffs.empty() ? 0 : coeffs.begin()->first; }
  int max_power() const { return coeffs.empty() ? 0 : coeffs.rbegin()->first; }
};

template <typename Real>
MatX<Real> eval(const LaurentPoly<Real>& p, Cplx<Real> z) {
  if (z == Cplx<Real>(0) && p.min_power() < 0)
    throw DomainError("Laurent polynomial with negative powers evaluated at z = 0");
  MatX<Real> r = MatX<Real>::Zero(p.m, p.m);
  for (const auto& [k, c] : p.coeffs) r += c * std::pow(z, k);
  return r;
}

// p(z)^dagger
template <typename Real>
MatX<Real> eval_adjoint(const LaurentPoly<Real>& p, Cplx<Real> z) {
  return eval(p, z).adjoint();
}

template <typename Real>
LaurentPoly<Real> shift(const LaurentPoly<Real>& p, int k) {
  LaurentPoly<Real> r{p.m, {}, p.tag, p.index};
  for (const auto& [q, c] : p.coeffs) r.coeffs.emplace(q + k, c);
  return r;
}

template <typename Real>
LaurentPoly<Real> lmul(const MatX<Real>& a, const LaurentPoly<Real>& p) {
  LaurentPoly<Real> r{p.m, {}, p.tag, p.index};
  for (const auto& [q, c] : p.coeffs) r.coeffs.emplace(q, a * c);
  return r;
}

template <typename Real>
LaurentPoly<Real> rmul(const LaurentPoly<Real>& p, const MatX<Real>& a) {
  LaurentPoly<Real> r{p.m, {}, p.tag, p.index};
  for (const auto& [q, c] : p.coeffs) r.coeffs.emplace(q, c * a);
  return r;
}

// p*(z) = z^n p(1/z̄)^dagger, i.e. coefficient k -> (C_{n-k})^dagger
template <typename Real>
LaurentPoly<Real> reciprocal(const LaurentPoly<Real>& p, int n) {
  LaurentPoly<Real> r{p.m, {}, p.tag + "*", p.index};
  for (const auto& [q, c] : p.coeffs) r.coeffs.emplace(n - q, c.adjoint());
  return r;
}

// worst deviation from a monic degree-n polynomial: negative powers, powers > n, C_n != I
template <typename Real>
Real monic_defect(const LaurentPoly<Real>& p, int n) {
  Real worst = (p.coeff(n) - MatX<Real>::Identity(p.m, p.m)).norm();
  for (const auto& [q, c] : p.coeffs)
    if (q < 0 || q > n) worst = std::max(worst, c.norm());
  return worst;
}

}  // namespace molpuc

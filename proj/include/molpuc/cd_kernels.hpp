#pragma once

#include <utility>
#include <vector>

#include "molpuc/check.hpp"
#include "molpuc/molpuc.hpp"

namespace molpuc {

// K^L(z,w) = Σ_{k<l} φ₂^L(k)(z)^† φ₁^L(k)(w),  K^R(z,w) = Σ_{k<l} φ₁^R(k)(z) φ₂^R(k)(w)^†
MatrixXc kernel_eval(const CmvSystem& sys, Side side, int l, Complex z, Complex w);

struct CDKernel {
  const CmvSystem* sys = nullptr;
  Side side = Side::L;
  int l = 0;
  MatrixXc operator()(Complex z, Complex w) const { return kernel_eval(*sys, side, l, z, w); }
};

// nodes large enough for products of two kernels against the weight
int kernel_nodes(const CmvSystem& sys, int l);

// |K(z,y) - ∮ K(z,u) W(u) K(u,y) dθ| / scale
double reproducing_check(const CmvSystem& sys, Side side, int l, Complex z, Complex y,
                         int nodes = 0);

// coefficients of π f in the basis φ₁^L (left) or φ₁^R (right); f is given at the nodes
std::vector<MatrixXc> project(const CmvSystem& sys, Side side, int l,
                              const std::vector<MatrixXc>& f_at_nodes, int nodes);

struct ProjectorResiduals {
  double span = 0;         // π f = f for f in the span
  double idempotency = 0;  // π π f = π f for a generic f
};
ProjectorResiduals projector_check(const CmvSystem& sys, Side side, int l, unsigned seed = 7,
                                   int nodes = 0);

// min over |z|=1 samples of λ_min(K^L(z,z)) / tr, and the anti-Hermitian part
struct KernelPsd {
  double min_eig_ratio = 0;
  double hermitian_defect = 0;
};
KernelPsd kernel_psd(const CmvSystem& sys, int l, int samples = 32);

// (z, w) pairs on radii {0.8, 1, 1.25} with |1 - z̄w| > reject
std::vector<std::pair<Complex, Complex>> cd_sample_pairs(int count, unsigned seed = 2024,
                                                         double reject = 1e-3);

// the largest l with every index used by the level-2l/2l+1 formulas inside the system
int cd_max_level(const CmvSystem& sys);

// four CD formulas in both displayed forms, plus the Szegő-polynomial forms
CheckResult cd_formula_residuals(const CmvSystem& sys,
                                 const std::vector<std::pair<Complex, Complex>>& pairs,
                                 int l_max = 4);

CheckResult kernel_cross_relations(const CmvSystem& sys,
                                   const std::vector<std::pair<Complex, Complex>>& pairs,
                                   int l_max = 4);

}  // namespace molpuc

#pragma once

#include <string>

#include "molpuc/check.hpp"
#include "molpuc/molpuc.hpp"

namespace molpuc {

enum class OpKind { JL, JR, JLinv, JRinv, C, Cinv };

std::string op_name(OpKind kind, int p = 0);

struct CMVOperator {
  OpKind kind = OpKind::JL;
  int p = 0;
  Blocks payload;  // S1 route for J^L, Z1 route for J^R, Z2/S1 route for C_[p]
  Blocks alt;      // the second defining route
  int margin = 2;  // trailing blocks affected by truncation
  double route_residual = 0;
  int interior() const { return std::max(payload.blocks() - margin, 0); }
};

// J^L = S1 Υ S1^{-1} = S2 Υ S2^{-1},  J^R = Z1^{-1} Υ Z1 = Z2^{-1} Υ Z2,
// C_[p] = Z2^{-1} η Υ^p S1^{-1} = Z1^{-1} η Υ^p S2^{-1}
CMVOperator dress(const CmvSystem& sys, OpKind kind, int p = 0, bool throw_on_mismatch = true);

// max relative size of interior blocks outside the nonzero pattern
double band_defect(const CMVOperator& op);

// (J^R)^{l-p} = C_[p] C_[l]^{-1} for (p,l) in {(0,1), (-1,0)} and route agreement
CheckResult operator_identities(const CmvSystem& sys);

// closed-form entries from the Verblunsky table vs the dressed operators
CheckResult appendixB_check(const CmvSystem& sys);

// eigenvalue relations such as J^L Φ₁^L(z) = z Φ₁^L(z) on interior rows
CheckResult eigen_relations(const CmvSystem& sys, const std::vector<Complex>& zs);

// z and z^{-1} recursions of all four families, the φ₂ ↔ φ₁ relations and the complete set
CheckResult recursion_residuals(const CmvSystem& sys, const std::vector<Complex>& zs);

// the eight Szegő-polynomial recursions
CheckResult szego_recursion_check(const CmvSystem& sys, const std::vector<Complex>& zs);

}  // namespace molpuc

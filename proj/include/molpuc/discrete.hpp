#pragma once

#include <vector>

#include "molpuc/check.hpp"
#include "molpuc/molpuc.hpp"

namespace molpuc {

// dμ -> (I - d z^{sign}) dμ on side L, dμ (I - d z^{sign}) on side R; d diagonal
struct Shift {
  Side side = Side::L;
  int sign = 1;
  MatrixXc d;
};

Measure shift_measure(const Measure& mu, const Shift& s);

// the same shift on the moment matrices: (I - d Υ^{±1}) g^L, g^L (I - d Υ^{±1}),
// (I - d Υ^{∓1}) g^R, g^R (I - d Υ^{∓1}); exact on the leading blocks - 2
Blocks shift_moment_matrix(const Blocks& g, Side matrix_side, const Shift& s);

// sequences d^H_{±,j}, j = 1..n^H_±, applied as a product of shifts (d_{±,0} = 0)
struct DiscreteFlowParams {
  std::vector<MatrixXc> dL_plus, dL_minus, dR_plus, dR_minus;
  int nL_plus = 0, nL_minus = 0, nR_plus = 0, nR_minus = 0;
  // (d^R_{∓,j})^† = d^L_{±,j}
  bool hermitian_compatible(double tol = 1e-14) const;
  std::vector<Shift> shifts() const;
};

Measure apply_discrete_flows(const Measure& mu, const DiscreteFlowParams& p);

// ω^{HL}, ω^{HR} of a shift of side H
struct Omegas {
  MatrixXc L, R;
};
Omegas omegas(const CmvSystem& base, const CmvSystem& shifted, Side H);

// ω routes vs LU of δ, δ = I - d^{HH'} J^{±1}, discrete Lax, intertwiners and the flip,
// for every shift; ZS for every pair; compared on the leading N blocks
CheckResult darboux_check(const Measure& mu, const std::vector<Shift>& shifts, int N);

// Verblunsky data and factors of the shifted measure vs the matrix-route shift
CheckResult miwa_darboux_consistency(const Measure& mu, const std::vector<Shift>& shifts, int N);

// the eight kernel identities between Miwa shifted and unshifted kernels at diagonal w
CheckResult miwa_kernel_check(const Measure& mu, const MatrixXc& w, int N,
                              const std::vector<std::pair<Complex, Complex>>& pairs, int l_max = 3);

// the eight scalar-w relations between values at w, 1/w, w̄ and shifted quasi-norms
CheckResult miwa_scalar_relations(const Measure& mu, const std::vector<Complex>& ws, int N,
                                  int l_max = 2);

struct ElteoremaReport {
  CheckResult result;
  std::vector<Complex> skipped;  // samples whose shifted measure is not quasi-definite
};

// the families at z from products of quasi-norm ratios of Miwa shifted measures
ElteoremaReport elteorema_reconstruct(const Measure& mu, const std::vector<Complex>& zs,
                                      int l_max, int N = 0);

}  // namespace molpuc

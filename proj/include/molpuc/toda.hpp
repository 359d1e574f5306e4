#pragma once

#include <array>
#include <vector>

#include "molpuc/check.hpp"
#include "molpuc/molpuc.hpp"

namespace molpuc {

using VectorXc = Eigen::VectorXcd;

// diagonal times t^H_j, j = 1, 2; t[side][j-1] holds the diagonal
struct FlowTimes {
  std::array<std::array<VectorXc, 2>, 2> t;

  static FlowTimes zero(int m);
  VectorXc& at(Side s, int j) { return t[int(s)][j - 1]; }
  const VectorXc& at(Side s, int j) const { return t[int(s)][j - 1]; }
  bool is_zero() const;
  // t^L_1 = conj(t^R_2), t^L_2 = conj(t^R_1)
  bool hermitian_compatible(double tol = 1e-14) const;
};

// one coordinate t^H_{j,a}; a < 0 is the total flow ∂_{H,j} (t I on side H)
struct FlowAxis {
  Side side = Side::L;
  int j = 1;
  int a = -1;
  bool total() const { return a < 0; }
};

std::string axis_name(const FlowAxis& ax);
FlowAxis parse_axis(const std::string& s);  // "total:L1", "L1:0", "R2:1"

FlowTimes shifted(const FlowTimes& t, const FlowAxis& ax, Complex s);

// exp(t_1 z^{-1} + t_2 z), diagonal
MatrixXc flow_exponential(const VectorXc& t1, const VectorXc& t2, Complex z);

// moment range kept by deform_measure for a system of N blocks
int deformed_moment_range(const Measure& mu, int N);

// e_L(z) w(θ) e_R(z) sampled on the grid, moments by the trapezoid rule
Measure deform_measure(const Measure& mu, const FlowTimes& t, int n_max, int nodes = 0);

// analytic continuation of the deformed Fourier series e_L(z) F(z) e_R(z)
MatrixXc deformed_fourier(const Measure& mu, const FlowTimes& t, Complex z);

// Verblunsky table of the refactorized deformed measure
VerblunskyTable oracle_table(const Measure& mu, const FlowTimes& t, int N);

// tangent of the Toeplitz lattice; entries past the table are read as zero
VerblunskyTable toeplitz_rhs(const VerblunskyTable& T, const FlowAxis& ax);

// T + s dT, componentwise
VerblunskyTable table_axpy(const VerblunskyTable& T, double s, const VerblunskyTable& dT);
// max |a - b| over components and indices lo..hi
double table_distance(const VerblunskyTable& a, const VerblunskyTable& b, int lo, int hi);

struct FlowTrajectory {
  FlowAxis axis;
  double dt = 0;
  std::vector<double> times;
  std::vector<VerblunskyTable> tables;
  bool truncated = false;  // non-finite or singular state met
  double oracle_gap = -1;  // final gap vs refactorization when compared
  int compare_hi = 0;      // highest index used in the comparison
};

// classical RK4 with a fixed step
FlowTrajectory flow_integrate(const VerblunskyTable& T0, const FlowAxis& ax, double dt, int steps);

// integrate from the measure and compare the endpoint with the refactorized deformed measure
FlowTrajectory flow_with_oracle(const Measure& mu, const FlowAxis& ax, int N, double t_end,
                                int steps);

// max |toeplitz_rhs − central FD of oracle tables| over the given axes, indices 1..N-2
double toeplitz_fd_residual(const Measure& mu, const FlowTimes& t0, const FlowAxis& ax, int N,
                            double h = 1e-4);

// both contour identities for the left and right families at times t, t̃
CheckResult bilinear_check(const Measure& mu, const FlowTimes& t, const FlowTimes& tt, int N,
                           int l_max, int nodes = 256);

// ∂W = B W for S1, S2, Z1, Z2, Lax for J^L and J^R, ∂C_[0], and ZS for the pair (a, b);
// FD step h, compared on the leading N blocks of an extended system
CheckResult wave_and_zs_checks(const Measure& mu, const FlowTimes& t0, const FlowAxis& a,
                               const FlowAxis& b, int N, double h = 1e-4);

}  // namespace molpuc

#include "molpuc/toda.hpp"

#include <cmath>

namespace molpuc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

MatrixXc inv(const MatrixXc& a) { return a.inverse(); }

int power_of(int j) { return j == 1 ? -1 : 1; }

MatrixXc diag_unit(const FlowAxis& ax, int m) {
  if (ax.total()) return MatrixXc::Identity(m, m);
  MatrixXc e = MatrixXc::Zero(m, m);
  e(ax.a, ax.a) = 1;
  return e;
}

// zero-extended access
struct View {
  const VerblunskyTable& T;
  int m;
  MatrixXc get(const std::vector<MatrixXc>& v, int k) const {
    if (k < 0 || k >= int(v.size())) return MatrixXc::Zero(m, m);
    return v[k];
  }
  MatrixXc x(int k) const { return get(T.x, k); }
  MatrixXc xr(int k) const { return get(T.xr, k); }
  MatrixXc yl(int k) const { return get(T.yl, k); }
  MatrixXc yr(int k) const { return get(T.yr, k); }
  MatrixXc hL(int k) const { return T.hL.at(k); }
  MatrixXc hR(int k) const { return T.hR.at(k); }
};

VerblunskyTable zero_like(const VerblunskyTable& T) {
  VerblunskyTable d;
  const int K = T.size();
  const MatrixXc z = MatrixXc::Zero(T.x[0].rows(), T.x[0].cols());
  for (auto* v : {&d.x, &d.xr, &d.yl, &d.yr, &d.hL, &d.hR}) v->assign(K, z);
  return d;
}

// d(A B C^{-1}) and d(A^{-1} B C)
MatrixXc d_abci(const MatrixXc& A, const MatrixXc& dA, const MatrixXc& B, const MatrixXc& dB,
                const MatrixXc& C, const MatrixXc& dC) {
  const MatrixXc Ci = inv(C);
  return dA * B * Ci + A * dB * Ci - A * B * Ci * dC * Ci;
}
MatrixXc d_aibc(const MatrixXc& A, const MatrixXc& dA, const MatrixXc& B, const MatrixXc& dB,
                const MatrixXc& C, const MatrixXc& dC) {
  const MatrixXc Ai = inv(A);
  return -Ai * dA * Ai * B * C + Ai * dB * C + Ai * B * dC;
}

}  // namespace

FlowTimes FlowTimes::zero(int m) {
  FlowTimes f;
  for (auto& side : f.t)
    for (auto& v : side) v = VectorXc::Zero(m);
  return f;
}

bool FlowTimes::is_zero() const {
  for (const auto& side : t)
    for (const auto& v : side)
      if (v.norm() != 0) return false;
  return true;
}

bool FlowTimes::hermitian_compatible(double tol) const {
  return (at(Side::L, 1) - at(Side::R, 2).conjugate()).norm() <= tol &&
         (at(Side::L, 2) - at(Side::R, 1).conjugate()).norm() <= tol;
}

std::string axis_name(const FlowAxis& ax) {
  std::string s = std::string(1, side_char(ax.side)) + std::to_string(ax.j);
  return ax.total() ? "total:" + s : s + ":" + std::to_string(ax.a);
}

FlowAxis parse_axis(const std::string& s) {
  FlowAxis ax;
  std::string body = s;
  const bool total = s.rfind("total:", 0) == 0;
  if (total) body = s.substr(6);
  if (body.size() < 2 || (body[0] != 'L' && body[0] != 'R') || (body[1] != '1' && body[1] != '2'))
    throw ConfigError("bad flow axis '" + s + "' (expected total:H1, H2:a, ...)");
  ax.side = body[0] == 'L' ? Side::L : Side::R;
  ax.j = body[1] - '0';
  if (total) {
    if (body.size() != 2) throw ConfigError("bad flow axis '" + s + "'");
    ax.a = -1;
  } else {
    if (body.size() < 4 || body[2] != ':') throw ConfigError("bad flow axis '" + s + "'");
    try {
      ax.a = std::stoi(body.substr(3));
    } catch (const std::exception&) {
      throw ConfigError("bad flow axis '" + s + "'");
    }
    if (ax.a < 0) throw ConfigError("flow axis component must be non-negative");
  }
  return ax;
}

FlowTimes shifted(const FlowTimes& t, const FlowAxis& ax, Complex s) {
  FlowTimes r = t;
  VectorXc& v = r.at(ax.side, ax.j);
  if (!ax.total() && ax.a >= v.size()) throw ConfigError("flow axis component out of range");
  if (ax.total())
    v.array() += s;
  else
    v(ax.a) += s;
  return r;
}

MatrixXc flow_exponential(const VectorXc& t1, const VectorXc& t2, Complex z) {
  const VectorXc e = (t1 / z + t2 * z).array().exp();
  return e.asDiagonal();
}

int deformed_moment_range(const Measure& mu, int N) {
  return std::max(N - 1, mu.bandwidth()) + 32;
}

Measure deform_measure(const Measure& mu, const FlowTimes& t, int n_max, int nodes) {
  if (t.is_zero()) return mu;
  if (nodes <= 0) nodes = 4 * n_max + 64;
  auto w = [&](double th) {
    const Complex z = std::polar(1.0, th);
    return MatrixXc(flow_exponential(t.at(Side::L, 1), t.at(Side::L, 2), z) * weight_eval(mu, th) *
                    flow_exponential(t.at(Side::R, 1), t.at(Side::R, 2), z));
  };
  const Moments c = moments_by_quadrature<double>(w, mu.m, n_max, nodes);
  Measure out;
  out.m = mu.m;
  out.kind = MeasureKind::moment_list;
  for (int n = -n_max; n <= n_max; ++n) out.coeffs[n] = c(n);
  double scale = 1;
  for (const auto& [n, a] : out.coeffs) scale = std::max(scale, a.cwiseAbs().maxCoeff());
  out.hermitian = mu.hermitian && t.hermitian_compatible() && hermitian_defect(out) < 1e-13 * scale;
  return out;
}

MatrixXc deformed_fourier(const Measure& mu, const FlowTimes& t, Complex z) {
  return flow_exponential(t.at(Side::L, 1), t.at(Side::L, 2), z) * fourier_series_eval(mu, z) *
         flow_exponential(t.at(Side::R, 1), t.at(Side::R, 2), z);
}

VerblunskyTable oracle_table(const Measure& mu, const FlowTimes& t, int N) {
  return build_system(deform_measure(mu, t, deformed_moment_range(mu, N)), N).V;
}

VerblunskyTable toeplitz_rhs(const VerblunskyTable& T, const FlowAxis& ax) {
  const int K = T.size();
  const int m = int(T.x.at(0).rows());
  const View v{T, m};
  const MatrixXc I = MatrixXc::Identity(m, m);
  const MatrixXc E = diag_unit(ax, m);
  VerblunskyTable d = zero_like(T);

  if (ax.total()) {
    for (int k = 1; k < K; ++k) {
      if (ax.j == 1) {
        d.yr[k] = v.yr(k + 1) * (I - v.x(k) * v.yr(k));
        d.x[k] = -(I - v.x(k) * v.yr(k)) * v.x(k - 1);
        d.yl[k] = (I - v.yl(k) * v.xr(k)) * v.yl(k + 1);
        d.xr[k] = -v.xr(k - 1) * (I - v.yl(k) * v.xr(k));
      } else {
        d.yr[k] = -(I - v.yr(k) * v.x(k)) * v.yr(k - 1);
        d.x[k] = v.x(k + 1) * (I - v.yr(k) * v.x(k));
        d.yl[k] = -v.yl(k - 1) * (I - v.xr(k) * v.yl(k));
        d.xr[k] = (I - v.xr(k) * v.yl(k)) * v.xr(k + 1);
      }
    }
    for (int k = 0; k < K; ++k) {
      if (ax.j == 1) {
        d.hL[k] = -v.x(k) * v.yr(k + 1) * v.hL(k);
        d.hR[k] = -v.hR(k) * v.yl(k + 1) * v.xr(k);
      } else {
        d.hR[k] = -v.yr(k) * v.x(k + 1) * v.hR(k);
        d.hL[k] = -v.hL(k) * v.xr(k + 1) * v.yl(k);
      }
    }
    return d;
  }

  const bool left = ax.side == Side::L;
  // displayed components
  for (int k = 0; k < K; ++k) {
    if (left && ax.j == 1) {
      d.hL[k] = -v.x(k) * E * v.yr(k + 1) * v.hL(k);
      if (k == 0) continue;
      d.xr[k] = -inv(v.hL(k - 1)) * v.x(k - 1) * E * v.hR(k);
      d.yl[k] = inv(v.hR(k - 1)) * E * v.yr(k + 1) * v.hL(k);
    } else if (!left && ax.j == 1) {
      d.hR[k] = -v.hR(k) * v.yl(k + 1) * E * v.xr(k);
      if (k == 0) continue;
      d.yr[k] = v.hR(k) * v.yl(k + 1) * E * inv(v.hL(k - 1));
      d.x[k] = -v.hL(k) * E * v.xr(k - 1) * inv(v.hR(k - 1));
    } else if (left && ax.j == 2) {
      d.hR[k] = -v.yr(k) * E * v.x(k + 1) * v.hR(k);
      if (k == 0) continue;
      d.xr[k] = inv(v.hL(k - 1)) * E * v.x(k + 1) * v.hR(k);
      d.yl[k] = -inv(v.hR(k - 1)) * v.yr(k - 1) * E * v.hL(k);
    } else {
      d.hL[k] = -v.hL(k) * v.xr(k + 1) * E * v.yl(k);
      if (k == 0) continue;
      d.yr[k] = -v.hR(k) * E * v.yl(k - 1) * inv(v.hL(k - 1));
      d.x[k] = v.hL(k) * v.xr(k + 1) * E * inv(v.hR(k - 1));
    }
  }
  // remaining components from h^L_0 = h^R_0 and the quasi-norm relations
  const bool missing_hR = (left && ax.j == 1) || (!left && ax.j == 2);
  if (missing_hR) {
    d.hR[0] = d.hL[0];
    for (int k = 1; k < K; ++k) {
      if (left)  // h^R_k = h^R_{k-1}(I - yl_k xr_k)
        d.hR[k] = d.hR[k - 1] * (I - v.yl(k) * v.xr(k)) -
                  v.hR(k - 1) * (d.yl[k] * v.xr(k) + v.yl(k) * d.xr[k]);
      else  // h^R_k = (I - yr_k x_k) h^R_{k-1}, with yr, x displayed
        d.hR[k] = (I - v.yr(k) * v.x(k)) * d.hR[k - 1] -
                  (d.yr[k] * v.x(k) + v.yr(k) * d.x[k]) * v.hR(k - 1);
    }
  } else {
    d.hL[0] = d.hR[0];
    for (int k = 1; k < K; ++k) {
      if (!left)  // h^L_k = (I - x_k yr_k) h^L_{k-1}
        d.hL[k] = (I - v.x(k) * v.yr(k)) * d.hL[k - 1] -
                  (d.x[k] * v.yr(k) + v.x(k) * d.yr[k]) * v.hL(k - 1);
      else  // h^L_k = h^L_{k-1}(I - xr_k yl_k)
        d.hL[k] = d.hL[k - 1] * (I - v.xr(k) * v.yl(k)) -
                  v.hL(k - 1) * (d.xr[k] * v.yl(k) + v.xr(k) * d.yl[k]);
    }
  }
  for (int k = 1; k < K; ++k) {
    if (left) {  // x = hL xr hR^{-1}, yr = hR yl hL^{-1}
      d.x[k] = d_abci(v.hL(k), d.hL[k], v.xr(k), d.xr[k], v.hR(k), d.hR[k]);
      d.yr[k] = d_abci(v.hR(k), d.hR[k], v.yl(k), d.yl[k], v.hL(k), d.hL[k]);
    } else {  // xr = hL^{-1} x hR, yl = hR^{-1} yr hL
      d.xr[k] = d_aibc(v.hL(k), d.hL[k], v.x(k), d.x[k], v.hR(k), d.hR[k]);
      d.yl[k] = d_aibc(v.hR(k), d.hR[k], v.yr(k), d.yr[k], v.hL(k), d.hL[k]);
    }
  }
  return d;
}

VerblunskyTable table_axpy(const VerblunskyTable& T, double s, const VerblunskyTable& dT) {
  VerblunskyTable r = T;
  for (int k = 0; k < T.size(); ++k) {
    r.x[k] += s * dT.x[k];
    r.xr[k] += s * dT.xr[k];
    r.yl[k] += s * dT.yl[k];
    r.yr[k] += s * dT.yr[k];
    r.hL[k] += s * dT.hL[k];
    r.hR[k] += s * dT.hR[k];
  }
  return r;
}

double table_distance(const VerblunskyTable& a, const VerblunskyTable& b, int lo, int hi) {
  double r = 0;
  hi = std::min({hi, a.size() - 1, b.size() - 1});
  for (int k = lo; k <= hi; ++k) {
    for (double e : {(a.x[k] - b.x[k]).norm(), (a.xr[k] - b.xr[k]).norm(),
                     (a.yl[k] - b.yl[k]).norm(), (a.yr[k] - b.yr[k]).norm(),
                     (a.hL[k] - b.hL[k]).norm(), (a.hR[k] - b.hR[k]).norm()})
      if (!(e <= r)) r = e;
  }
  return r;
}

namespace {

bool finite_state(const VerblunskyTable& T) {
  for (int k = 0; k < T.size(); ++k) {
    for (const auto* v : {&T.x, &T.xr, &T.yl, &T.yr, &T.hL, &T.hR})
      if (!(*v)[k].allFinite()) return false;
    Eigen::JacobiSVD<MatrixXc> a(T.hL[k]), b(T.hR[k]);
    if (a.singularValues().minCoeff() < 1e-12 * std::max(1.0, a.singularValues()(0)) ||
        b.singularValues().minCoeff() < 1e-12 * std::max(1.0, b.singularValues()(0)))
      return false;
  }
  return true;
}

}  // namespace

FlowTrajectory flow_integrate(const VerblunskyTable& T0, const FlowAxis& ax, double dt,
                              int steps) {
  if (steps < 1) throw ConfigError("flow needs at least one step");
  FlowTrajectory tr;
  tr.axis = ax;
  tr.dt = dt;
  tr.times.push_back(0);
  tr.tables.push_back(T0);
  VerblunskyTable T = T0;
  for (int s = 0; s < steps; ++s) {
    const VerblunskyTable k1 = toeplitz_rhs(T, ax);
    const VerblunskyTable k2 = toeplitz_rhs(table_axpy(T, dt / 2, k1), ax);
    const VerblunskyTable k3 = toeplitz_rhs(table_axpy(T, dt / 2, k2), ax);
    const VerblunskyTable k4 = toeplitz_rhs(table_axpy(T, dt, k3), ax);
    VerblunskyTable next = table_axpy(T, dt / 6, k1);
    next = table_axpy(next, dt / 3, k2);
    next = table_axpy(next, dt / 3, k3);
    next = table_axpy(next, dt / 6, k4);
    if (!finite_state(next)) {
      tr.truncated = true;
      break;
    }
    T = std::move(next);
    tr.times.push_back((s + 1) * dt);
    tr.tables.push_back(T);
  }
  return tr;
}

FlowTrajectory flow_with_oracle(const Measure& mu, const FlowAxis& ax, int N, double t_end,
                                int steps) {
  const CmvSystem sys = build_system(mu, N);
  FlowTrajectory tr = flow_integrate(sys.V, ax, t_end / steps, steps);
  // the zero tail beyond the table only reaches the last few indices
  tr.compare_hi = std::max(1, N - 4);
  const double t = tr.times.back();
  try {
    const VerblunskyTable ref = oracle_table(mu, shifted(FlowTimes::zero(mu.m), ax, t), N);
    tr.oracle_gap = table_distance(tr.tables.back(), ref, 1, tr.compare_hi);
  } catch (const QuasiDefinitenessError&) {
    tr.truncated = true;
  }
  return tr;
}

double toeplitz_fd_residual(const Measure& mu, const FlowTimes& t0, const FlowAxis& ax, int N,
                            double h) {
  const VerblunskyTable T = oracle_table(mu, t0, N);
  const VerblunskyTable tp = oracle_table(mu, shifted(t0, ax, h), N);
  const VerblunskyTable tm = oracle_table(mu, shifted(t0, ax, -h), N);
  const VerblunskyTable fd = table_axpy(table_axpy(zero_like(T), 1 / (2 * h), tp), -1 / (2 * h), tm);
  return table_distance(toeplitz_rhs(T, ax), fd, 1, N - 2);
}

CheckResult bilinear_check(const Measure& mu, const FlowTimes& t, const FlowTimes& tt, int N,
                           int l_max, int nodes) {
  CheckResult r;
  r.check = "bilinear";
  r.tol = 1e-9;
  const int n_max = deformed_moment_range(mu, N);
  const CmvSystem a = build_system(deform_measure(mu, t, n_max), N);
  const CmvSystem b = build_system(deform_measure(mu, tt, n_max), N);
  const FlowTimes dtL = [&] {
    FlowTimes d = FlowTimes::zero(mu.m);
    for (int j = 1; j <= 2; ++j) d.at(Side::L, j) = t.at(Side::L, j) - tt.at(Side::L, j);
    return d;
  }();
  const FlowTimes dtR = [&] {
    FlowTimes d = FlowTimes::zero(mu.m);
    for (int j = 1; j <= 2; ++j) d.at(Side::R, j) = tt.at(Side::R, j) - t.at(Side::R, j);
    return d;
  }();
  auto eL = [&](Complex z) { return flow_exponential(dtL.at(Side::L, 1), dtL.at(Side::L, 2), z); };
  auto eR = [&](Complex z) { return flow_exponential(dtR.at(Side::R, 1), dtR.at(Side::R, 2), z); };
  // ∮ f(z) dz over |z| = rho, counterclockwise
  auto contour = [&](double rho, const std::function<MatrixXc(Complex)>& f) {
    MatrixXc acc = MatrixXc::Zero(mu.m, mu.m);
    for (int k = 0; k < nodes; ++k) {
      const Complex z = std::polar(rho, kTwoPi * k / nodes);
      acc += f(z) * (Complex(0, 1) * z);
    }
    return MatrixXc(acc * (kTwoPi / nodes));
  };
  const bool same = [&] {
    for (int s = 0; s < 2; ++s)
      for (int j = 0; j < 2; ++j)
        if ((t.t[s][j] - tt.t[s][j]).norm() != 0) return false;
    return true;
  }();
  const MatrixXc iI = Complex(0, 1) * a.id();
  l_max = std::min(l_max, N);
  for (int l = 0; l < l_max; ++l) {
    for (int k = 0; k < l_max; ++k) {
      const MatrixXc lhs = contour(0.8, [&](Complex z) -> MatrixXc {
        return a.L1(l, z) * eL(z) * deformed_fourier(mu, tt, z) / z * b.L2d(k, 1.0 / std::conj(z));
      });
      const MatrixXc rhs = contour(1.25, [&](Complex z) -> MatrixXc {
        return a.L1(l, z) * deformed_fourier(mu, t, z) / z * eR(z) * b.L2d(k, 1.0 / std::conj(z));
      });
      r.add("left", {l, k}, rel_residual(lhs, rhs));
      const MatrixXc lhsR = contour(0.8, [&](Complex z) -> MatrixXc {
        return a.R2d(l, 1.0 / std::conj(z)) * deformed_fourier(mu, t, z) / z * eR(z) * b.R1(k, z);
      });
      const MatrixXc rhsR = contour(1.25, [&](Complex z) -> MatrixXc {
        return a.R2d(l, 1.0 / std::conj(z)) * eL(z) * deformed_fourier(mu, tt, z) / z * b.R1(k, z);
      });
      r.add("right", {l, k}, rel_residual(lhsR, rhsR));
      if (same) {
        const MatrixXc want = l == k ? iI : MatrixXc::Zero(mu.m, mu.m);
        r.add("left equal times", {l, k}, rel_residual(lhs, want));
        r.add("right equal times", {l, k}, rel_residual(lhsR, want));
      }
    }
  }
  r.collapse();
  return r;
}

namespace {

MatrixXc upper_part(const MatrixXc& a, int m) {  // block upper including the diagonal
  MatrixXc r = a;
  const int n = int(a.rows()) / m;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) r.block(i * m, j * m, m, m).setZero();
  return r;
}
MatrixXc lower_part(const MatrixXc& a, int m) {  // strictly block lower
  return a - upper_part(a, m);
}

MatrixXc upsilon_pow(int N, int m, int p) {
  const MatrixXc u = upsilon<double>(N, m).dense();
  return p > 0 ? u : MatrixXc(u.transpose());
}

struct Generators {
  MatrixXc BL, BR;  // B^{H,L}, B^{H,R}
};

// B^{LL} = (S1 M S1^{-1})_+, B^{LR} = -(Z2^{-1} A Z2)_+, B^{RL} = -(S2 M S2^{-1})_-,
// B^{RR} = (Z1^{-1} A Z1)_-, with M = E Υ^p and A = E Υ^{-p}, p = -1 for j = 1 and 1 for j = 2
Generators generators(const CmvSystem& s, const FlowAxis& ax) {
  const int N = s.N, m = s.m;
  const int p = power_of(ax.j);
  const MatrixXc Eb = block_diag_repeat<double>(diag_unit(ax, m), N);
  const MatrixXc M = Eb * upsilon_pow(N, m, p);
  const MatrixXc A = Eb * upsilon_pow(N, m, -p);
  Generators g;
  if (ax.side == Side::L) {
    g.BL = upper_part(s.S1 * M * s.S1i, m);
    g.BR = -upper_part(s.Z2i * A * s.Z2, m);
  } else {
    g.BL = -lower_part(s.S2 * M * s.S2i, m);
    g.BR = lower_part(s.Z1i * A * s.Z1, m);
  }
  return g;
}

}  // namespace

CheckResult wave_and_zs_checks(const Measure& mu, const FlowTimes& t0, const FlowAxis& a,
                               const FlowAxis& b, int N, double h) {
  CheckResult r;
  r.check = "wave_zs";
  r.tol = 1e-5;
  const int m = mu.m;
  const int Ne = N + 8;
  const int n_max = deformed_moment_range(mu, Ne);
  auto sys_at = [&](const FlowTimes& t) { return build_system(deform_measure(mu, t, n_max), Ne); };
  auto rel = [&](const MatrixXc& x, const MatrixXc& y) {
    return interior_norm<double>(x - y, m, N) /
           std::max({1.0, interior_norm<double>(x, m, N), interior_norm<double>(y, m, N)});
  };
  const CmvSystem s0 = sys_at(t0);
  const MatrixXc JL = s0.S1 * upsilon<double>(Ne, m).dense() * s0.S1i;
  const MatrixXc JR = s0.Z1i * upsilon<double>(Ne, m).dense() * s0.Z1;
  const MatrixXc C0 = s0.Z2i * eta<double>(Ne, m).dense() * s0.S1i;

  auto derivative = [&](const FlowAxis& ax, auto get) {
    const CmvSystem sp = sys_at(shifted(t0, ax, h));
    const CmvSystem sm = sys_at(shifted(t0, ax, -h));
    return MatrixXc((get(sp) - get(sm)) / (2 * h));
  };

  for (const FlowAxis& ax : {a, b}) {
    const std::string nm = axis_name(ax);
    const Generators g = generators(s0, ax);
    const int p = power_of(ax.j);
    const MatrixXc Eb = block_diag_repeat<double>(diag_unit(ax, m), Ne);
    const MatrixXc M = Eb * upsilon_pow(Ne, m, p);
    const MatrixXc A = Eb * upsilon_pow(Ne, m, -p);
    const MatrixXc dS1 = derivative(ax, [](const CmvSystem& s) { return s.S1; }) * s0.S1i;
    const MatrixXc dS2 = derivative(ax, [](const CmvSystem& s) { return s.S2; }) * s0.S2i;
    const MatrixXc dZ1 = s0.Z1i * derivative(ax, [](const CmvSystem& s) { return s.Z1; });
    const MatrixXc dZ2 = s0.Z2i * derivative(ax, [](const CmvSystem& s) { return s.Z2; });
    if (ax.side == Side::L) {
      // W = S1 e_L(Υ): ∂W W^{-1} = ∂S1 S1^{-1} + S1 M S1^{-1}
      r.add("wave S1 " + nm, {}, rel(dS1 + s0.S1 * M * s0.S1i, g.BL));
      r.add("wave S2 " + nm, {}, rel(dS2, g.BL));
      r.add("wave Z1 " + nm, {}, rel(dZ1, g.BR));
      r.add("wave Z2 " + nm, {}, rel(dZ2, g.BR + s0.Z2i * A * s0.Z2));
    } else {
      r.add("wave S1 " + nm, {}, rel(dS1, g.BL));
      r.add("wave S2 " + nm, {}, rel(dS2, g.BL + s0.S2 * M * s0.S2i));
      r.add("wave Z1 " + nm, {}, rel(dZ1, g.BR - s0.Z1i * A * s0.Z1));
      r.add("wave Z2 " + nm, {}, rel(dZ2, g.BR));
    }
    const MatrixXc dJL = derivative(ax, [&](const CmvSystem& s) {
      return MatrixXc(s.S1 * upsilon<double>(Ne, m).dense() * s.S1i);
    });
    const MatrixXc dJR = derivative(ax, [&](const CmvSystem& s) {
      return MatrixXc(s.Z1i * upsilon<double>(Ne, m).dense() * s.Z1);
    });
    const MatrixXc dC = derivative(ax, [&](const CmvSystem& s) {
      return MatrixXc(s.Z2i * eta<double>(Ne, m).dense() * s.S1i);
    });
    r.add("Lax J^L " + nm, {}, rel(dJL, g.BL * JL - JL * g.BL));
    r.add("Lax J^R " + nm, {}, rel(dJR, JR * g.BR - g.BR * JR));
    r.add("intertwiner C_[0] " + nm, {}, rel(dC, -g.BR * C0 - C0 * g.BL));
  }

  // ∂_a B_b - ∂_b B_a = [B_a, B_b] on the left, = [B_b, B_a] on the right
  auto dB = [&](const FlowAxis& along, const FlowAxis& gen) {
    const Generators gp = generators(sys_at(shifted(t0, along, h)), gen);
    const Generators gm = generators(sys_at(shifted(t0, along, -h)), gen);
    return Generators{(gp.BL - gm.BL) / (2 * h), (gp.BR - gm.BR) / (2 * h)};
  };
  const Generators ga = generators(s0, a), gb = generators(s0, b);
  const Generators dab = dB(a, b), dba = dB(b, a);
  const std::string pair = axis_name(a) + " " + axis_name(b);
  r.add("ZS left " + pair, {}, rel(dab.BL - dba.BL, ga.BL * gb.BL - gb.BL * ga.BL));
  r.add("ZS right " + pair, {}, rel(dab.BR - dba.BR, gb.BR * ga.BR - ga.BR * gb.BR));
  return r;
}

}  // namespace molpuc

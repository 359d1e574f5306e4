#include "molpuc/suites.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "molpuc/cd_kernels.hpp"
#include "molpuc/cmv_operators.hpp"
#include "molpuc/discrete.hpp"

namespace molpuc {

namespace {

CheckResult start(const char* name, double tol) {
  CheckResult r;
  r.check = name;
  r.tol = tol;
  return r;
}

CheckResult finish(CheckResult r, const SuiteOptions& opt) {
  if (opt.tol > 0) r.tol = opt.tol;
  return r;
}

// items of a sub-check, ids prefixed so that merged suites stay unambiguous
void absorb(CheckResult& r, const CheckResult& sub, const std::string& prefix = "") {
  const std::string p = prefix.empty() ? sub.check + ": " : prefix;
  for (const auto& it : sub.items) r.add(p + it.id, it.indices, it.residual);
  for (const auto& it : sub.errata) r.add_erratum(p + it.id, it.indices, it.residual);
  r.notes.insert(r.notes.end(), sub.notes.begin(), sub.notes.end());
}

double rel(const MatrixXc& a, const MatrixXc& b) {
  return (a - b).norm() / std::max({a.norm(), b.norm(), 1e-300});
}

std::vector<Complex> poly_samples(unsigned seed) {
  auto z = ring_samples({0.7, 1.0, 1.4}, 4, seed);
  z.resize(10);
  return z;
}

}  // namespace

std::vector<FlowAxis> all_axes(int m) {
  std::vector<FlowAxis> out;
  for (Side s : {Side::L, Side::R})
    for (int j : {1, 2})
      for (int a = -1; a < m; ++a) out.push_back({s, j, a});
  return out;
}

MatrixXc seeded_diagonal(int m, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> mod(0.1, 0.3), ang(0, 6.283185307179586);
  MatrixXc d = MatrixXc::Zero(m, m);
  for (int i = 0; i < m; ++i) d(i, i) = std::polar(mod(gen), ang(gen));
  return d;
}

CheckResult suite_structure(const Measure& mu, const SuiteOptions& opt) {
  CheckResult r = start("structure", 1e-12);
  const Blocks gL = moment_matrix(mu, Side::L, opt.N), gR = moment_matrix(mu, Side::R, opt.N);
  const auto s = structural_checks<double>(gL, gR, upsilon<double>(opt.N, mu.m),
                                           eta<double>(opt.N, mu.m));
  const double g = std::max(s.g_norm, 1e-300);
  r.add("Upsilon g^L = g^L Upsilon", {}, s.upsilon_commute_L / g);
  r.add("Upsilon g^R = g^R Upsilon", {}, s.upsilon_commute_R / g);
  r.add("eta g^R = g^L eta", {}, s.eta_intertwine / g);
  r.add("eta Upsilon = Upsilon^-1 eta", {}, s.eta_upsilon);
  if (mu.hermitian) {
    r.add("g^L hermitian", {}, (gL.dense() - gL.dense().adjoint()).norm() / g);
    r.add("g^R hermitian", {}, (gR.dense() - gR.dense().adjoint()).norm() / g);
  }
  return finish(r, opt);
}

CheckResult suite_factorization(const Measure& mu, const SuiteOptions& opt) {
  CheckResult r = start("factorization", 1e-11);
  const int N = opt.N, m = mu.m;
  const CmvSystem S = build_system(mu, N);
  const double nL = S.gL.dense().norm(), nR = S.gR.dense().norm();
  r.add("reconstruction S1^-1 S2 = g^L", {}, (S.S1i * S.S2 - S.gL.dense()).norm() / nL);
  r.add("reconstruction Z2 Z1^-1 = g^R", {}, (S.Z2 * S.Z1i - S.gR.dense()).norm() / nR);
  for (int l = 0; l < N; ++l) {
    r.add("D^L Schur complement", {l}, rel(S.fL.D[l], schur_complement(S.gL.leading(l + 1), l)));
    r.add("D^R Schur complement", {l}, rel(S.fR.D[l], schur_complement(S.gR.leading(l + 1), l)));
  }
  if (mu.hermitian) {
    const MatrixXc S2hat = S.fL.block_diag_D_inverse() * S.S2;
    const MatrixXc Z1hat = S.Z1 * S.fR.block_diag_D();
    r.add("hermitian S1^dagger = S2hat^-1", {}, rel(S.S1.adjoint(), S2hat.inverse()));
    r.add("hermitian Z2^dagger = Z1hat^-1", {}, rel(S.Z2.adjoint(), Z1hat.inverse()));
  }
  const CmvSystem B = build_system(mu, N + 4);
  const int n = N * m;
  r.add("nested S1", {}, rel(B.S1.topLeftCorner(n, n), S.S1));
  r.add("nested S2", {}, rel(B.S2.topLeftCorner(n, n), S.S2));
  r.add("nested Z1", {}, rel(B.Z1.topLeftCorner(n, n), S.Z1));
  r.add("nested Z2", {}, rel(B.Z2.topLeftCorner(n, n), S.Z2));
  return finish(r, opt);
}

CheckResult suite_biorthogonality(const Measure& mu, const SuiteOptions& opt) {
  CheckResult r = start("biorthogonality", 1e-10);
  const CmvSystem S = build_system(mu, opt.N);
  r.add("biorthogonality", {opt.N}, biorthogonality_check(S, opt.N));
  r.add("quasi-norm integrals", {opt.N}, norm_integral_residual(S, opt.N));
  return finish(r, opt);
}

CheckResult suite_dual_route(const Measure& mu, const SuiteOptions& opt) {
  CheckResult r = start("dual_route", 1e-10);
  const CmvSystem S = build_system(mu, opt.N);
  for (Complex z : poly_samples(opt.seed)) {
    for (int l = 0; l < opt.N; ++l) {
      r.add("phi1L Schur route", {l}, rel(S.L1(l, z), schur_phi1L(S.gL, l, z)));
      r.add("phi1L last-row Schur route", {l}, rel(S.L1(l, z), schur_phi1L_last_row(S.gL, l, z)));
      r.add("phi2L dagger Schur route", {l}, rel(S.L2d(l, z), schur_phi2L_dagger(S.gL, l, z)));
      r.add("phi1R Schur route", {l}, rel(S.R1(l, z), schur_phi1R(S.gR, l, z)));
      r.add("phi2R dagger Schur route", {l}, rel(S.R2d(l, z), schur_phi2R_dagger(S.gR, l, z)));
      r.add("P^L_1 Schur route", {l}, rel(S.P(Side::L, 1, l, z), schur_szego_L1(S.gL, S.gR, l, z)));
    }
  }
  r.collapse();
  r.add("Szego monic", {}, szego_monic_defect(S.szego));
  return finish(r, opt);
}

CheckResult suite_verblunsky(const Measure& mu, const SuiteOptions& opt) {
  CheckResult r = start("verblunsky", 1e-10);
  const CmvSystem S = build_system(mu, opt.N);
  const VerblunskyRoutes v = verblunsky_routes(S);
  r.add("alpha from S1 vs P(0)", {}, v.s1);
  r.add("alpha from S2 vs P(0)", {}, v.s2);
  r.add("alpha from Z2 vs P(0)", {}, v.z2);
  r.add("alpha from Z1 vs P(0)", {}, v.z1);
  const auto q = quasi_norm_relations(S);
  for (size_t k = 0; k < q.size(); ++k) r.add("quasi-norm relation", {int(k) + 1}, q[k]);
  r.add("quasi-norm integrals", {opt.N}, norm_integral_residual(S, opt.N));
  if (mu.hermitian) {
    double a = 0, h = 0;
    for (int l = 1; l < S.V.size(); ++l) {
      a = std::max({a, (S.x(l) - S.yl(l).adjoint()).norm(), (S.xr(l) - S.yr(l).adjoint()).norm()});
      h = std::max({h, (S.hL(l) - S.hL(l).adjoint()).norm() / S.hL(l).norm(),
                    (S.hR(l) - S.hR(l).adjoint()).norm() / S.hR(l).norm()});
    }
    r.add("hermitian alpha_1 = alpha_2", {}, a);
    r.add("hermitian h", {}, h);
  }
  r.collapse();
  return finish(r, opt);
}

CheckResult suite_recursion(const Measure& mu, const SuiteOptions& opt) {
  CheckResult r = start("recursion", 1e-9);
  const CmvSystem S = build_system(mu, opt.N);
  const auto zs = ring_samples({0.7, 1.0, 1.4}, 4, opt.seed);
  absorb(r, recursion_residuals(S, zs));
  absorb(r, szego_recursion_check(S, zs));
  absorb(r, eigen_relations(S, zs));
  absorb(r, operator_identities(S));
  const auto q = quasi_norm_relations(S);
  for (size_t k = 0; k < q.size(); ++k) r.add("quasi-norm relation", {int(k) + 1}, q[k]);
  r.collapse();
  return finish(r, opt);
}

CheckResult suite_appendixB(const Measure& mu, const SuiteOptions& opt) {
  CheckResult r = start("appendixB", 1e-9);
  absorb(r, appendixB_check(build_system(mu, opt.N)), "");
  return finish(r, opt);
}

CheckResult suite_cd(const Measure& mu, const SuiteOptions& opt) {
  CheckResult r = start("cd", 1e-9);
  const CmvSystem S = build_system(mu, opt.N);
  const auto pairs = cd_sample_pairs(20, opt.seed);
  absorb(r, cd_formula_residuals(S, pairs, cd_max_level(S)), "");
  const int lk = std::max(1, opt.N / 2);
  for (Side s : {Side::L, Side::R}) {
    const std::string sn(1, side_char(s));
    for (size_t k = 0; k < 4 && k < pairs.size(); ++k)
      r.add("reproducing K^" + sn, {lk, int(k)},
            reproducing_check(S, s, lk, pairs[k].first, pairs[k].second));
    const ProjectorResiduals p = projector_check(S, s, lk, opt.seed);
    r.add("projector span " + sn, {lk}, p.span);
    r.add("projector idempotent " + sn, {lk}, p.idempotency);
  }
  if (mu.hermitian) {
    const KernelPsd k = kernel_psd(S, lk);
    r.add("kernel K(z,z) positive", {lk}, std::max(0.0, -k.min_eig_ratio));
    r.add("kernel K(z,z) hermitian", {lk}, k.hermitian_defect);
  }
  r.collapse();
  return finish(r, opt);
}

CheckResult suite_kernels_cross(const Measure& mu, const SuiteOptions& opt) {
  CheckResult r = start("kernels_cross", 1e-9);
  const CmvSystem S = build_system(mu, opt.N);
  absorb(r, kernel_cross_relations(S, cd_sample_pairs(20, opt.seed), cd_max_level(S)), "");
  return finish(r, opt);
}

CheckResult suite_secondkind(const Measure& mu, const SuiteOptions& opt) {
  CheckResult r = start("secondkind", 1e-9);
  const CmvSystem S = build_system(mu, opt.N);
  const SecondKindSeries ser = second_kind_series(S);
  // a moment list is a truncated series: stay close to the circle so its tail is negligible
  const bool list = mu.kind == MeasureKind::moment_list;
  const Complex zo = list ? 1.1 : 2.0, zi = list ? 0.9 : 0.4;
  const int nodes = list ? 1024 : 256;
  const int lmax = std::min(opt.N, 6);
  for (SecondKind k : {SecondKind::C1L, SecondKind::C2L, SecondKind::C1R, SecondKind::C2R}) {
    const std::string nm = second_kind_name(k);
    for (int l = 0; l < lmax; ++l) {
      for (Complex z : {zo, zi}) {
        const MatrixXc both = second_kind_partial(ser, k, l, z, 1) + second_kind_partial(ser, k, l, z, 2);
        r.add(nm + " series vs Fourier product", {l}, rel_residual(both, second_kind(S, k, l, z)));
      }
      r.add(nm + " Cauchy |z|>1", {l},
            rel_residual(second_kind_cauchy(S, k, l, zo, 1, nodes), second_kind_partial(ser, k, l, zo, 1)));
      r.add(nm + " Cauchy |z|<1", {l},
            rel_residual(second_kind_cauchy(S, k, l, zi, 2, nodes), second_kind_partial(ser, k, l, zi, 2)));
    }
  }
  for (int j = 0; j < opt.N; ++j)
    for (Complex z : {zo, zi}) r.add("Gamma series", {j}, gamma_series_residual(S, ser, j, z));
  r.collapse();
  return finish(r, opt);
}

CheckResult suite_toeplitz(const Measure& mu, const SuiteOptions& opt) {
  CheckResult r = start("toeplitz", 5e-7);
  const int N = std::min(opt.N, 10);
  const FlowTimes t0 = FlowTimes::zero(mu.m);
  for (const FlowAxis& ax : all_axes(mu.m))
    r.add("ODE vs FD oracle " + axis_name(ax), {}, toeplitz_fd_residual(mu, t0, ax, N));
  // total flow as the sum of its partial flows, exactly
  const VerblunskyTable T = oracle_table(mu, t0, N);
  for (Side s : {Side::L, Side::R})
    for (int j : {1, 2}) {
      VerblunskyTable sum = table_axpy(T, -1, T);
      for (int a = 0; a < mu.m; ++a) sum = table_axpy(sum, 1, toeplitz_rhs(T, {s, j, a}));
      r.add("total = sum of partials " + axis_name({s, j, -1}), {},
            table_distance(sum, toeplitz_rhs(T, {s, j, -1}), 0, N - 1));
    }
  return finish(r, opt);
}

CheckResult suite_flow(const Measure& mu, const SuiteOptions& opt) {
  CheckResult r = start("flow", 1e-7);
  const FlowTrajectory tr = flow_with_oracle(mu, opt.axis, opt.N, opt.t_end, opt.steps);
  r.add("RK4 endpoint vs refactorization " + axis_name(opt.axis), {opt.steps},
        tr.truncated ? std::nan("") : tr.oracle_gap);
  return finish(r, opt);
}

CheckResult suite_wave(const Measure& mu, const SuiteOptions& opt) {
  CheckResult r = start("wave_zs", 1e-5);
  const int b = mu.m > 1 ? 1 : 0;
  absorb(r, wave_and_zs_checks(mu, FlowTimes::zero(mu.m), {Side::L, 1, 0}, {Side::R, 2, b},
                               std::min(opt.N, 8)), "");
  return finish(r, opt);
}

CheckResult suite_bilinear(const Measure& mu, const SuiteOptions& opt) {
  CheckResult r = start("bilinear", 1e-9);
  const int N = std::min(opt.N, 10);
  const FlowTimes t0 = FlowTimes::zero(mu.m);
  for (const FlowAxis& ax : all_axes(mu.m))
    for (double d : {0.0, 1e-2})
      absorb(r, bilinear_check(mu, t0, shifted(t0, ax, d), N, N / 2),
             axis_name(ax) + (d == 0 ? " equal times: " : " dt=1e-2: "));
  r.collapse();
  return finish(r, opt);
}

namespace {

std::vector<Shift> seeded_shifts(int m, unsigned seed) {
  std::vector<Shift> s;
  unsigned k = 0;
  for (Side side : {Side::L, Side::R})
    for (int sign : {1, -1}) s.push_back({side, sign, seeded_diagonal(m, seed + 17 * ++k)});
  return s;
}

}  // namespace

CheckResult suite_darboux(const Measure& mu, const SuiteOptions& opt) {
  CheckResult r = start("darboux", 1e-9);
  absorb(r, darboux_check(mu, seeded_shifts(mu.m, opt.seed), std::min(opt.N, 8)), "");
  return finish(r, opt);
}

CheckResult suite_miwa(const Measure& mu, const SuiteOptions& opt) {
  CheckResult r = start("miwa", 1e-9);
  const int N = std::min(opt.N, 8);
  const auto pairs = cd_sample_pairs(6, opt.seed);
  absorb(r, miwa_kernel_check(mu, seeded_diagonal(mu.m, opt.seed), N, pairs));
  std::vector<Complex> ws;
  for (const auto& p : cd_sample_pairs(2, opt.seed + 1)) ws.push_back(0.5 * p.first);
  absorb(r, miwa_scalar_relations(mu, ws, N));
  return finish(r, opt);
}

CheckResult suite_miwa_darboux(const Measure& mu, const SuiteOptions& opt) {
  CheckResult r = start("miwa_darboux", 1e-12);
  std::vector<Shift> s = seeded_shifts(mu.m, opt.seed);
  for (Shift& x : s) x.d = x.d(0, 0) * MatrixXc::Identity(mu.m, mu.m);
  absorb(r, miwa_darboux_consistency(mu, s, std::min(opt.N, 10)), "");
  return finish(r, opt);
}

CheckResult suite_elteorema(const Measure& mu, const SuiteOptions& opt) {
  CheckResult r = start("elteorema", 1e-7);
  const ElteoremaReport e = elteorema_reconstruct(mu, ring_samples({0.7, 1.4}, 4, opt.seed), 3);
  absorb(r, e.result, "");
  for (Complex z : e.skipped)
    r.notes.push_back("skipped z = " + std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") +
                      std::to_string(z.imag()) + "i: shifted measure not quasi-definite");
  return finish(r, opt);
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> v{"structure", "biorthogonality", "recursion", "appendixB",
                                          "cd",        "kernels-cross",   "secondkind"};
  return v;
}

const std::vector<std::string>& all_suite_names() {
  static const std::vector<std::string> v{
      "structure", "factorization", "biorthogonality", "dual-route", "verblunsky",
      "recursion", "appendixB",     "cd",              "kernels-cross", "secondkind",
      "toeplitz",  "flow",          "wave",            "bilinear",   "darboux",
      "miwa",      "miwa-darboux",  "elteorema"};
  return v;
}

CheckResult run_suite(const std::string& name, const Measure& mu, const SuiteOptions& opt) {
  using Fn = CheckResult (*)(const Measure&, const SuiteOptions&);
  static const std::map<std::string, Fn> table{
      {"structure", suite_structure},       {"factorization", suite_factorization},
      {"biorthogonality", suite_biorthogonality}, {"dual-route", suite_dual_route},
      {"verblunsky", suite_verblunsky},     {"recursion", suite_recursion},
      {"appendixB", suite_appendixB},       {"cd", suite_cd},
      {"kernels-cross", suite_kernels_cross}, {"secondkind", suite_secondkind},
      {"toeplitz", suite_toeplitz},         {"flow", suite_flow},
      {"wave", suite_wave},                 {"bilinear", suite_bilinear},
      {"darboux", suite_darboux},           {"miwa", suite_miwa},
      {"miwa-darboux", suite_miwa_darboux}, {"elteorema", suite_elteorema}};
  auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown suite \"" + name + "\"");
  return it->second(mu, opt);
}

}  // namespace molpuc

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "diracml/boundary_spectra.hpp"
#include "diracml/clifford.hpp"
#include "diracml/fem2d.hpp"
#include "diracml/model1d.hpp"
#include "diracml/radial_exact.hpp"
#include "diracml/study.hpp"

using namespace diracml;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Residuals of every finite element solve, checked by criterion 11.
std::vector<double> g_fem_residuals;

// Residual contract: ||K x - lambda M x|| / ||M x|| <= tol * max(1, |lambda|).
void record(const Spectrum& s) {
  for (std::size_t i = 0; i < s.residuals.size(); ++i)
    g_fem_residuals.push_back(s.residuals[i] / std::max(1.0, std::abs(s.eigenvalues[i])));
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Outcome from_study(StudyKind kind) {
  const StudyReport r = run_study(default_study(kind));
  Outcome o{r.passed(), ""};
  for (const Assertion& a : r.assertions) {
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += a.name + (a.pass ? " ok" : " FAILED") + (a.detail.empty() ? "" : " (" + a.detail + ")");
  }
  return o;
}

Outcome criterion1() {
  int pairs = 0;
  for (int n = 1; n <= kMaxCliffordDim; ++n) {
    const AnticommutationReport r = check_anticommutation(build_gammas(n));
    if (!r.ok()) return {false, "n = " + std::to_string(n) + ": " + r.failures.front()};
    pairs += r.pairs_checked;
  }
  return {true, std::to_string(pairs) + " relations exact for n = 1..12"};
}

Outcome criterion2() {
  const Model1DParams p{20.0, 1.0, 1.0};
  const Model1DSpectrum s = spectrum_S(p, 10);
  const Model1DSpectrum sp = spectrum_Sprime(p, 10);
  const double e1 = std::abs(s.eigenvalues[0] + 400.0);
  const double e2 = std::abs(sp.eigenvalues[0] + 400.0);
  double res = 0.0;
  for (double r : s.residuals) res = std::max(res, r);
  for (double r : sp.residuals) res = std::max(res, r);
  bool weyl = true;
  const WeylBounds w = weyl_bounds(1.0, 1.0);
  for (double alpha : {-10.0, 0.0, 10.0, 100.0}) {
    const Model1DSpectrum q = spectrum_Sprime({alpha, 1.0, 1.0}, 10);
    for (int j = 2; j <= 10; ++j) {
      const double E = q.eigenvalues[j - 1];
      weyl = weyl && E <= w.b_plus * j * j && E >= w.b_minus * j * j - w.b0;
    }
  }
  return {e1 < 1e-6 && e2 < 1e-6 && res <= 1e-12 && weyl,
          "|E1(S)+400| = " + fmt(e1) + ", |E1(S')+400| = " + fmt(e2) + ", max residual " + fmt(res) +
              ", Weyl sandwich " + (weyl ? "holds" : "violated")};
}

Outcome criterion3() {
  const double rc = lichnerowicz_residual(discretize_boundary(ClosedCurve::circle(1.0), 256, BoundaryScheme::Fourier));
  const ClosedCurve e = ClosedCurve::ellipse(2.0, 1.0);
  std::vector<double> r;
  for (int n : {128, 256, 512}) r.push_back(lichnerowicz_residual(discretize_boundary(e, n, BoundaryScheme::Fd2)));
  bool ok = rc <= 1e-10;
  std::string ratios;
  for (std::size_t i = 1; i < r.size(); ++i) {
    const double q = r[i - 1] / r[i];
    ok = ok && q >= 3.5 && q <= 4.5;
    ratios += (i > 1 ? ", " : "") + fmt(q);
  }
  return {ok, "circle fourier residual " + fmt(rc) + ", ellipse fd2 ratios " + ratios};
}

Outcome criterion4() {
  const auto d = discretize_boundary(ClosedCurve::circle(1.0), 128, BoundaryScheme::Fourier);
  const Eigen::VectorXd l = hermitian_eigenvalues(assemble_L(d));
  const Eigen::VectorXd dd = hermitian_eigenvalues(assemble_extrinsic_dirac(d));
  std::vector<double> sq;
  for (Eigen::Index i = 0; i < dd.size(); ++i) sq.push_back(dd[i] * dd[i]);
  std::sort(sq.begin(), sq.end());
  double el = 0.0, ed = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double k = j / 2;
    el = std::max(el, std::abs(l[j] - (k + 0.5) * (k + 0.5)));
    ed = std::max(ed, std::max(std::abs(sq[2 * j] - l[j]), std::abs(sq[2 * j + 1] - l[j])));
  }
  return {el <= 1e-8 && ed <= 1e-8, "max |L - (k+1/2)^2| = " + fmt(el) + ", max |D^2 - L| (doubled) = " + fmt(ed)};
}

Outcome criterion6() {
  Outcome o = from_study(StudyKind::T1);
  StudyConfig cfg = default_study(StudyKind::T1);
  cfg.jmax = 6;
  const StudyReport r = run_study(cfg);
  const double ref[3] = {0.25, 2.25, 6.25};
  bool clusters = true, approach = true;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto c = cluster_indices(r.rows[i].values, 1e-9);
    clusters = clusters && c.size() == 3 && c[0].size() == 2 && c[1].size() == 2 && c[2].size() == 2;
    if (i > 0)
      for (int q = 0; q < 3; ++q)
        approach = approach && std::abs(r.rows[i].values[2 * q] - ref[q]) < std::abs(r.rows[i - 1].values[2 * q] - ref[q]);
  }
  o.pass = o.pass && clusters && approach;
  o.detail += std::string("; clusters of multiplicity 2 ") + (clusters ? "ok" : "FAILED") +
              "; approach to (0.25, 2.25, 6.25) " + (approach ? "monotone" : "not monotone");
  return o;
}

Outcome criterion10() {
  const double m = -8.0;
  RadialProblem p;
  p.m = m;
  p.jmax = 4;
  const std::vector<double> exact = disk_mit_spectrum(p).squares;
  const ClosedCurve c = ClosedCurve::circle(1.0);
  const LayerSpec layer{3.0 / 8.0, 1.02, 5e-4};
  FemSolveOptions opt;
  opt.h = 0.02;
  opt.layer = layer;
  const FemResult fine = solve_bag(c, m, 4, opt);
  record(fine.spectrum);
  double worst = 0.0;
  for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(fine.spectrum.eigenvalues[j] / exact[j] - 1.0));

  FemSolveOptions coarse;
  coarse.h = 0.1;
  coarse.layer = LayerSpec{3.0 / 8.0, 1.2, 0.02};
  std::vector<std::vector<double>> nested;
  for (int r = 0; r < 3; ++r) {
    coarse.refinements = r;
    const FemResult res = solve_bag(c, m, 4, coarse);
    nested.push_back(res.spectrum.eigenvalues);
    record(res.spectrum);
  }
  bool mono = true;
  for (std::size_t r = 1; r < nested.size(); ++r)
    for (int j = 0; j < 4; ++j) mono = mono && nested[r][j] <= nested[r - 1][j];
  return {worst < 0.01 && mono, std::to_string(fine.dofs) + " dofs, max relative error " + fmt(worst) +
                                    ", nested refinement " + (mono ? "monotone" : "NOT monotone")};
}

Outcome criterion11() {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 40;
    Eigen::MatrixXcd A(n, n), C(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        A(i, j) = cplx(g(rng), g(rng));
        C(i, j) = cplx(g(rng), g(rng));
      }
    const Eigen::MatrixXcd K = 0.5 * (A + A.adjoint());
    const Eigen::MatrixXcd M = C * C.adjoint() / n + Eigen::MatrixXcd::Identity(n, n);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(K, M);
    EigRequest req;
    req.count = 8;
    req.dense_threshold = 0;
    const Spectrum s = lowest({K.sparseView(), M.sparseView()}, req);
    for (int j = 0; j < 8; ++j) worst = std::max(worst, std::abs(s.eigenvalues[j] - oracle.eigenvalues()[j]));
  }
  FemSolveOptions opt;
  opt.h = 0.1;
  const FemResult jr = solve_jump(ClosedCurve::circle(1.0), 0.0, 16.0, 4, opt);
  const FemResult er = solve_bag(ClosedCurve::ellipse(1.5, 1.0), -2.0, 4, opt);
  record(jr.spectrum);
  record(er.spectrum);
  double res = 0.0;
  for (double r : g_fem_residuals) res = std::max(res, r);
  return {worst < 1e-10 && res <= 1e-8 && !g_fem_residuals.empty(),
          "max eigenvalue deviation " + fmt(worst) + ", max FEM residual " + fmt(res) + " over " +
              std::to_string(g_fem_residuals.size()) + " eigenpairs"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> list{
      {1, 1.0, criterion1},
      {2, 1.0, criterion2},
      {3, 5.0, criterion3},
      {4, 5.0, criterion4},
      {5, 30.0, [] { return from_study(StudyKind::LengthInvariance); }},
      {6, 10.0, criterion6},
      {7, 10.0, [] { return from_study(StudyKind::T1Ball); }},
      {8, 10.0, [] { return from_study(StudyKind::T2); }},
      {9, 10.0, [] { return from_study(StudyKind::T3); }},
      {10, 120.0, criterion10},
      {11, 5.0, criterion11},
  };
  int failures = 0;
  for (const Criterion& c : list) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = dt < c.budget_s;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("criterion %d: %s: %s; %.2f s of %.0f s budget%s\n", c.id, pass ? "PASS" : "FAIL", o.detail.c_str(), dt,
                c.budget_s, in_time ? "" : " (over budget)");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(list.size()) - failures, list.size());
  return failures == 0 ? 0 : 1;
}

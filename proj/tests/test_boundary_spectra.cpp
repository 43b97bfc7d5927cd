#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "diracml/boundary_spectra.hpp"

using namespace diracml;

TEST_CASE("L on the unit circle has eigenvalues (k + 1/2)^2, each twice") {
  const auto d = discretize_boundary(ClosedCurve::circle(1.0), 128, BoundaryScheme::Fourier);
  CHECK(std::abs(d.holonomy + 1.0) < 1e-12);
  const Eigen::VectorXd ev = hermitian_eigenvalues(assemble_L(d));
  for (int j = 0; j < 8; ++j) {
    const double k = j / 2;
    CHECK(std::abs(ev[j] - (k + 0.5) * (k + 0.5)) < 1e-8);
  }
}

TEST_CASE("extrinsic Dirac on the unit circle is +-(k + 1/2)") {
  const auto d = discretize_boundary(ClosedCurve::circle(1.0), 64, BoundaryScheme::Fourier);
  Eigen::VectorXd ev = hermitian_eigenvalues(assemble_extrinsic_dirac(d));
  std::vector<double> a(ev.data(), ev.data() + ev.size());
  std::sort(a.begin(), a.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
  for (int j = 0; j < 8; ++j) {
    const double k = j / 4;
    CHECK(std::abs(std::abs(a[j]) - (k + 0.5)) < 1e-8);
  }
}

TEST_CASE("Lichnerowicz residual") {
  const auto d = discretize_boundary(ClosedCurve::circle(1.0), 256, BoundaryScheme::Fourier);
  CHECK(lichnerowicz_residual(d) <= 1e-10);
  const ClosedCurve e = ClosedCurve::ellipse(2.0, 1.0);
  const double r1 = lichnerowicz_residual(discretize_boundary(e, 128, BoundaryScheme::Fd2));
  const double r2 = lichnerowicz_residual(discretize_boundary(e, 256, BoundaryScheme::Fd2));
  CHECK(r1 / r2 >= 3.5);
  CHECK(r1 / r2 <= 4.5);
}

TEST_CASE("curvature potential is -kappa^2 / 4") {
  const ClosedCurve e = ClosedCurve::ellipse(2.0, 1.0);
  const auto d = discretize_boundary(e, 64, BoundaryScheme::Fourier);
  const Eigen::VectorXd v = curvature_potential(d);
  for (int j = 0; j < 64; j += 7) {
    const double k = e.curvature(d.grid.s[j]);
    CHECK(std::abs(v[j] + 0.25 * k * k) < 1e-10);
  }
}

TEST_CASE("spectrum of L is gauge invariant") {
  const ClosedCurve e = ClosedCurve::ellipse(2.0, 1.0);
  const double len = e.length();
  const auto d0 = discretize_boundary(e, 96, BoundaryScheme::Fourier);
  const auto d1 = discretize_boundary(e, 96, BoundaryScheme::Fourier,
                                      [len](double s) { return 0.7 * std::sin(2.0 * M_PI * s / len); });
  const Eigen::VectorXd a = hermitian_eigenvalues(assemble_L(d0));
  const Eigen::VectorXd b = hermitian_eigenvalues(assemble_L(d1));
  for (int j = 0; j < 6; ++j) CHECK(std::abs(a[j] - b[j]) < 1e-8 * (1.0 + a[j]));
}

TEST_CASE("spectral derivative is exact on low modes") {
  const int n = 16;
  const double len = 3.0;
  const Eigen::MatrixXcd D = spectral_derivative(n, len, false);
  Eigen::VectorXcd f(n), df(n);
  for (int j = 0; j < n; ++j) {
    const double x = 2.0 * M_PI * j / n;
    f[j] = std::sin(2.0 * x);
    df[j] = 2.0 * (2.0 * M_PI / len) * std::cos(2.0 * x);
  }
  CHECK((D * f - df).norm() < 1e-11);
}

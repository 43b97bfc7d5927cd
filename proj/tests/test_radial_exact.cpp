#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "diracml/errors.hpp"
#include "diracml/fem2d.hpp"
#include "diracml/radial_exact.hpp"

using namespace diracml;

namespace {

// J_l(z) / z^l continued to z^2 < 0 through I_l, from the standard library.
double jhat(int l, double z2) {
  if (z2 > 0.0) {
    const double z = std::sqrt(z2);
    return std::cyl_bessel_j(l, z) / std::pow(z, l);
  }
  if (z2 < 0.0) {
    const double y = std::sqrt(-z2);
    return std::cyl_bessel_i(l, y) / std::pow(y, l);
  }
  return 1.0 / (std::tgamma(l + 1.0) * std::pow(2.0, l));
}

double oracle_disk(int k, double E, double m, double R) {
  const double z2 = (E * E - m * m) * R * R;
  if (k >= 0) return jhat(k, z2) + (E + m) * R * jhat(k + 1, z2);
  const int n = -k - 1;
  return jhat(n, z2) + (m - E) * R * jhat(n + 1, z2);
}

std::vector<double> scan_roots(const std::function<double(double)>& f, double a, double b, double step) {
  std::vector<double> roots;
  double x0 = a, f0 = f(a);
  for (double x1 = a + step; x1 <= b; x1 += step) {
    const double f1 = f(x1);
    if (f0 * f1 < 0.0) {
      double lo = x0, hi = x1, flo = f0;
      for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm * flo > 0.0) { lo = mid; flo = fm; } else { hi = mid; }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

}  // namespace

TEST_CASE("massless disk ground state solves J0 = J1") {
  const auto r = scan_roots([](double x) { return std::cyl_bessel_j(0, x) - std::cyl_bessel_j(1, x); }, 0.5, 3.0, 0.01);
  REQUIRE(!r.empty());
  RadialProblem p;
  p.jmax = 4;
  const RadialSpectrum s = disk_mit_spectrum(p);
  REQUIRE(s.squares.size() == 4);
  CHECK(std::abs(s.squares[0] - r[0] * r[0]) < 1e-9);
  CHECK(std::abs(s.squares[1] - r[0] * r[0]) < 1e-9);
  CHECK(std::abs(r[0] - 1.4347) < 1e-4);
}

TEST_CASE("massive disk squares match a library-Bessel scan") {
  for (double m : {-4.0, 3.0}) {
    const double R = 1.3;
    std::vector<double> sq;
    for (int k = -8; k <= 7; ++k)
      for (double E : scan_roots([&](double e) { return oracle_disk(k, e, m, R); }, -20.0, 20.0, 1e-3))
        sq.push_back(E * E);
    std::sort(sq.begin(), sq.end());
    RadialProblem p;
    p.radius = R;
    p.m = m;
    p.jmax = 8;
    const RadialSpectrum s = disk_mit_spectrum(p);
    REQUIRE(s.squares.size() == 8);
    for (int j = 0; j < 8; ++j) CHECK(std::abs(s.squares[j] - sq[j]) < 1e-8 * (1.0 + sq[j]));
    for (const RadialRoot& root : s.roots) {
      CHECK(std::abs(disk_mit_secular(root.channel, root.energy, m, R)) <= 1e-10);
    }
  }
}

TEST_CASE("massless ball ground state solves j0 = j1") {
  const auto r = scan_roots([](double x) { return std::sph_bessel(0, x) - std::sph_bessel(1, x); }, 0.5, 3.5, 0.01);
  REQUIRE(!r.empty());
  CHECK(std::abs(r[0] - 2.0428) < 1e-4);
  RadialProblem p;
  p.geometry = RadialGeometry::Ball;
  p.jmax = 4;
  const RadialSpectrum s = ball_mit_spectrum(p);
  REQUIRE(s.squares.size() == 4);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(s.squares[j] - r[0] * r[0]) < 1e-9);
}

TEST_CASE("large negative mass approaches the boundary spectrum") {
  RadialProblem p;
  p.m = -64.0;
  p.jmax = 4;
  const RadialSpectrum s = disk_mit_spectrum(p);
  CHECK(std::abs(s.squares[0] - 0.25) < 0.02);
  CHECK(std::abs(s.squares[1] - 0.25) < 0.02);
  CHECK(std::abs(s.squares[2] - 2.25) < 0.2);
  const ReferenceSpectrum ref = reference_boundary_spectrum(ReferenceSource::circle(2.0 * M_PI), 4);
  CHECK(ref.values == std::vector<double>{0.25, 0.25, 2.25, 2.25});
  const ReferenceSpectrum sph = reference_boundary_spectrum(ReferenceSource::sphere(1.0), 5);
  CHECK(sph.values == std::vector<double>{1.0, 1.0, 1.0, 1.0, 4.0});
}

TEST_CASE("jump problem") {
  CHECK_THROWS(disk_jump_secular(0, 5.0, 0.0, 4.0, 1.0));
  RadialProblem p;
  p.m = 5.0;
  p.M = 5.0;
  p.jmax = 2;
  const RadialSpectrum none = disk_jump_spectrum(p);
  CHECK(none.squares.empty());

  p.m = 0.0;
  p.M = 400.0;
  const RadialSpectrum big = disk_jump_spectrum(p);
  p.M.reset();
  const RadialSpectrum mit = disk_mit_spectrum(p);
  REQUIRE(!big.squares.empty());
  CHECK(big.squares[0] < mit.squares[0]);
  CHECK(mit.squares[0] - big.squares[0] < 0.02);
}

TEST_CASE("finite elements confirm the massless disk conventions") {
  RadialProblem p;
  p.jmax = 4;
  const RadialSpectrum s = disk_mit_spectrum(p);
  FemSolveOptions opt;
  opt.h = 0.06;
  const FemResult f = solve_bag(ClosedCurve::circle(1.0), 0.0, 4, opt);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(f.spectrum.eigenvalues[j] / s.squares[j] - 1.0) < 0.02);
}

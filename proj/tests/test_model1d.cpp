#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "diracml/model1d.hpp"

using namespace diracml;

TEST_CASE("boundary-localised ground state at alpha = 20") {
  const Model1DParams p{20.0, 1.0, 1.0};
  const Model1DSpectrum s = spectrum_S(p, 4);
  const Model1DSpectrum sp = spectrum_Sprime(p, 4);
  CHECK(std::abs(s.eigenvalues[0] + 400.0) < 1e-6);
  CHECK(std::abs(sp.eigenvalues[0] + 400.0) < 1e-6);
  for (double r : s.residuals) CHECK(r <= 1e-12);
  for (double r : sp.residuals) CHECK(r <= 1e-12);
  // tanh(k) = k / 20 with k^2 = -E, solved here by bisection on k
  double lo = 19.0, hi = 21.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::tanh(mid) - mid / 20.0 > 0.0 ? lo : hi) = mid;
  }
  CHECK(std::abs(s.eigenvalues[0] + lo * lo) < 1e-9);
}

TEST_CASE("Dirichlet-Dirichlet closed form") {
  const Model1DSpectrum s = spectrum_interval(EndCondition::dirichlet(), EndCondition::dirichlet(), 2.0, 6);
  for (int j = 0; j < 6; ++j) {
    const double ref = std::pow((j + 1) * M_PI / 2.0, 2);
    CHECK(std::abs(s.eigenvalues[j] - ref) < 1e-10 * ref);
  }
}

TEST_CASE("Neumann-Neumann includes zero") {
  const Model1DSpectrum s = spectrum_interval(EndCondition::robin(0.0), EndCondition::robin(0.0), 1.0, 4);
  CHECK(std::abs(s.eigenvalues[0]) < 1e-10);
  CHECK(std::abs(s.eigenvalues[1] - M_PI * M_PI) < 1e-9);
}

TEST_CASE("count_below agrees with the computed spectrum") {
  const auto L = EndCondition::robin(3.0);
  const auto R = EndCondition::dirichlet();
  const Model1DSpectrum s = spectrum_interval(L, R, 1.0, 6);
  for (int j = 0; j < 6; ++j) {
    CHECK(count_below(L, R, 1.0, s.eigenvalues[j] - 1e-6) == j);
    CHECK(count_below(L, R, 1.0, s.eigenvalues[j] + 1e-6) == j + 1);
    CHECK(std::abs(secular(L, R, 1.0, s.eigenvalues[j])) < 1e-10);
  }
}

TEST_CASE("modes satisfy the end conditions") {
  const double alpha = 4.0, beta = 2.0, delta = 1.5;
  const Model1DSpectrum s = spectrum_Sprime({alpha, beta, delta}, 5);
  const double e = 1e-6;
  for (const ModeData& md : s.modes) {
    const double d0 = (mode_value(md, delta, e) - mode_value(md, delta, -e)) / (2 * e);
    const double d1 = (mode_value(md, delta, delta + e) - mode_value(md, delta, delta - e)) / (2 * e);
    const double scale = 1.0 + md.k;
    CHECK(std::abs(d0 + alpha * mode_value(md, delta, 0.0)) < 1e-5 * scale * scale);
    CHECK(std::abs(d1 - beta * mode_value(md, delta, delta)) < 1e-5 * scale * scale);
  }
}

TEST_CASE("Weyl sandwich for j = 2..10") {
  const double beta = 1.0, delta = 1.0;
  const WeylBounds w = weyl_bounds(beta, delta);
  for (double alpha : {-10.0, 0.0, 10.0, 100.0}) {
    const Model1DSpectrum s = spectrum_Sprime({alpha, beta, delta}, 10);
    for (int j = 2; j <= 10; ++j) {
      const double E = s.eigenvalues[j - 1];
      CHECK(E <= w.b_plus * j * j);
      CHECK(E >= w.b_minus * j * j - w.b0);
    }
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "diracml/errors.hpp"
#include "diracml/geometry.hpp"

using namespace diracml;

namespace {

// Perimeter of the ellipse by composite Simpson on |c'(t)|.
double ellipse_perimeter(double a, double b) {
  const int n = 20000;
  const double h = 2.0 * M_PI / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = i * h;
    const double f = std::hypot(a * std::sin(t), b * std::cos(t));
    s += f * ((i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0));
  }
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("circle invariants") {
  const ClosedCurve c = ClosedCurve::circle(2.0);
  CHECK(std::abs(c.length() - 4.0 * M_PI) < 1e-12);
  CHECK(std::abs(c.signed_area() - 4.0 * M_PI) < 1e-10);
  CHECK(std::abs(c.curvature(1.3) - 0.5) < 1e-12);
  const Eigen::Vector2d p = c.point(1.0);
  CHECK(std::abs(p.norm() - 2.0) < 1e-12);
  CHECK((c.normal(1.0) - p / 2.0).norm() < 1e-12);
}

TEST_CASE("ellipse curvature and perimeter") {
  const double a = 2.0, b = 1.0;
  const ClosedCurve c = ClosedCurve::ellipse(a, b);
  CHECK(std::abs(c.length() - ellipse_perimeter(a, b)) < 1e-10);
  CHECK(std::abs(c.length() - 9.688448220547674) < 1e-10);
  for (double t : {0.0, 0.4, 1.1, 2.9, 4.4}) {
    const double st = std::sin(t), ct = std::cos(t);
    const double ref = a * b / std::pow(a * a * st * st + b * b * ct * ct, 1.5);
    CHECK(std::abs(c.curvature_t(t) - ref) < 1e-12);
  }
  CHECK(std::abs(c.max_abs_curvature() - 2.0) < 1e-6);
  CHECK(c.max_negative_curvature() == 0.0);
}

TEST_CASE("arclength inversion round trip") {
  const ClosedCurve c = ClosedCurve::ellipse(2.0, 1.0);
  for (double t : {0.1, 1.0, 2.5, 5.0, 6.2}) CHECK(std::abs(c.param_of(c.arclength_at(t)) - t) < 1e-12);
  for (double s : {0.0, 1.5, 4.0, 9.0}) {
    const Eigen::Vector2d p = c.point(s) + 0.01 * c.normal(s);
    CHECK(std::abs(c.project(p) - s) < 1e-9);
  }
}

TEST_CASE("fourier circle matches the analytic circle") {
  std::vector<FourierTerm> terms{{1, 1.5, 0.0, 0.0, 1.5}};
  const ClosedCurve c = ClosedCurve::fourier(terms);
  CHECK(std::abs(c.length() - 3.0 * M_PI) < 1e-10);
  CHECK(std::abs(c.curvature(0.7) - 1.0 / 1.5) < 1e-10);
}

TEST_CASE("uniform samples and tubular chart") {
  const ClosedCurve c = ClosedCurve::circle(1.0);
  const UniformSample u = sample_uniform(c, 64);
  CHECK(u.s.size() == 64);
  CHECK(std::abs(u.h - 2.0 * M_PI / 64.0) < 1e-14);
  const TubularChart in(c, Side::Interior, 0.3);
  CHECK(std::abs(in.map(0.5, 0.2).norm() - 0.8) < 1e-12);
  CHECK(std::abs(in.weight(0.5, 0.2) - 0.8) < 1e-12);
}

TEST_CASE("curve specification parsing") {
  CHECK(parse_curve_spec("circle 1").kind() == ClosedCurve::Kind::Circle);
  CHECK(parse_curve_spec("ellipse 2 1").kind() == ClosedCurve::Kind::Ellipse);
  CHECK_THROWS(parse_curve_spec("triangle 3"));
  CHECK_THROWS(ClosedCurve::circle(-1.0));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>

#include "diracml/clifford.hpp"
#include "diracml/errors.hpp"

using namespace diracml;

namespace {

bool is_zero(const ExactMatrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != GaussInt(0)) return false;
  return true;
}

}  // namespace

TEST_CASE("gaussian integer arithmetic") {
  GaussInt a{2, 3}, b{-1, 4};
  CHECK(a * b == GaussInt(-14, 5));
  CHECK(kImagUnit * kImagUnit == GaussInt(-1, 0));
  CHECK(a.conj() == GaussInt(2, -3));
}

TEST_CASE("anticommutation is exact for n = 1..12") {
  for (int n = 1; n <= kMaxCliffordDim; ++n) {
    const CliffordRep rep = build_gammas(n);
    CHECK(rep.size == (Eigen::Index{1} << (n / 2)));
    const ExactMatrix id = exact_identity(rep.size);
    for (int j = 1; j <= n; ++j) {
      CHECK((exact_adjoint(rep.gamma(j)) == rep.gamma(j)));
      CHECK((rep.gamma(j) * rep.gamma(j) == id));
      for (int k = j + 1; k <= n; ++k) {
        ExactMatrix ac = rep.gamma(j) * rep.gamma(k) + rep.gamma(k) * rep.gamma(j);
        CHECK(is_zero(ac));
      }
    }
    CHECK(check_anticommutation(rep).ok());
  }
}

TEST_CASE("both sign branches satisfy the relations") {
  CHECK(check_anticommutation(build_gammas(5, -1)).ok());
  CHECK(check_anticommutation(build_gammas(7, -1)).ok());
}

TEST_CASE("dimension errors") {
  CHECK_THROWS_AS(build_gammas(0), DimensionError);
  CHECK_THROWS_AS(build_gammas(13), DimensionError);
}

TEST_CASE("boundary matrix for the disk normal (1, 0)") {
  const CliffordRep rep = build_gammas(3);
  Eigen::Vector2d nu(1.0, 0.0);
  const BoundaryProjectorData d = boundary_matrix(rep, nu);
  const std::complex<double> i(0.0, 1.0);
  Eigen::Matrix2cd expect;
  expect << 0.0, i, -i, 0.0;
  CHECK((d.B - expect).norm() < 1e-15);
}

TEST_CASE("boundary involution and projectors on a rotating normal") {
  const CliffordRep rep = build_gammas(3);
  for (int q = 0; q < 16; ++q) {
    const double t = 0.37 * q;
    Eigen::Vector2d nu(std::cos(t), std::sin(t));
    const BoundaryProjectorData d = boundary_matrix(rep, nu);
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    CHECK((d.B * d.B - id).norm() < 1e-14);
    CHECK((d.B - d.B.adjoint()).norm() < 1e-14);
    CHECK((d.P_plus + d.P_minus - id).norm() < 1e-14);
    CHECK((d.P_plus * d.P_plus - d.P_plus).norm() < 1e-14);
    CHECK(std::abs(d.P_plus.trace() - 1.0) < 1e-14);
  }
  Eigen::Vector3d nu3(0.0, 0.0, 1.0);
  CHECK_NOTHROW(boundary_matrix(build_gammas(4), nu3));
  Eigen::Vector2d bad(1.0, 1.0);
  CHECK_THROWS(boundary_matrix(rep, bad));
}

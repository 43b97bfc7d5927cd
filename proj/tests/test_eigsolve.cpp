#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "diracml/eigsolve.hpp"

using namespace diracml;

namespace {

SpMatC sparse(const Eigen::MatrixXcd& a) { return a.sparseView(); }

void random_pencil(int n, std::mt19937_64& rng, Eigen::MatrixXcd& K, Eigen::MatrixXcd& M) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd A(n, n), C(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      A(i, j) = cplx(g(rng), g(rng));
      C(i, j) = cplx(g(rng), g(rng));
    }
  K = 0.5 * (A + A.adjoint());
  M = C * C.adjoint() / n + Eigen::MatrixXcd::Identity(n, n);
}

}  // namespace

TEST_CASE("diagonal pencil") {
  Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(3, 3);
  K(0, 0) = 3.0;
  K(1, 1) = 1.0;
  K(2, 2) = 2.0;
  EigRequest req;
  req.count = 3;
  const Spectrum s = lowest_dense(K, Eigen::MatrixXcd::Identity(3, 3), req);
  REQUIRE(s.eigenvalues.size() == 3);
  CHECK(s.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(s.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(s.eigenvalues[2] == doctest::Approx(3.0));
}

TEST_CASE("Krylov path matches a dense generalized solver on random pencils") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXcd K, M;
    random_pencil(40, rng, K, M);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(K, M);
    EigRequest req;
    req.count = 6;
    req.dense_threshold = 0;
    req.want_vectors = true;
    const Spectrum s = lowest({sparse(K), sparse(M)}, req);
    REQUIRE(s.eigenvalues.size() == 6);
    CHECK(s.method != "dense");
    for (int j = 0; j < 6; ++j) CHECK(std::abs(s.eigenvalues[j] - oracle.eigenvalues()[j]) < 1e-10);
    const Eigen::MatrixXcd G = s.vectors.adjoint() * M * s.vectors;
    CHECK((G - Eigen::MatrixXcd::Identity(6, 6)).norm() < 1e-10);
  }
}

TEST_CASE("finite-difference Laplacian against its closed form") {
  const int n = 600;
  std::vector<Eigen::Triplet<cplx>> t;
  for (int i = 0; i < n; ++i) {
    t.emplace_back(i, i, 2.0);
    if (i + 1 < n) {
      t.emplace_back(i, i + 1, -1.0);
      t.emplace_back(i + 1, i, -1.0);
    }
  }
  SpMatC K(n, n), M(n, n);
  K.setFromTriplets(t.begin(), t.end());
  M.setIdentity();
  EigRequest req;
  req.count = 4;
  req.shift = -0.1;
  const Spectrum s = lowest({K, M}, req);
  for (int j = 0; j < 4; ++j) {
    const double ref = 4.0 * std::pow(std::sin((j + 1) * M_PI / (2.0 * (n + 1))), 2);
    CHECK(std::abs(s.eigenvalues[j] - ref) < 1e-10 * ref + 1e-14);
    CHECK(s.residuals[j] <= 1e-8);
  }
  CHECK(inertia_below({K, M}, 0.5 * (s.eigenvalues[1] + s.eigenvalues[2])).value() == 2);
  CHECK(gershgorin_shift({K, M}) <= s.eigenvalues[0]);
}

TEST_CASE("shift invariance and clustering") {
  std::mt19937_64 rng(7);
  Eigen::MatrixXcd K, M;
  random_pencil(50, rng, K, M);
  EigRequest a, b;
  a.count = b.count = 4;
  a.dense_threshold = b.dense_threshold = 0;
  a.shift = -20.0;
  b.shift = -60.0;
  const Spectrum sa = lowest({sparse(K), sparse(M)}, a);
  const Spectrum sb = lowest({sparse(K), sparse(M)}, b);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(sa.eigenvalues[j] - sb.eigenvalues[j]) < 1e-10);
  const auto c = cluster_indices({1.0, 1.0 + 1e-9, 2.0, 3.0, 3.0}, 1e-6);
  REQUIRE(c.size() == 3);
  CHECK(c[0].size() == 2);
  CHECK(c[2].size() == 2);
}

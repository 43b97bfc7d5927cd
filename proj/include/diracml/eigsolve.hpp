#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace diracml {

using cplx = std::complex<double>;
using SpMatC = Eigen::SparseMatrix<cplx>;

/// Discretised sesquilinear form: Hermitian K, Hermitian positive definite M.
struct QuadraticPencil {
  SpMatC K;
  SpMatC M;
};

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024d1acULL;

struct EigRequest {
  int count = 1;
  std::optional<double> shift;  // must lie below the spectrum; lowered automatically otherwise
  double tol = 1e-8;            // residual <= tol * max(1, |lambda|)
  int max_iter = 300;           // restart cycles
  int block_size = 4;
  std::uint64_t seed = kDefaultSeed;
  double cluster_tol = 1e-6;
  bool want_vectors = false;
  Eigen::Index dense_threshold = 400;  // use the dense solver at or below this size
};

struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<double> residuals;  // ||K x - lambda M x|| / ||M x||
  std::vector<std::vector<int>> clusters;
  Eigen::MatrixXcd vectors;  // M-orthonormal columns when requested
  bool converged = false;
  int iterations = 0;
  double shift = 0.0;
  std::uint64_t seed = 0;
  std::string method;
  std::vector<std::string> flags;
};

Spectrum lowest(const QuadraticPencil& pencil, const EigRequest& req);
Spectrum lowest_dense(const Eigen::MatrixXcd& K, const Eigen::MatrixXcd& M, const EigRequest& req);

/// Number of eigenvalues of the pencil strictly below sigma (Sylvester inertia
/// of K - sigma M from an LDL^H factorisation); nullopt if the factorisation fails.
std::optional<int> inertia_below(const QuadraticPencil& pencil, double sigma);

/// Lower bound for the spectrum from Gershgorin discs of K and M.
double gershgorin_shift(const QuadraticPencil& pencil);

double relative_residual(const SpMatC& K, const SpMatC& M, const Eigen::VectorXcd& x, double lambda);

std::vector<std::vector<int>> cluster_indices(const std::vector<double>& values, double tol);

}  // namespace diracml

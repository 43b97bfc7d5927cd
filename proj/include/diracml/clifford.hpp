#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace diracml {

/// Gaussian integer a + b i. Every entry produced by the gamma recursion, and
/// every product of such matrices, is of this form.
struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  constexpr GaussInt() = default;
  constexpr GaussInt(int r) : re(r) {}  // NOLINT: Eigen builds Scalar(0), Scalar(1)
  constexpr GaussInt(std::int64_t r, std::int64_t i) : re(r), im(i) {}

  friend constexpr GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
  friend constexpr GaussInt operator-(GaussInt a, GaussInt b) { return {a.re - b.re, a.im - b.im}; }
  friend constexpr GaussInt operator-(GaussInt a) { return {-a.re, -a.im}; }
  friend constexpr GaussInt operator*(GaussInt a, GaussInt b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  constexpr GaussInt& operator+=(GaussInt b) { re += b.re; im += b.im; return *this; }
  constexpr GaussInt& operator-=(GaussInt b) { re -= b.re; im -= b.im; return *this; }
  constexpr GaussInt& operator*=(GaussInt b) { return *this = *this * b; }
  friend constexpr bool operator==(GaussInt a, GaussInt b) { return a.re == b.re && a.im == b.im; }
  friend constexpr bool operator!=(GaussInt a, GaussInt b) { return !(a == b); }

  constexpr GaussInt conj() const { return {re, -im}; }
  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

inline constexpr GaussInt kImagUnit{0, 1};

}  // namespace diracml

namespace Eigen {
template <>
struct NumTraits<diracml::GaussInt> : GenericNumTraits<diracml::GaussInt> {
  using Real = diracml::GaussInt;
  using NonInteger = diracml::GaussInt;
  using Literal = diracml::GaussInt;
  using Nested = diracml::GaussInt;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 2,
    MulCost = 6
  };
};
}  // namespace Eigen

namespace diracml {

using ExactMatrix = Eigen::Matrix<GaussInt, Eigen::Dynamic, Eigen::Dynamic>;

ExactMatrix exact_identity(Eigen::Index size);
ExactMatrix exact_adjoint(const ExactMatrix& a);
Eigen::MatrixXcd to_complex(const ExactMatrix& a);

/// Hermitian, pairwise anticommuting gamma matrices gamma_1(n) ... gamma_n(n)
/// of size 2^floor(n/2), built by the even/odd doubling recursion.
struct CliffordRep {
  int n = 0;
  Eigen::Index size = 0;
  std::vector<ExactMatrix> gammas;
  int sign_choice = +1;  // branch used for the odd-step product

  const ExactMatrix& gamma(int j) const { return gammas.at(static_cast<std::size_t>(j - 1)); }
};

inline constexpr int kMaxCliffordDim = 12;

/// 1 <= n <= 12; throws DimensionError otherwise.
CliffordRep build_gammas(int n, int sign_choice = +1);

/// Gamma(x) = sum_j x_j gamma_j.
Eigen::MatrixXcd gamma_of(const CliffordRep& rep, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Boundary involution B = -i gamma_{n+1} Gamma(nu) and its spectral projectors.
struct BoundaryProjectorData {
  Eigen::MatrixXcd B;
  Eigen::MatrixXcd P_plus;
  Eigen::MatrixXcd P_minus;
  Eigen::VectorXd nu;
};

/// `rep_ambient` must be built for n+1 where n = nu.size(); |nu| = 1 within 1e-14.
BoundaryProjectorData boundary_matrix(const CliffordRep& rep_ambient,
                                      const Eigen::Ref<const Eigen::VectorXd>& nu);

/// Off-diagonal block lambda(x) of Gamma_n(x) for even n = 2m:
/// Gamma_n(x) = [[0, lambda(x)], [lambda(x)^*, 0]].
Eigen::MatrixXcd lambda_block(const CliffordRep& rep, const Eigen::Ref<const Eigen::VectorXd>& x);

struct AnticommutationReport {
  int n = 0;
  Eigen::Index size = 0;
  int pairs_checked = 0;
  bool hermitian = true;
  std::vector<std::string> failures;
  bool ok() const { return hermitian && failures.empty(); }
};

/// Exact check of gamma_j gamma_k + gamma_k gamma_j = 2 delta_jk I for all j, k.
AnticommutationReport check_anticommutation(const CliffordRep& rep);

}  // namespace diracml

#include "diracml/clifford.hpp"

#include <cmath>
#include <sstream>

#include "diracml/errors.hpp"

namespace diracml {

ExactMatrix exact_identity(Eigen::Index size) {
  ExactMatrix id = ExactMatrix::Constant(size, size, GaussInt{});
  for (Eigen::Index i = 0; i < size; ++i) id(i, i) = GaussInt{1};
  return id;
}

ExactMatrix exact_adjoint(const ExactMatrix& a) {
  ExactMatrix out(a.cols(), a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(j, i) = a(i, j).conj();
  return out;
}

Eigen::MatrixXcd to_complex(const ExactMatrix& a) {
  return a.unaryExpr([](const GaussInt& z) { return z.to_complex(); });
}

namespace {

ExactMatrix zeros(Eigen::Index size) { return ExactMatrix::Constant(size, size, GaussInt{}); }

ExactMatrix off_diagonal(const ExactMatrix& upper, const ExactMatrix& lower) {
  const Eigen::Index h = upper.rows();
  ExactMatrix out = zeros(2 * h);
  out.topRightCorner(h, h) = upper;
  out.bottomLeftCorner(h, h) = lower;
  return out;
}

}  // namespace

CliffordRep build_gammas(int n, int sign_choice) {
  if (n < 1 || n > kMaxCliffordDim) {
    std::ostringstream msg;
    msg << "build_gammas: dimension " << n << " outside [1, " << kMaxCliffordDim << "]";
    throw DimensionError(msg.str());
  }
  if (sign_choice != 1 && sign_choice != -1) throw DimensionError("build_gammas: sign_choice must be +1 or -1");

  CliffordRep rep;
  rep.n = 1;
  rep.size = 1;
  rep.gammas = {exact_identity(1)};
  rep.sign_choice = sign_choice;

  while (rep.n < n) {
    const int next = rep.n + 1;
    if (next == 2) {
      ExactMatrix g1 = zeros(2), g2 = zeros(2);
      g1(0, 1) = 1;
      g1(1, 0) = 1;
      g2(0, 1) = GaussInt{0, -1};
      g2(1, 0) = GaussInt{0, 1};
      rep.gammas = {g1, g2};
      rep.size = 2;
    } else if (next % 2 == 1) {
      // gamma_{2m+1} = sign * i^m gamma_1 ... gamma_{2m}; same size.
      const int m = (next - 1) / 2;
      ExactMatrix prod = exact_identity(rep.size);
      for (const auto& g : rep.gammas) prod = (prod * g).eval();
      GaussInt phase{sign_choice};
      for (int k = 0; k < m; ++k) phase *= kImagUnit;
      rep.gammas.push_back(prod * phase);
    } else {
      // gamma_j(2m+2) = [[0, g_j], [g_j, 0]], gamma_{2m+2} = [[0, -i I], [i I, 0]].
      std::vector<ExactMatrix> doubled;
      doubled.reserve(static_cast<std::size_t>(next));
      for (const auto& g : rep.gammas) doubled.push_back(off_diagonal(g, g));
      const ExactMatrix id = exact_identity(rep.size);
      doubled.push_back(off_diagonal(id * GaussInt{0, -1}, id * kImagUnit));
      rep.gammas = std::move(doubled);
      rep.size *= 2;
    }
    rep.n = next;
  }
  return rep;
}

Eigen::MatrixXcd gamma_of(const CliffordRep& rep, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != rep.n) throw DimensionError("gamma_of: vector length does not match rep.n");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rep.size, rep.size);
  for (int j = 0; j < rep.n; ++j) out += x(j) * to_complex(rep.gammas[static_cast<std::size_t>(j)]);
  return out;
}

BoundaryProjectorData boundary_matrix(const CliffordRep& rep_ambient,
                                      const Eigen::Ref<const Eigen::VectorXd>& nu) {
  const int n = static_cast<int>(nu.size());
  if (rep_ambient.n != n + 1) throw DimensionError("boundary_matrix: rep must be built for n+1");
  if (std::abs(nu.norm() - 1.0) > 1e-14) throw DomainError("boundary_matrix: normal is not a unit vector");

  Eigen::MatrixXcd gamma_nu = Eigen::MatrixXcd::Zero(rep_ambient.size, rep_ambient.size);
  for (int j = 0; j < n; ++j) gamma_nu += nu(j) * to_complex(rep_ambient.gammas[static_cast<std::size_t>(j)]);
  const Eigen::MatrixXcd last = to_complex(rep_ambient.gammas.back());

  BoundaryProjectorData out;
  out.B = std::complex<double>(0.0, -1.0) * last * gamma_nu;
  const auto id = Eigen::MatrixXcd::Identity(rep_ambient.size, rep_ambient.size);
  out.P_plus = 0.5 * (id + out.B);
  out.P_minus = 0.5 * (id - out.B);
  out.nu = nu;
  return out;
}

Eigen::MatrixXcd lambda_block(const CliffordRep& rep, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (rep.n % 2 != 0) throw DimensionError("lambda_block: requires even dimension");
  if (x.size() != rep.n) throw DimensionError("lambda_block: vector length does not match rep.n");
  const int m = rep.n / 2;
  const Eigen::Index half = rep.size / 2;
  const CliffordRep odd = build_gammas(2 * m - 1, rep.sign_choice);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(half, half);
  for (int j = 0; j < 2 * m - 1; ++j) out += x(j) * to_complex(odd.gammas[static_cast<std::size_t>(j)]);
  out -= std::complex<double>(0.0, x(2 * m - 1)) * Eigen::MatrixXcd::Identity(half, half);
  return out;
}

AnticommutationReport check_anticommutation(const CliffordRep& rep) {
  AnticommutationReport report;
  report.n = rep.n;
  report.size = rep.size;
  const ExactMatrix id = exact_identity(rep.size);
  for (int j = 0; j < rep.n; ++j) {
    const auto& gj = rep.gammas[static_cast<std::size_t>(j)];
    if (exact_adjoint(gj) != gj) {
      report.hermitian = false;
      report.failures.push_back("gamma_" + std::to_string(j + 1) + " not Hermitian");
    }
    for (int k = j; k < rep.n; ++k) {
      const auto& gk = rep.gammas[static_cast<std::size_t>(k)];
      const ExactMatrix anti = gj * gk + gk * gj;
      const ExactMatrix expected = (j == k) ? ExactMatrix(id * GaussInt{2}) : zeros(rep.size);
      ++report.pairs_checked;
      if (anti != expected)
        report.failures.push_back("{gamma_" + std::to_string(j + 1) + ", gamma_" + std::to_string(k + 1) + "}");
    }
  }
  return report;
}

}  // namespace diracml

#include "diracml/eigsolve.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "diracml/errors.hpp"

namespace diracml {

namespace {

using Ldlt = Eigen::SimplicialLDLT<SpMatC, Eigen::Lower, Eigen::AMDOrdering<int>>;

void check_pencil(const QuadraticPencil& p) {
  if (p.K.rows() != p.K.cols() || p.M.rows() != p.M.cols() || p.K.rows() != p.M.rows())
    throw DimensionError("eigsolve: K and M must be square and of equal size");
}

bool positive_definite(const Ldlt& f) {
  if (f.info() != Eigen::Success) return false;
  const auto d = f.vectorD();
  for (Eigen::Index i = 0; i < d.size(); ++i)
    if (!(d(i).real() > 0.0)) return false;
  return true;
}

Eigen::MatrixXcd random_block(Eigen::Index n, Eigen::Index b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  Eigen::MatrixXcd x(n, b);
  for (Eigen::Index j = 0; j < b; ++j)
    for (Eigen::Index i = 0; i < n; ++i) x(i, j) = cplx(unit(), unit());
  return x;
}

// M-orthonormalise W against the M-orthonormal basis V (MV = M V) and itself;
// nearly dependent columns are dropped.
Eigen::MatrixXcd orthonormalize(const SpMatC& M, const Eigen::MatrixXcd& V, const Eigen::MatrixXcd& MV,
                                const Eigen::MatrixXcd& W) {
  Eigen::MatrixXcd out(W.rows(), 0);
  Eigen::MatrixXcd Mout(W.rows(), 0);
  for (Eigen::Index c = 0; c < W.cols(); ++c) {
    Eigen::VectorXcd w = W.col(c);
    const double n0 = std::sqrt(std::abs(w.dot(M * w)));
    if (!(n0 > 0.0)) continue;
    for (int pass = 0; pass < 2; ++pass) {
      if (V.cols() > 0) w -= V * (MV.adjoint() * w);
      if (out.cols() > 0) w -= out * (Mout.adjoint() * w);
    }
    Eigen::VectorXcd mw = M * w;
    const double nrm = std::sqrt(std::abs(w.dot(mw)));
    if (nrm < 1e-10 * n0) continue;
    out.conservativeResize(Eigen::NoChange, out.cols() + 1);
    Mout.conservativeResize(Eigen::NoChange, Mout.cols() + 1);
    out.col(out.cols() - 1) = w / nrm;
    Mout.col(Mout.cols() - 1) = mw / nrm;
  }
  return out;
}

void finish(Spectrum& s, const EigRequest& req) {
  s.clusters = cluster_indices(s.eigenvalues, req.cluster_tol);
  s.converged = true;
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
    if (!(s.residuals[i] <= req.tol * std::max(1.0, std::fabs(s.eigenvalues[i])))) s.converged = false;
  if (!s.converged) s.flags.push_back("not_converged");
}

}  // namespace

double relative_residual(const SpMatC& K, const SpMatC& M, const Eigen::VectorXcd& x, double lambda) {
  const Eigen::VectorXcd mx = M * x;
  return (K * x - lambda * mx).norm() / mx.norm();
}

std::vector<std::vector<int>> cluster_indices(const std::vector<double>& values, double tol) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i == 0 || std::fabs(values[i] - values[i - 1]) > tol * std::max(1.0, std::fabs(values[i])))
      out.emplace_back();
    out.back().push_back(static_cast<int>(i));
  }
  return out;
}

double gershgorin_shift(const QuadraticPencil& p) {
  check_pencil(p);
  const Eigen::Index n = p.K.rows();
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), off = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd mdiag = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < p.K.outerSize(); ++k)
    for (SpMatC::InnerIterator it(p.K, k); it; ++it) {
      if (it.row() == it.col()) diag(it.row()) += it.value().real();
      else off(it.row()) += std::abs(it.value());
    }
  for (int k = 0; k < p.M.outerSize(); ++k)
    for (SpMatC::InnerIterator it(p.M, k); it; ++it)
      if (it.row() == it.col()) mdiag(it.row()) += it.value().real();
  const double gk = n > 0 ? (diag - off).minCoeff() : 0.0;
  if (gk >= 0.0) return -1.0;
  // x^H M x >= (min diag / 2) |x|^2 holds for assembled P1 mass matrices
  return gk / (0.5 * mdiag.minCoeff()) - 1.0;
}

std::optional<int> inertia_below(const QuadraticPencil& p, double sigma) {
  check_pencil(p);
  const SpMatC A = p.K - sigma * p.M;
  Ldlt f(A);
  if (f.info() != Eigen::Success) return std::nullopt;
  const auto d = f.vectorD();
  int neg = 0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d(i).real() == 0.0 || !std::isfinite(d(i).real())) return std::nullopt;
    if (d(i).real() < 0.0) ++neg;
  }
  return neg;
}

Spectrum lowest_dense(const Eigen::MatrixXcd& K, const Eigen::MatrixXcd& M, const EigRequest& req) {
  if (K.rows() != K.cols() || M.rows() != M.cols() || K.rows() != M.rows())
    throw DimensionError("eigsolve: K and M must be square and of equal size");
  if (req.count < 1 || req.count > K.rows()) throw DomainError("eigsolve: count out of range");
  if (!(req.tol > 0.0)) throw DomainError("eigsolve: tol must be positive");

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(K, M);
  if (es.info() != Eigen::Success) throw NumericalError("eigsolve: dense factorisation failed (M not positive definite?)");
  Spectrum s;
  s.method = "dense";
  s.seed = req.seed;
  s.shift = 0.0;
  const int j = req.count;
  for (int i = 0; i < j; ++i) {
    const double lam = es.eigenvalues()(i);
    const Eigen::VectorXcd x = es.eigenvectors().col(i);
    const Eigen::VectorXcd mx = M * x;
    s.eigenvalues.push_back(lam);
    s.residuals.push_back((K * x - lam * mx).norm() / mx.norm());
  }
  if (req.want_vectors) s.vectors = es.eigenvectors().leftCols(j);
  finish(s, req);
  return s;
}

Spectrum lowest(const QuadraticPencil& p, const EigRequest& req) {
  check_pencil(p);
  const Eigen::Index n = p.K.rows();
  if (req.count < 1 || req.count > n) throw DomainError("eigsolve: count out of range");
  if (!(req.tol > 0.0)) throw DomainError("eigsolve: tol must be positive");
  if (n <= req.dense_threshold) {
    Spectrum s = lowest_dense(Eigen::MatrixXcd(p.K), Eigen::MatrixXcd(p.M), req);
    return s;
  }

  {
    Ldlt mf(p.M);
    if (!positive_definite(mf)) throw NumericalError("eigsolve: mass matrix is not positive definite");
  }

  Spectrum s;
  s.method = "shift-invert block Krylov";
  s.seed = req.seed;

  double sigma = req.shift.value_or(gershgorin_shift(p));
  Ldlt f;
  for (int attempt = 0;; ++attempt) {
    f.compute(SpMatC(p.K - sigma * p.M));
    if (positive_definite(f)) break;
    if (attempt >= 60) throw NumericalError("eigsolve: no shift below the spectrum found");
    if (attempt == 0) s.flags.push_back("shift_lowered");
    sigma -= std::max(1.0, std::fabs(sigma));
  }
  s.shift = sigma;

  const auto op = [&](const Eigen::MatrixXcd& Z) -> Eigen::MatrixXcd {
    Eigen::MatrixXcd MZ = p.M * Z;
    return f.solve(MZ);
  };

  const int j = req.count;
  const Eigen::Index b = std::min<Eigen::Index>(n, j + std::max(1, req.block_size));
  const Eigen::Index maxdim = std::min<Eigen::Index>(n, 4 * b);

  Eigen::MatrixXcd Y(n, 0);
  Eigen::VectorXd theta;
  Eigen::MatrixXcd ritz;
  bool done = false;
  for (int cycle = 0; cycle < req.max_iter && !done; ++cycle) {
    s.iterations = cycle + 1;
    Eigen::MatrixXcd V = Y;
    Eigen::MatrixXcd MV = p.M * V;
    Eigen::MatrixXcd W = cycle == 0 ? random_block(n, b, req.seed) : op(Y);
    while (V.cols() < maxdim) {
      Eigen::MatrixXcd Q = orthonormalize(p.M, V, MV, W);
      if (Q.cols() == 0) break;
      if (V.cols() + Q.cols() > maxdim) Q.conservativeResize(Eigen::NoChange, maxdim - V.cols());
      const Eigen::Index old = V.cols();
      V.conservativeResize(Eigen::NoChange, old + Q.cols());
      V.rightCols(Q.cols()) = Q;
      MV.conservativeResize(Eigen::NoChange, old + Q.cols());
      MV.rightCols(Q.cols()) = p.M * Q;
      if (V.cols() >= maxdim) break;
      W = op(Q);
    }
    Eigen::MatrixXcd Kp = V.adjoint() * (p.K * V);
    Eigen::MatrixXcd Mp = V.adjoint() * MV;
    Kp = 0.5 * (Kp + Kp.adjoint()).eval();
    Mp = 0.5 * (Mp + Mp.adjoint()).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(Kp, Mp);
    if (es.info() != Eigen::Success) throw NumericalError("eigsolve: Rayleigh-Ritz step failed");
    const Eigen::Index keep = std::min<Eigen::Index>(b, V.cols());
    theta = es.eigenvalues().head(keep);
    Y = V * es.eigenvectors().leftCols(keep);

    done = true;
    for (int i = 0; i < j && i < keep; ++i)
      if (relative_residual(p.K, p.M, Y.col(i), theta(i)) > req.tol * std::max(1.0, std::fabs(theta(i)))) {
        done = false;
        break;
      }
    if (keep < j) throw NumericalError("eigsolve: Krylov space smaller than the requested count");
    if (V.cols() == n) done = true;
  }

  for (int i = 0; i < j; ++i) {
    s.eigenvalues.push_back(theta(i));
    s.residuals.push_back(relative_residual(p.K, p.M, Y.col(i), theta(i)));
  }
  if (req.want_vectors) s.vectors = Y.leftCols(j);
  finish(s, req);

  if (s.converged && j < n) {
    const double lj = s.eigenvalues.back();
    const double probe = lj + 1e-6 * std::max(1.0, std::fabs(lj));
    int expected = 0;
    for (Eigen::Index i = 0; i < theta.size(); ++i)
      if (theta(i) < probe) ++expected;
    const auto below = inertia_below(p, probe);
    if (!below) s.flags.push_back("inertia_unavailable");
    else if (*below != expected && !(expected == theta.size() && *below >= expected)) s.flags.push_back("inertia_mismatch");
  }
  return s;
}

}  // namespace diracml

#include "diracml/boundary_spectra.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "diracml/clifford.hpp"
#include "diracml/errors.hpp"

namespace diracml {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

Eigen::MatrixXcd centered_difference(int n, double h) {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    d(j, (j + 1) % n) += 0.5 / h;
    d(j, (j + n - 1) % n) -= 0.5 / h;
  }
  return d;
}

Eigen::Matrix2cd nu_tau_product(const CliffordRep& rep2, const Eigen::Vector2d& nu, const Eigen::Vector2d& tau) {
  return gamma_of(rep2, nu) * gamma_of(rep2, tau);
}

// Block matrix with entry (j, l) equal to scalar(j, l) * blocks[side ? l : j].
Eigen::MatrixXcd block_product(const Eigen::MatrixXcd& scalar, const std::vector<Eigen::Matrix2cd>& blocks, bool right) {
  const Eigen::Index n = scalar.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index l = 0; l < n; ++l) {
      if (scalar(j, l) == cplx(0.0)) continue;
      out.block<2, 2>(2 * j, 2 * l) = scalar(j, l) * blocks[static_cast<std::size_t>(right ? l : j)];
    }
  return out;
}

Eigen::MatrixXcd kron_identity2(const Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows(), m = a.cols();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * n, 2 * m);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index l = 0; l < m; ++l) {
      out(2 * j, 2 * l) = a(j, l);
      out(2 * j + 1, 2 * l + 1) = a(j, l);
    }
  return out;
}

}  // namespace

Eigen::MatrixXcd spectral_derivative(int n, double length, bool antiperiodic) {
  if (n < 2) throw DimensionError("spectral_derivative: need at least 2 nodes");
  if (antiperiodic && n % 2 != 0) throw DimensionError("spectral_derivative: antiperiodic grid needs an even node count");
  std::vector<double> omega;
  const double base = 2.0 * kPi / length;
  if (antiperiodic) {
    for (int k = -n / 2; k < n / 2; ++k) omega.push_back(base * (k + 0.5));
  } else {
    const int kmax = (n - 1) / 2;  // Nyquist mode of an even grid is dropped
    for (int k = -kmax; k <= kmax; ++k) omega.push_back(base * k);
  }
  const double h = length / n;
  // entries depend only on j - l
  std::vector<cplx> row(static_cast<std::size_t>(2 * n - 1));
  for (int m = -(n - 1); m <= n - 1; ++m) {
    cplx acc = 0.0;
    for (double w : omega) acc += cplx(0.0, w) * std::exp(cplx(0.0, w * m * h));
    row[static_cast<std::size_t>(m + n - 1)] = acc / static_cast<double>(n);
  }
  Eigen::MatrixXcd d(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) d(j, l) = row[static_cast<std::size_t>(j - l + n - 1)];
  return d;
}

BoundaryDiscretization discretize_boundary(const ClosedCurve& curve, int ngrid, BoundaryScheme scheme,
                                           const std::function<double(double)>& gauge) {
  if (ngrid < 8) throw DimensionError("discretize_boundary: ngrid must be at least 8");
  if (scheme == BoundaryScheme::Fourier && ngrid % 2 != 0)
    throw DimensionError("discretize_boundary: fourier scheme needs an even ngrid");

  BoundaryDiscretization d{curve, ngrid, scheme, sample_uniform(curve, ngrid), {}, {}, {}, {}};
  const CliffordRep rep3 = build_gammas(3);
  const CliffordRep rep2 = build_gammas(2);

  const auto plus_vector = [&](const Eigen::Vector2d& nu, Eigen::Matrix2cd& B) {
    B = boundary_matrix(rep3, nu).B;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(B);
    return Eigen::Vector2cd(es.eigenvectors().col(1));
  };

  for (int j = 0; j < ngrid; ++j) {
    const auto& nu = d.grid.normal[static_cast<std::size_t>(j)];
    Eigen::Matrix2cd B;
    Eigen::Vector2cd e = plus_vector(nu, B);
    if (j > 0) {
      const cplx ov = d.frame.back().dot(e);
      if (std::abs(ov) < std::cos(kPi / 4.0))
        throw GeometryError("discretize_boundary: frame jump between consecutive nodes; refine ngrid");
      e *= std::conj(ov) / std::abs(ov);
    } else {
      // fix the global phase so the first nonzero component is real positive
      const cplx ref = std::abs(e(0)) > 1e-8 ? e(0) : e(1);
      e *= std::conj(ref) / std::abs(ref);
    }
    d.B.push_back(B);
    d.frame.push_back(e);
    d.nu_tau.push_back(nu_tau_product(rep2, nu, d.grid.tangent[static_cast<std::size_t>(j)]));
  }
  {
    // continue once more to s = length, which is node 0 again
    Eigen::Matrix2cd B;
    Eigen::Vector2cd e = plus_vector(d.grid.normal[0], B);
    const cplx ov = d.frame.back().dot(e);
    if (std::abs(ov) < std::cos(kPi / 4.0))
      throw GeometryError("discretize_boundary: frame jump across s = 0; refine ngrid");
    e *= std::conj(ov) / std::abs(ov);
    d.holonomy = d.frame.front().dot(e);
  }
  if (std::abs(d.holonomy + 1.0) > 1e-6)
    throw GeometryError("discretize_boundary: frame holonomy is not -1 (curve not simple?)");

  if (gauge)
    for (int j = 0; j < ngrid; ++j)
      d.frame[static_cast<std::size_t>(j)] *= std::exp(cplx(0.0, gauge(d.grid.s[static_cast<std::size_t>(j)])));
  return d;
}

Eigen::VectorXd curvature_potential(const BoundaryDiscretization& d) {
  Eigen::VectorXd v(d.ngrid);
  for (int j = 0; j < d.ngrid; ++j) {
    const double k = d.grid.kappa[static_cast<std::size_t>(j)];
    v(j) = 0.0 - 0.25 * k * k;  // H_2 = 0 for curves
  }
  return v;
}

OperatorMatrix assemble_L(const BoundaryDiscretization& d, double a) {
  const int n = d.ngrid;
  const double h = d.grid.h;
  const Eigen::VectorXd pot = curvature_potential(d);
  OperatorMatrix op;
  op.dof_kind = OperatorMatrix::DofKind::ConstrainedScalar;
  op.h = h;
  op.matrix = Eigen::MatrixXcd::Zero(n, n);

  if (d.scheme == BoundaryScheme::Fd2) {
    // sum_j |e_{j+1} g_{j+1} - e_j g_j|^2 / h, per unit length
    for (int j = 0; j < n; ++j) {
      const int jp = (j + 1) % n;
      const cplx link = d.frame[static_cast<std::size_t>(jp)].dot(d.frame[static_cast<std::size_t>(j)]);
      op.matrix(j, j) += 1.0 / (h * h);
      op.matrix(jp, jp) += 1.0 / (h * h);
      op.matrix(jp, j) -= link / (h * h);
      op.matrix(j, jp) -= std::conj(link) / (h * h);
    }
    op.matrix *= (1.0 + a);
  } else {
    const Eigen::MatrixXcd D = spectral_derivative(n, d.curve.length(), true);
    Eigen::MatrixXcd E(n, 2);
    for (int j = 0; j < n; ++j) E.row(j) = d.frame[static_cast<std::size_t>(j)].transpose();
    const Eigen::MatrixXcd dE = D * E;
    Eigen::MatrixXcd Dc = D;
    Eigen::VectorXd extra(n);
    for (int j = 0; j < n; ++j) {
      const Eigen::Vector2cd e = E.row(j).transpose(), de = dE.row(j).transpose();
      const cplx A = e.dot(de);
      Dc(j, j) += A;
      extra(j) = de.squaredNorm() - std::norm(A);
    }
    op.matrix = Dc.adjoint() * Dc;
    op.matrix.diagonal() += extra.cast<cplx>();
    op.matrix *= (1.0 + a);
  }
  op.matrix.diagonal() += (pot.array() + a).matrix().cast<cplx>();
  op.matrix = 0.5 * (op.matrix + op.matrix.adjoint()).eval();
  return op;
}

namespace {

Eigen::MatrixXcd extrinsic_dirac_grid(const BoundaryDiscretization& d) {
  const int n = d.ngrid;
  const Eigen::MatrixXcd D = d.scheme == BoundaryScheme::Fourier ? spectral_derivative(n, d.curve.length(), false)
                                                                  : centered_difference(n, d.grid.h);
  Eigen::MatrixXcd a = -0.5 * (block_product(D, d.nu_tau, false) + block_product(D, d.nu_tau, true));
  for (int j = 0; j < n; ++j) {
    const double half_k = 0.5 * d.grid.kappa[static_cast<std::size_t>(j)];
    a(2 * j, 2 * j) += half_k;
    a(2 * j + 1, 2 * j + 1) += half_k;
  }
  return a;
}

}  // namespace

OperatorMatrix assemble_extrinsic_dirac(const BoundaryDiscretization& d) {
  const int n = d.ngrid;
  OperatorMatrix op;
  op.dof_kind = OperatorMatrix::DofKind::Spinor2;
  op.h = d.grid.h;
  op.matrix = extrinsic_dirac_grid(d);
  if (d.scheme == BoundaryScheme::Fourier && n % 2 == 0) {
    // restrict to the orthogonal complement of the two Nyquist spinors
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(2 * n, 2);
    for (int j = 0; j < n; ++j) v(2 * j, 0) = v(2 * j + 1, 1) = (j % 2 ? -1.0 : 1.0);
    const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(v).householderQ();
    const Eigen::MatrixXcd basis = q.rightCols(2 * n - 2);
    op.matrix = basis.adjoint() * op.matrix * basis;
  }
  return op;
}

OperatorMatrix assemble_spin_connection(const BoundaryDiscretization& d) {
  const int n = d.ngrid;
  const double h = d.grid.h;
  OperatorMatrix op;
  op.h = h;
  if (d.scheme == BoundaryScheme::Fourier) {
    op.dof_kind = OperatorMatrix::DofKind::Spinor2;
    op.matrix = kron_identity2(spectral_derivative(n, d.curve.length(), false));
    for (int j = 0; j < n; ++j)
      op.matrix.block<2, 2>(2 * j, 2 * j) += 0.5 * d.grid.kappa[static_cast<std::size_t>(j)] * d.nu_tau[static_cast<std::size_t>(j)];
    return op;
  }
  op.dof_kind = OperatorMatrix::DofKind::EdgeSpinor2;
  op.matrix = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  const CliffordRep rep2 = build_gammas(2);
  for (int j = 0; j < n; ++j) {
    const int jp = (j + 1) % n;
    const double tm = d.curve.param_of(d.grid.s[static_cast<std::size_t>(j)] + 0.5 * h);
    const Eigen::Vector2d nu = d.curve.normal_t(tm), tau = d.curve.d1_t(tm).normalized();
    const Eigen::Matrix2cd conn = 0.25 * d.curve.curvature_t(tm) * nu_tau_product(rep2, nu, tau);
    op.matrix.block<2, 2>(2 * j, 2 * j) += -Eigen::Matrix2cd::Identity() / h + conn;
    op.matrix.block<2, 2>(2 * j, 2 * jp) += Eigen::Matrix2cd::Identity() / h + conn;
  }
  return op;
}

double lichnerowicz_residual(const BoundaryDiscretization& d) {
  const int n = d.ngrid;
  const Eigen::MatrixXcd Dm = extrinsic_dirac_grid(d);
  const Eigen::MatrixXcd Nm = assemble_spin_connection(d).matrix;
  const double len = d.curve.length();

  std::vector<Eigen::VectorXcd> probes;
  for (int m : {0, 1, -1, 2, -3})
    for (int c = 0; c < 2; ++c) {
      Eigen::VectorXcd p = Eigen::VectorXcd::Zero(2 * n);
      for (int j = 0; j < n; ++j)
        p(2 * j + c) = std::exp(cplx(0.0, 2.0 * kPi * m * d.grid.s[static_cast<std::size_t>(j)] / len));
      probes.push_back(p);
    }
  {
    Eigen::VectorXcd p(2 * n);
    for (int j = 0; j < n; ++j) {
      const double k = d.grid.kappa[static_cast<std::size_t>(j)];
      const double ph = 2.0 * kPi * d.grid.s[static_cast<std::size_t>(j)] / len;
      p(2 * j) = k * std::cos(ph);
      p(2 * j + 1) = cplx(0.0, k * k);
    }
    probes.push_back(p);
  }

  double worst = 0.0;
  for (const auto& p : probes) {
    const Eigen::VectorXcd lhs = Dm * (Dm * p);
    const Eigen::VectorXcd rhs = Nm.adjoint() * (Nm * p);  // + H_2/2 = 0 on curves
    worst = std::max(worst, (lhs - rhs).norm() / lhs.norm());
  }
  return worst;
}

Eigen::VectorXd hermitian_eigenvalues(const OperatorMatrix& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.matrix, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("hermitian_eigenvalues: eigensolver failed");
  return es.eigenvalues();
}

}  // namespace diracml

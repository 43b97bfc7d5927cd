#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "diracml/geometry.hpp"

namespace diracml {

enum class BoundaryScheme { Fourier, Fd2 };

/// Uniform-arclength grid on a curve together with a unit section e(s) of
/// ker(I - B(s)), phase-continued by discrete parallel transport from s = 0.
struct BoundaryDiscretization {
  ClosedCurve curve;
  int ngrid = 0;
  BoundaryScheme scheme = BoundaryScheme::Fourier;
  UniformSample grid;
  std::vector<Eigen::Matrix2cd> B;      // B(s_j)
  std::vector<Eigen::Matrix2cd> nu_tau;  // beta(nu) beta(tau) at s_j
  std::vector<Eigen::Vector2cd> frame;   // e(s_j)
  std::complex<double> holonomy;          // <e(0), e continued to s = length>, -1 for a simple curve
};

/// `gauge` multiplies the frame by exp(i chi(s)); chi must be length-periodic.
BoundaryDiscretization discretize_boundary(const ClosedCurve& curve, int ngrid, BoundaryScheme scheme,
                                           const std::function<double(double)>& gauge = {});

struct OperatorMatrix {
  enum class DofKind { ConstrainedScalar, Spinor2, EdgeSpinor2 };
  Eigen::MatrixXcd matrix;
  DofKind dof_kind = DofKind::ConstrainedScalar;
  double h = 0.0;
};

/// L_a after frame reduction f = e g, per unit length; a = 0 gives L.
OperatorMatrix assemble_L(const BoundaryDiscretization& d, double a = 0.0);

/// D = kappa/2 - (1/2){beta(nu) beta(tau), d/ds} on C^2-valued grid functions.
/// Fourier on an even grid: compressed to the complement of the Nyquist spinors,
/// so the matrix has size 2 ngrid - 2.
OperatorMatrix assemble_extrinsic_dirac(const BoundaryDiscretization& d);

/// Spin connection d/ds + (kappa/2) beta(nu) beta(tau). Fourier: node to node.
/// Fd2: node to edge midpoints, forward difference with averaged connection.
OperatorMatrix assemble_spin_connection(const BoundaryDiscretization& d);

/// Nodewise H_2 - H_1^2 / 4 (= -kappa^2 / 4 on curves).
Eigen::VectorXd curvature_potential(const BoundaryDiscretization& d);

/// max over smooth probe spinors psi of
///   |D^2 psi - (N^* N + H_2/2) psi| / |D^2 psi|
double lichnerowicz_residual(const BoundaryDiscretization& d);

Eigen::VectorXd hermitian_eigenvalues(const OperatorMatrix& op);

/// Antiperiodic / periodic spectral differentiation matrices on n uniform nodes of a loop of length `length`.
Eigen::MatrixXcd spectral_derivative(int n, double length, bool antiperiodic);

}  // namespace diracml

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "diracml/clifford.hpp"
#include "diracml/eigsolve.hpp"
#include "diracml/mesh2d.hpp"

namespace diracml {

/// Complex unknowns per vertex: 2 (free spinor), 1 (g with u = g e on the
/// MIT boundary, e a unit +1 eigenvector of B), 0 (Dirichlet).
struct DofMap {
  std::vector<int> first;
  std::vector<int> count;
  std::vector<Eigen::Vector2cd> frame;  // meaningful where count == 1
  int size = 0;

  /// Nodal C^2 values of a reduced coefficient vector.
  Eigen::MatrixX2cd expand(const Eigen::VectorXcd& x) const;
};

struct FemForm {
  QuadraticPencil pencil;
  DofMap dofs;
  SpMatC line_part;  // contribution of the curve integral to K
};

/// int_Omega |grad u|^2 + m^2 |u|^2 + int_Sigma (m + kappa/2) |u|^2 on u = B u.
/// `rep` is the ambient n = 3 representation.
FemForm assemble_bag_form(const Mesh2D& mesh, double m, const CliffordRep& rep);

/// int_Omega (|grad u|^2 + m^2 |u|^2) + int_Omega^c (|grad u|^2 + M^2 |u|^2)
///   - (M - m) int_Sigma <B u, u>, Dirichlet on the truncation curve.
FemForm assemble_jump_form(const Mesh2D& mesh, double m, double M, const CliffordRep& rep);

/// Shift below the spectrum of either form (both squares are nonnegative).
inline constexpr double kFormShift = -1.0;

struct FemSolveOptions {
  double h = 0.05;
  std::optional<LayerSpec> layer;  // interior rows; default_layer(m) when unset and |m| >= 16
  double box = 0.0;                // jump: box half width, 0 selects 3 * circumradius
  int refinements = 0;             // uniform refinements after meshing
  EigRequest request;              // count is overridden; shift defaults to kFormShift
};

struct FemResult {
  Spectrum spectrum;
  std::vector<std::string> flags;
  int dofs = 0;
  double h = 0.0;
};

FemResult solve_bag(const ClosedCurve& curve, double m, int count, const FemSolveOptions& opt);

/// Eigenvalues >= 0.9 M^2 are box-truncation artefacts of the essential
/// spectrum; they are dropped and flagged "spurious_filtered".
FemResult solve_jump(const ClosedCurve& curve, double m, double M, int count, const FemSolveOptions& opt);

}  // namespace diracml

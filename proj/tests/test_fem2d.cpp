#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "diracml/errors.hpp"
#include "diracml/fem2d.hpp"
#include "diracml/radial_exact.hpp"

using namespace diracml;

namespace {

double hermitian_defect(const SpMatC& A) {
  const SpMatC d = A - SpMatC(A.adjoint());
  return d.norm() / std::max(1.0, A.norm());
}

double exact_square(double m, int j) {
  RadialProblem p;
  p.m = m;
  p.jmax = j + 1;
  return disk_mit_spectrum(p).squares[j];
}

}  // namespace

TEST_CASE("mesh area converges to pi at second order") {
  const ClosedCurve c = ClosedCurve::circle(1.0);
  Mesh2D m0 = build_mesh(c, 0.2);
  Mesh2D m1 = refine_uniform(m0);
  Mesh2D m2 = refine_uniform(m1);
  const double e0 = M_PI - mesh_quality(m0).area;
  const double e1 = M_PI - mesh_quality(m1).area;
  const double e2 = M_PI - mesh_quality(m2).area;
  CHECK(e0 > 0.0);
  CHECK(e0 / e1 > 3.5);
  CHECK(e1 / e2 > 3.5);
  CHECK(mesh_quality(m0).min_angle_deg >= 20.0);
  for (const Mesh2D* m : {&m0, &m2})
    for (int b : m->boundary_nodes) CHECK(std::abs(m->vertices[b].norm() - 1.0) < 1e-12);
}

TEST_CASE("boundary layer rows resolve the prescribed first thickness") {
  const ClosedCurve c = ClosedCurve::circle(1.0);
  MeshOptions opt;
  opt.layer = LayerSpec{1.0 / 32.0, 1.2, 1.0 / 64.0 / 4.0};
  const MeshQuality q = mesh_quality(build_mesh(c, 0.1, opt));
  CHECK(q.min_normal_edge <= 1.0 / 64.0);
  CHECK(q.min_angle_deg >= 20.0);
  const LayerSpec d = default_layer(-32.0);
  CHECK(d.width == doctest::Approx(3.0 / 32.0));
  CHECK(d.first == doctest::Approx(0.1 / 1024.0));
}

TEST_CASE("mesh file round trip") {
  const ClosedCurve c = ClosedCurve::ellipse(1.5, 1.0);
  const Mesh2D m = build_mesh(c, 0.15);
  const std::string path = (std::filesystem::temp_directory_path() / "diracml_mesh_rt.msh").string();
  write_mesh(m, path);
  const Mesh2D r = read_mesh(path, c);
  std::remove(path.c_str());
  REQUIRE(r.vertices.size() == m.vertices.size());
  CHECK(r.triangles == m.triangles);
  CHECK(r.boundary_nodes == m.boundary_nodes);
  double dv = 0.0;
  for (std::size_t i = 0; i < m.vertices.size(); ++i) dv = std::max(dv, (r.vertices[i] - m.vertices[i]).norm());
  CHECK(dv == 0.0);
}

TEST_CASE("bag form structure") {
  const CliffordRep rep = build_gammas(3);
  const Mesh2D mesh = build_mesh(ClosedCurve::circle(1.0), 0.05);
  const FemForm f = assemble_bag_form(mesh, 0.0, rep);
  CHECK(hermitian_defect(f.pencil.K) < 1e-14);
  CHECK(hermitian_defect(f.pencil.M) < 1e-14);
  // u = e on the curve: the line term is int kappa / 2 = pi
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(f.dofs.size);
  for (int b : mesh.boundary_nodes) {
    REQUIRE(f.dofs.count[b] == 1);
    x[f.dofs.first[b]] = 1.0;
  }
  const double line = (x.adjoint() * (f.line_part * x))(0).real();
  CHECK(std::abs(line - M_PI) < 1e-2);
  // frames are +1 eigenvectors of B
  for (int b : mesh.boundary_nodes) {
    const BoundaryProjectorData bd = boundary_matrix(rep, mesh.curve.normal(mesh.curve.project(mesh.vertices[b])));
    const Eigen::Vector2cd e = f.dofs.frame[b];
    CHECK((bd.B * e - e).norm() < 1e-12);
  }
  CHECK_THROWS(assemble_bag_form(mesh, 0.0, build_gammas(2)));
}

TEST_CASE("jump form with equal masses has no curve term") {
  const CliffordRep rep = build_gammas(3);
  MeshOptions opt;
  opt.problem = MeshProblem::Jump;
  opt.box_half_width = 2.5;
  const Mesh2D mesh = build_mesh(ClosedCurve::circle(1.0), 0.1, opt);
  const FemForm f = assemble_jump_form(mesh, 3.0, 3.0, rep);
  CHECK(f.line_part.norm() == 0.0);
  CHECK(hermitian_defect(f.pencil.K) < 1e-14);
  for (int d : mesh.dirichlet_nodes) CHECK(f.dofs.count[d] == 0);
}

TEST_CASE("bag eigenvalues converge at second order for m = -4") {
  const ClosedCurve c = ClosedCurve::circle(1.0);
  const double ref = exact_square(-4.0, 0);
  FemSolveOptions opt;
  opt.h = 0.1;
  double err[3];
  for (int r = 0; r < 3; ++r) {
    opt.refinements = r;
    const FemResult res = solve_bag(c, -4.0, 1, opt);
    err[r] = res.spectrum.eigenvalues[0] - ref;
    CHECK(res.spectrum.residuals[0] <= 1e-8 * std::max(1.0, std::abs(res.spectrum.eigenvalues[0])));
  }
  CHECK(err[0] > 0.0);
  CHECK(err[0] / err[1] >= 3.2);
  CHECK(err[0] / err[1] <= 4.8);
  CHECK(err[1] / err[2] >= 3.2);
  CHECK(err[1] / err[2] <= 4.8);
}

TEST_CASE("jump problem at M = 32") {
  RadialProblem p;
  p.M = 32.0;
  p.jmax = 2;
  const double ref = disk_jump_spectrum(p).squares[0];
  const ClosedCurve c = ClosedCurve::circle(1.0);
  FemSolveOptions opt;
  opt.h = 0.05;
  const FemResult a = solve_jump(c, 0.0, 32.0, 2, opt);
  CHECK(std::abs(a.spectrum.eigenvalues[0] / ref - 1.0) < 0.02);
  opt.box = 6.0;
  const FemResult b = solve_jump(c, 0.0, 32.0, 2, opt);
  CHECK(std::abs(b.spectrum.eigenvalues[0] - a.spectrum.eigenvalues[0]) < 1e-6 * ref);
}

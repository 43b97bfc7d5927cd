#include "diracml/fem2d.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "diracml/errors.hpp"

namespace diracml {

namespace {

using Triplets = std::vector<Eigen::Triplet<cplx>>;

constexpr double kGaussX[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
constexpr double kGaussW[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

DofMap make_dofs(const Mesh2D& mesh, bool frame_reduce, const CliffordRep& rep) {
  const auto nv = mesh.vertices.size();
  DofMap d;
  d.first.assign(nv, -1);
  d.count.assign(nv, 2);
  d.frame.assign(nv, Eigen::Vector2cd::Zero());
  for (int v : mesh.dirichlet_nodes) d.count.at(v) = 0;
  if (frame_reduce) {
    for (std::size_t i = 0; i < mesh.boundary_nodes.size(); ++i) {
      const int v = mesh.boundary_nodes[i];
      const Eigen::Vector2d nu = mesh.curve.normal(mesh.boundary_s[i]);
      const Eigen::MatrixXcd B = boundary_matrix(rep, nu).B;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(B);
      Eigen::Vector2cd e = es.eigenvectors().col(1);
      const double ph = std::arg(std::abs(e(0)) > 0.5 ? e(0) : e(1));
      e *= std::polar(1.0, -ph);
      if ((B * e - e).norm() > 1e-12) throw NumericalError("fem2d: boundary frame is not a +1 eigenvector of B");
      d.count[v] = 1;
      d.frame[v] = e;
    }
  }
  for (std::size_t v = 0; v < nv; ++v) {
    d.first[v] = d.size;
    d.size += d.count[v];
  }
  return d;
}

// Adds T_a^H G T_b for the nodal block G.
void add_block(Triplets& out, const DofMap& d, int a, int b, const Eigen::Matrix2cd& G) {
  const int ca = d.count[a], cb = d.count[b];
  if (ca == 0 || cb == 0) return;
  Eigen::Matrix2cd Ta = Eigen::Matrix2cd::Identity(), Tb = Eigen::Matrix2cd::Identity();
  if (ca == 1) Ta.col(0) = d.frame[a];
  if (cb == 1) Tb.col(0) = d.frame[b];
  const Eigen::Matrix2cd R = Ta.adjoint() * G * Tb;
  for (int i = 0; i < ca; ++i)
    for (int j = 0; j < cb; ++j)
      if (R(i, j) != cplx(0.0)) out.emplace_back(d.first[a] + i, d.first[b] + j, R(i, j));
}

struct Pieces {
  Triplets K, M, line;
};

void add_volume(Pieces& p, const Mesh2D& mesh, const DofMap& d, double m, double M) {
  for (std::size_t k = 0; k < mesh.triangles.size(); ++k) {
    const auto& t = mesh.triangles[k];
    const Eigen::Vector2d x0 = mesh.vertices[t[0]], x1 = mesh.vertices[t[1]], x2 = mesh.vertices[t[2]];
    Eigen::Matrix2d J;
    J.col(0) = x1 - x0;
    J.col(1) = x2 - x0;
    const double area = 0.5 * J.determinant();
    const Eigen::Matrix2d Jit = J.inverse().transpose();
    Eigen::Matrix<double, 2, 3> grad;
    grad.col(0) = Jit * Eigen::Vector2d(-1.0, -1.0);
    grad.col(1) = Jit * Eigen::Vector2d(1.0, 0.0);
    grad.col(2) = Jit * Eigen::Vector2d(0.0, 1.0);
    const double mass = (!mesh.exterior.empty() && mesh.exterior[k]) ? M : m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double mij = area / 12.0 * (i == j ? 2.0 : 1.0);
        const double kij = area * grad.col(i).dot(grad.col(j)) + mass * mass * mij;
        add_block(p.K, d, t[i], t[j], kij * Eigen::Matrix2cd::Identity());
        add_block(p.M, d, t[i], t[j], mij * Eigen::Matrix2cd::Identity());
      }
  }
}

// sum over curve edges of int phi_i phi_j G(s) ds, 3-point Gauss in arclength
template <class Weight>
void add_line(Pieces& p, const Mesh2D& mesh, const DofMap& d, Weight&& weight) {
  const auto nb = mesh.boundary_nodes.size();
  if (nb < 3) throw GeometryError("fem2d: mesh has fewer than three curve nodes");
  const double len = mesh.curve.length();
  for (std::size_t e = 0; e < nb; ++e) {
    const int a = mesh.boundary_nodes[e], b = mesh.boundary_nodes[(e + 1) % nb];
    const double s0 = mesh.boundary_s[e];
    double s1 = mesh.boundary_s[(e + 1) % nb];
    if (e + 1 == nb) s1 += len;
    if (!(s1 > s0)) throw GeometryError("fem2d: curve nodes are not ordered by arclength");
    const double half = 0.5 * (s1 - s0);
    Eigen::Matrix2cd Gaa = Eigen::Matrix2cd::Zero(), Gab = Gaa, Gbb = Gaa;
    for (int q = 0; q < 3; ++q) {
      const double s = s0 + half * (1.0 + kGaussX[q]);
      const double pb = 0.5 * (1.0 + kGaussX[q]), pa = 1.0 - pb;
      const Eigen::Matrix2cd G = kGaussW[q] * half * weight(s < len ? s : s - len);
      Gaa += pa * pa * G;
      Gab += pa * pb * G;
      Gbb += pb * pb * G;
    }
    for (auto* out : {&p.K, &p.line}) {
      add_block(*out, d, a, a, Gaa);
      add_block(*out, d, a, b, Gab);
      add_block(*out, d, b, a, Gab);
      add_block(*out, d, b, b, Gbb);
    }
  }
}

SpMatC build(const Triplets& t, int n) {
  SpMatC A(n, n);
  A.setFromTriplets(t.begin(), t.end());
  SpMatC H = SpMatC(A.adjoint());
  return 0.5 * (A + H);
}

FemForm finish(const Pieces& p, DofMap d) {
  FemForm f;
  f.pencil.K = build(p.K, d.size);
  f.pencil.M = build(p.M, d.size);
  f.line_part = build(p.line, d.size);
  f.dofs = std::move(d);
  return f;
}

void check_rep(const CliffordRep& rep) {
  if (rep.n != 3 || rep.size != 2) throw DimensionError("fem2d: expected the ambient n = 3 representation (2x2 matrices)");
}

}  // namespace

Eigen::MatrixX2cd DofMap::expand(const Eigen::VectorXcd& x) const {
  if (x.size() != size) throw DimensionError("DofMap::expand: vector size does not match the DOF count");
  Eigen::MatrixX2cd u = Eigen::MatrixX2cd::Zero(static_cast<Eigen::Index>(first.size()), 2);
  for (std::size_t v = 0; v < first.size(); ++v) {
    if (count[v] == 2) u.row(v) << x(first[v]), x(first[v] + 1);
    else if (count[v] == 1) u.row(v) = x(first[v]) * frame[v].transpose();
  }
  return u;
}

FemForm assemble_bag_form(const Mesh2D& mesh, double m, const CliffordRep& rep) {
  check_rep(rep);
  if (mesh.problem != MeshProblem::Bag) throw DomainError("assemble_bag_form: mesh was built for a jump problem");
  DofMap d = make_dofs(mesh, true, rep);
  Pieces p;
  add_volume(p, mesh, d, m, m);
  add_line(p, mesh, d, [&](double s) -> Eigen::Matrix2cd {
    return (m + 0.5 * mesh.curve.curvature(s)) * Eigen::Matrix2cd::Identity();
  });
  return finish(p, std::move(d));
}

FemForm assemble_jump_form(const Mesh2D& mesh, double m, double M, const CliffordRep& rep) {
  check_rep(rep);
  if (mesh.problem != MeshProblem::Jump) throw DomainError("assemble_jump_form: mesh was built for a bag problem");
  DofMap d = make_dofs(mesh, false, rep);
  Pieces p;
  add_volume(p, mesh, d, m, M);
  if (M != m) {
    add_line(p, mesh, d, [&](double s) -> Eigen::Matrix2cd {
      return -(M - m) * boundary_matrix(rep, mesh.curve.normal(s)).B;
    });
  }
  return finish(p, std::move(d));
}

namespace {

std::optional<LayerSpec> interior_layer(double m, const FemSolveOptions& opt) {
  if (opt.layer) return opt.layer;
  if (std::fabs(m) >= 16.0) return default_layer(m);
  return std::nullopt;
}

Mesh2D refined(Mesh2D mesh, int times) {
  for (int i = 0; i < times; ++i) mesh = refine_uniform(mesh);
  return mesh;
}

FemResult run(const FemForm& form, int count, const FemSolveOptions& opt, double h) {
  EigRequest req = opt.request;
  req.count = std::min(count, form.dofs.size);
  if (!req.shift) req.shift = kFormShift;
  FemResult r;
  r.spectrum = lowest(form.pencil, req);
  r.flags = r.spectrum.flags;
  r.dofs = form.dofs.size;
  r.h = h;
  return r;
}

}  // namespace

FemResult solve_bag(const ClosedCurve& curve, double m, int count, const FemSolveOptions& opt) {
  MeshOptions mo;
  mo.layer = interior_layer(m, opt);
  const Mesh2D mesh = refined(build_mesh(curve, opt.h, mo), opt.refinements);
  return run(assemble_bag_form(mesh, m, build_gammas(3)), count, opt, mesh.h);
}

FemResult solve_jump(const ClosedCurve& curve, double m, double M, int count, const FemSolveOptions& opt) {
  if (!(std::fabs(M) > 0.0)) throw DomainError("solve_jump: M must be nonzero");
  MeshOptions mo;
  mo.problem = MeshProblem::Jump;
  mo.box_half_width = opt.box > 0.0 ? opt.box : 3.0 * curve.circumradius();
  mo.layer = interior_layer(m, opt);
  mo.outer_layer = LayerSpec{0.0, 1.1, std::min(opt.h, 0.05 / std::fabs(M))};
  const Mesh2D mesh = refined(build_mesh(curve, opt.h, mo), opt.refinements);
  FemResult r = run(assemble_jump_form(mesh, m, M, build_gammas(3)), count + 6, opt, mesh.h);
  const double cut = 0.9 * M * M;
  Spectrum& s = r.spectrum;
  std::size_t keep = 0;
  while (keep < s.eigenvalues.size() && s.eigenvalues[keep] < cut) ++keep;
  if (keep < s.eigenvalues.size()) r.flags.push_back("spurious_filtered");
  keep = std::min<std::size_t>(keep, count);
  if (static_cast<int>(keep) < count) r.flags.push_back("fewer_than_requested");
  s.eigenvalues.resize(keep);
  s.residuals.resize(keep);
  if (s.vectors.cols() > static_cast<Eigen::Index>(keep)) s.vectors.conservativeResize(Eigen::NoChange, keep);
  s.clusters = cluster_indices(s.eigenvalues, opt.request.cluster_tol);
  return r;
}

}  // namespace diracml

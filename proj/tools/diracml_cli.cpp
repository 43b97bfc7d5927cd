#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "CLI11.hpp"
#include "diracml/boundary_spectra.hpp"
#include "diracml/clifford.hpp"
#include "diracml/csv.hpp"
#include "diracml/fem2d.hpp"
#include "diracml/geometry.hpp"
#include "diracml/model1d.hpp"
#include "diracml/radial_exact.hpp"
#include "diracml/study.hpp"

using namespace diracml;

namespace {

struct Globals {
  std::string out;
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> tol;
  std::optional<int> jmax;
  bool svg = false;
  std::optional<double> shift;

  std::optional<std::string> curve;
  double radius = 1.0;
  std::optional<double> m, M;
  int channels = 6;
  std::optional<double> h;
  std::optional<double> box;
  std::string scheme = "fourier";
  std::optional<int> ngrid;

  std::string kind;
  std::string backend = "exact";
  std::vector<double> m_list, M_list;
  std::vector<int> ngrid_list;
  std::optional<double> p;
  bool mirrored = false;
};

void emit(const Globals& g, const CsvTable& t, const std::string& name) {
  if (g.out.empty()) {
    write_csv(t, std::cout);
    return;
  }
  std::filesystem::create_directories(g.out);
  write_csv(t, (std::filesystem::path(g.out) / (name + ".csv")).string());
}

void warn(const std::vector<std::string>& flags) {
  for (const auto& f : flags) std::cerr << "warning: " << f << "\n";
}

int cmd_clifford(const Globals& g, int nmax) {
  CsvTable t{{"n", "size", "pairs_checked", "hermitian", "failures"}, {}};
  bool ok = true;
  for (int n = 1; n <= nmax; ++n) {
    const auto r = check_anticommutation(build_gammas(n));
    ok = ok && r.ok();
    t.add_row({std::to_string(n), std::to_string(r.size), std::to_string(r.pairs_checked), r.hermitian ? "1" : "0",
               std::to_string(r.failures.size())});
  }
  emit(g, t, "clifford-check");
  return ok ? 0 : 1;
}

int cmd_model1d(const Globals& g, const std::string& op, double alpha, double beta, double delta) {
  const Model1DParams p{alpha, beta, delta};
  const int j = g.jmax.value_or(10);
  const Model1DSpectrum s = op == "Sprime" ? spectrum_Sprime(p, j) : spectrum_S(p, j);
  CsvTable t{{"j", "eigenvalue", "secular_residual"}, {}};
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
    t.add_row({std::to_string(i + 1), format_number(s.eigenvalues[i]), format_number(s.residuals[i])});
  emit(g, t, "model1d");
  warn(s.flags);
  return 0;
}

int cmd_curve(const Globals& g, const std::string& op) {
  const ClosedCurve c = parse_curve_spec(g.curve.value_or("circle 1"));
  const int n = g.ngrid.value_or(256);
  if (g.scheme != "fourier" && g.scheme != "fd2") throw std::invalid_argument("--scheme must be fourier or fd2");
  const auto d = discretize_boundary(c, n, g.scheme == "fd2" ? BoundaryScheme::Fd2 : BoundaryScheme::Fourier);
  Eigen::VectorXd ev;
  if (op == "L") {
    ev = hermitian_eigenvalues(assemble_L(d));
  } else if (op == "DSigma2") {
    const Eigen::MatrixXcd D = assemble_extrinsic_dirac(d).matrix;
    ev = hermitian_eigenvalues(OperatorMatrix{D * D, OperatorMatrix::DofKind::Spinor2, d.grid.h});
  } else if (op == "DSigma") {
    ev = hermitian_eigenvalues(assemble_extrinsic_dirac(d));
  } else {
    throw std::invalid_argument("--operator must be L, DSigma or DSigma2");
  }
  const int j = std::min<int>(g.jmax.value_or(8), static_cast<int>(ev.size()));
  CsvTable t{{"j", "eigenvalue"}, {}};
  for (int i = 0; i < j; ++i) t.add_row({std::to_string(i + 1), format_number(ev(i))});
  emit(g, t, "curve-spectrum");
  std::cerr << "lichnerowicz_residual: " << format_number(lichnerowicz_residual(d)) << "\n";
  return 0;
}

int cmd_radial(const Globals& g, bool ball) {
  RadialProblem p;
  p.geometry = ball ? RadialGeometry::Ball : RadialGeometry::Disk;
  p.radius = g.radius;
  p.m = g.m.value_or(0.0);
  p.M = g.M;
  p.channel_cap = g.channels;
  p.jmax = g.jmax.value_or(6);
  if (ball && g.M) throw std::invalid_argument("ball-exact has no jump problem; drop --M");
  const RadialSpectrum s = ball ? ball_mit_spectrum(p) : (p.M ? disk_jump_spectrum(p) : disk_mit_spectrum(p));
  CsvTable t{{"channel", "j", "eigenvalue_of_square", "secular_residual"}, {}};
  std::size_t listed = 0;
  int total = 0;
  for (const auto& r : s.roots) {
    if (total >= p.jmax) break;
    t.add_row({std::to_string(r.channel), std::to_string(r.index), format_number(r.square), format_number(r.residual)});
    total += r.multiplicity;
    ++listed;
  }
  emit(g, t, ball ? "ball-exact" : "disk-exact");
  warn(s.flags);
  return listed > 0 ? 0 : 1;
}

int cmd_fem(const Globals& g, const std::string& problem, const std::vector<double>& layer, int refine,
            const std::string& mesh_out) {
  const ClosedCurve c = parse_curve_spec(g.curve.value_or("circle 1"));
  FemSolveOptions o;
  o.h = g.h.value_or(0.05);
  o.box = g.box.value_or(0.0);
  o.refinements = refine;
  if (!layer.empty()) {
    if (layer.size() != 3) throw std::invalid_argument("--layer expects width,ratio,first");
    o.layer = LayerSpec{layer[0], layer[1], layer[2]};
  }
  o.request.seed = g.seed;
  if (g.tol) o.request.tol = *g.tol;
  o.request.shift = g.shift;
  const int j = g.jmax.value_or(6);
  const double m = g.m.value_or(0.0);
  FemResult r;
  if (problem == "bag") {
    r = solve_bag(c, m, j, o);
  } else if (problem == "jump") {
    if (!g.M) throw std::invalid_argument("jump problems need --M");
    r = solve_jump(c, m, *g.M, j, o);
  } else {
    throw std::invalid_argument("--problem must be bag or jump");
  }
  if (!mesh_out.empty()) {
    MeshOptions mo;
    mo.problem = problem == "jump" ? MeshProblem::Jump : MeshProblem::Bag;
    mo.layer = o.layer ? o.layer : (std::fabs(m) >= 16.0 ? std::optional<LayerSpec>(default_layer(m)) : std::nullopt);
    if (mo.problem == MeshProblem::Jump) mo.box_half_width = o.box > 0.0 ? o.box : 3.0 * c.circumradius();
    Mesh2D mesh = build_mesh(c, o.h, mo);
    for (int i = 0; i < refine; ++i) mesh = refine_uniform(mesh);
    write_mesh(mesh, mesh_out);
  }
  CsvTable t{{"j", "eigenvalue", "residual"}, {}};
  for (std::size_t i = 0; i < r.spectrum.eigenvalues.size(); ++i)
    t.add_row({std::to_string(i + 1), format_number(r.spectrum.eigenvalues[i]), format_number(r.spectrum.residuals[i])});
  emit(g, t, "fem2d");
  std::cerr << "dofs " << r.dofs << ", h " << format_number(r.h) << ", shift " << format_number(r.spectrum.shift)
            << ", seed " << r.spectrum.seed << ", method " << r.spectrum.method << "\n";
  warn(r.flags);
  return r.spectrum.converged ? 0 : 1;
}

int cmd_study(const Globals& g) {
  if (g.kind.empty()) throw std::invalid_argument("study: give a study name (positional or kind = ... in the config)");
  StudyConfig c = default_study(parse_study_kind(g.kind));
  if (g.curve) c.curve = *g.curve;
  c.backend = parse_backend(g.backend);
  if (!g.m_list.empty()) c.m_list = g.m_list;
  if (!g.M_list.empty()) c.M_list = g.M_list;
  if (!g.ngrid_list.empty()) c.ngrid_list = g.ngrid_list;
  if (g.m) c.m = *g.m;
  if (g.p) c.coupling_p = *g.p;
  c.mirrored = g.mirrored;
  if (g.jmax) c.jmax = *g.jmax;
  c.channels = g.channels;
  if (g.h) c.h = *g.h;
  if (g.box) c.box = *g.box;
  c.scheme = g.scheme;
  if (g.ngrid) c.ngrid = *g.ngrid;
  if (g.tol) c.tol = *g.tol;
  c.seed = g.seed;
  c.shift = g.shift;

  const StudyReport r = run_study(c);
  const CsvTable table = report_table(r);
  CsvTable summary{{"assertion", "pass", "detail"}, {}};
  for (const auto& a : r.assertions) summary.add_row({a.name, a.pass ? "1" : "0", a.detail});
  if (g.out.empty()) {
    write_csv(table, std::cout);
  } else {
    std::filesystem::create_directories(g.out);
    const auto base = std::filesystem::path(g.out) / r.study;
    write_csv(table, base.string() + ".csv");
    write_csv(summary, base.string() + "_assertions.csv");
    if (g.svg) emit_svg(r, base.string() + ".svg");
  }
  std::cerr << "reference: " << r.reference_note << "\n";
  for (std::size_t k = 0; k < r.slopes.size(); ++k)
    std::cerr << "log-log slope gap_" << k + 1 << ": " << format_number(r.slopes[k]) << "\n";
  for (const auto& a : r.assertions) std::cerr << (a.pass ? "PASS " : "FAIL ") << a.name << " (" << a.detail << ")\n";
  return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("DIRAC_ML_THREADS")) Eigen::setNbThreads(std::max(1, std::atoi(env)));

  CLI::App app{"Dirac operators with infinite-mass boundary conditions: exact and FEM spectra, convergence studies"};
  app.set_config("--config", "", "Read options from a `key = value` file (# comments); command-line flags take precedence");
  app.set_help_flag("--help", "Print this help message and exit");
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--out", g.out, "Output directory for CSV/SVG (default: CSV to stdout)");
  app.add_option("--seed", g.seed, "Eigensolver start-vector seed")->capture_default_str();
  app.add_option("--tol", g.tol, "Eigensolver relative residual tolerance");
  app.add_option("--jmax", g.jmax, "Number of eigenvalues");
  app.add_flag("--svg", g.svg, "Also write a log-log gap plot (study)");
  app.add_option("--shift", g.shift, "Eigensolver shift (lowered automatically if not below the spectrum)");

  auto* geo = app.add_option_group("Problem", "Shared problem parameters");
  geo->add_option("--curve", g.curve, "circle R | ellipse a b | fourier <csv> (default circle 1; ellipse 2 1 for length-invariance)");
  geo->add_option("--radius", g.radius, "Disk/ball radius")->capture_default_str();
  geo->add_option("--m", g.m, "Interior mass");
  geo->add_option("--M", g.M, "Exterior mass (jump problems)");
  geo->add_option("--channels", g.channels, "Channel cap K (disk k in [-K-1, K], ball |kappa| <= K)")->capture_default_str();
  geo->add_option("--h", g.h, "FEM target mesh size");
  geo->add_option("--box", g.box, "FEM jump truncation half width (default 3 x circumradius)");
  geo->add_option("--scheme", g.scheme, "Curve discretisation: fourier | fd2")->capture_default_str();
  geo->add_option("--ngrid", g.ngrid, "Curve grid size");

  auto* st = app.add_option_group("Study", "Study parameters (also valid as config keys)");
  st->add_option("--kind", g.kind, "T1 | T2 | T3 | T1-ball | lichnerowicz | length-invariance");
  st->add_option("--backend", g.backend, "exact | fem")->capture_default_str();
  st->add_option("--m-list", g.m_list, "Interior mass sweep (T1, T1-ball)")->delimiter(',');
  st->add_option("--M-list", g.M_list, "Exterior mass sweep (T2, T3)")->delimiter(',');
  st->add_option("--ngrid-list", g.ngrid_list, "Grid sweep (lichnerowicz)")->delimiter(',');
  st->add_option("--p", g.p, "T3 coupling exponent, m = -M^p");
  st->add_flag("--mirrored", g.mirrored, "T3 with m = +M^p and exterior mass -M");

  int nmax = kMaxCliffordDim;
  auto* cc = app.add_subcommand("clifford-check", "Exact anticommutation check of the gamma matrices");
  cc->add_option("--n-max", nmax, "Largest dimension")->capture_default_str()->check(CLI::Range(1, kMaxCliffordDim));

  std::string op1 = "S";
  double alpha = 20.0, beta = 1.0, delta = 1.0;
  auto* m1 = app.add_subcommand("model1d", "Robin/Dirichlet interval models S and S'");
  m1->add_option("--operator", op1, "S | Sprime")->capture_default_str();
  m1->add_option("--alpha", alpha)->capture_default_str();
  m1->add_option("--beta", beta)->capture_default_str();
  m1->add_option("--delta", delta)->capture_default_str();

  std::string op2 = "L";
  auto* cs = app.add_subcommand("curve-spectrum", "Spectra of boundary operators on a closed curve");
  cs->add_option("--operator", op2, "L | DSigma | DSigma2")->capture_default_str();

  auto* de = app.add_subcommand("disk-exact", "Disk bag (or jump with --M) spectrum from radial secular equations");
  auto* be = app.add_subcommand("ball-exact", "Ball bag spectrum from radial secular equations");

  std::string problem = "bag", mesh_out;
  std::vector<double> layer;
  int refine = 0;
  auto* fe = app.add_subcommand("fem2d", "P1 finite elements for the squared bag or jump operator");
  fe->add_option("--problem", problem, "bag | jump")->capture_default_str();
  fe->add_option("--layer", layer, "Interior tubular rows: width,ratio,first")->delimiter(',');
  fe->add_option("--refine", refine, "Uniform refinements")->capture_default_str();
  fe->add_option("--mesh-out", mesh_out, "Write the mesh in text format");

  std::string kind_pos;
  auto* sd = app.add_subcommand("study", "Convergence and verification studies");
  sd->add_option("kind", kind_pos, "Study name (overrides --kind)");

  CLI11_PARSE(app, argc, argv);
  if (!kind_pos.empty()) g.kind = kind_pos;

  try {
    if (*cc) return cmd_clifford(g, nmax);
    if (*m1) return cmd_model1d(g, op1, alpha, beta, delta);
    if (*cs) return cmd_curve(g, op2);
    if (*de) return cmd_radial(g, false);
    if (*be) return cmd_radial(g, true);
    if (*fe) return cmd_fem(g, problem, layer, refine, mesh_out);
    if (*sd) return cmd_study(g);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

#include "diracml/study.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "diracml/boundary_spectra.hpp"
#include "diracml/errors.hpp"
#include "diracml/fem2d.hpp"
#include "diracml/geometry.hpp"
#include "diracml/radial_exact.hpp"

namespace diracml {

namespace {

constexpr double kT1DiskFinalGap = 0.02;
constexpr double kT1BallFinalGap = 0.06;
constexpr double kT2RateLo = 0.8, kT2RateHi = 1.25;
constexpr double kLichFourierTol = 1e-10;
constexpr double kLichFd2RatioLo = 3.5, kLichFd2RatioHi = 4.5;
constexpr double kLengthRelTol = 1e-3;
constexpr double kBelowReferenceSlack = 1e-9;

std::string fmt(double x) { return format_number(x); }

double round_radius(const ClosedCurve& c) {
  if (c.kind() != ClosedCurve::Kind::Circle) throw DomainError("study: the exact backend requires a circle (disk/ball) geometry");
  return c.shape_params().at(0);
}

template <class F>
auto at_point(const std::string& what, double param, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    std::ostringstream os;
    os << "study: solver failed at " << what << " = " << fmt(param) << ": " << e.what();
    throw NumericalError(os.str());
  }
}

void check_sweep(const std::vector<double>& v, const char* name) {
  if (v.empty()) throw DomainError(std::string("study: empty sweep ") + name);
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(std::fabs(v[i]) > std::fabs(v[i - 1]))) throw DomainError(std::string("study: sweep ") + name + " must be strictly monotone in magnitude");
}

std::vector<double> first_values(std::vector<double> v, int j) {
  if (static_cast<int>(v.size()) < j) throw NumericalError("study: fewer eigenvalues than jmax were found");
  v.resize(j);
  return v;
}

RadialProblem radial(double R, double m, int jmax, int channels) {
  RadialProblem p;
  p.radius = R;
  p.m = m;
  p.jmax = jmax;
  p.channel_cap = channels;
  return p;
}

FemSolveOptions fem_options(const StudyConfig& c) {
  FemSolveOptions o;
  o.h = c.h;
  o.box = c.box;
  o.request.tol = c.tol;
  o.request.seed = c.seed;
  o.request.shift = c.shift;
  return o;
}

std::vector<double> fem_values(const FemResult& r, int j, std::vector<std::string>& flags) {
  flags.insert(flags.end(), r.flags.begin(), r.flags.end());
  return first_values(r.spectrum.eigenvalues, j);
}

Assertion strictly_decreasing(const StudyReport& r, const std::string& name) {
  Assertion a{name, true, ""};
  std::ostringstream os;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const double g = r.rows[i].gaps().at(0);
    os << (i ? " > " : "") << fmt(g);
    if (i > 0 && !(g < r.rows[i - 1].gaps().at(0))) a.pass = false;
  }
  a.detail = os.str();
  return a;
}

Assertion final_gap_below(const StudyReport& r, double bound) {
  const double g = r.rows.back().gaps().at(0);
  char name[48];
  std::snprintf(name, sizeof name, "final gap < %g", bound);
  return {name, g < bound, "gap " + fmt(g)};
}

Assertion above_reference(const StudyReport& r) {
  Assertion a{"E_1 >= reference - 1e-9", true, ""};
  for (const auto& row : r.rows)
    if (row.values[0] < row.reference[0] - kBelowReferenceSlack) {
      a.pass = false;
      a.detail += "violated at " + fmt(row.param) + "; ";
    }
  return a;
}

StudyReport run_t1(const StudyConfig& c, bool ball) {
  check_sweep(c.m_list, "m_list");
  const ClosedCurve curve = parse_curve_spec(c.curve);
  StudyReport r;
  r.study = ball ? "T1-ball" : "T1";
  r.param_name = "m";
  r.value_name = "E";
  std::vector<double> ref;
  if (ball) {
    if (c.backend != Backend::Exact) throw DomainError("study: T1-ball supports only the exact backend");
    const double R = round_radius(curve);
    ref = reference_boundary_spectrum(ReferenceSource::sphere(R), c.jmax).values;
    r.reference_note = "sphere reference ((k+1)/R)^2, R = " + fmt(R);
  } else {
    ref = reference_boundary_spectrum(ReferenceSource::circle(curve.length()), c.jmax).values;
    r.reference_note = "circle reference ((k+1/2) 2 pi / length)^2, length = " + fmt(curve.length());
  }
  for (double m : c.m_list) {
    StudyRow row{m, {}, ref, {}};
    row.values = at_point("m", m, [&] {
      if (c.backend == Backend::Fem) return fem_values(solve_bag(curve, m, c.jmax, fem_options(c)), c.jmax, row.flags);
      const RadialProblem p = radial(round_radius(curve), m, c.jmax, c.channels);
      const RadialSpectrum s = ball ? ball_mit_spectrum(p) : disk_mit_spectrum(p);
      row.flags = s.flags;
      return first_values(s.squares, c.jmax);
    });
    r.rows.push_back(std::move(row));
  }
  r.assertions.push_back(strictly_decreasing(r, "gap_1 strictly decreasing"));
  r.assertions.push_back(final_gap_below(r, ball ? kT1BallFinalGap : kT1DiskFinalGap));
  r.assertions.push_back(above_reference(r));
  return r;
}

std::vector<double> jump_values(const StudyConfig& c, const ClosedCurve& curve, double m, double M,
                                std::vector<std::string>& flags) {
  if (c.backend == Backend::Fem) return fem_values(solve_jump(curve, m, M, c.jmax, fem_options(c)), c.jmax, flags);
  RadialProblem p = radial(round_radius(curve), m, c.jmax, c.channels);
  p.M = M;
  const RadialSpectrum s = disk_jump_spectrum(p);
  flags = s.flags;
  return first_values(s.squares, c.jmax);
}

StudyReport run_t2(const StudyConfig& c) {
  check_sweep(c.M_list, "M_list");
  const ClosedCurve curve = parse_curve_spec(c.curve);
  StudyReport r;
  r.study = "T2";
  r.param_name = "M";
  r.value_name = "E";
  std::vector<std::string> ref_flags;
  std::vector<double> ref = at_point("m", c.m, [&] {
    if (c.backend == Backend::Fem) return fem_values(solve_bag(curve, c.m, c.jmax, fem_options(c)), c.jmax, ref_flags);
    const RadialSpectrum s = disk_mit_spectrum(radial(round_radius(curve), c.m, c.jmax, c.channels));
    return first_values(s.squares, c.jmax);
  });
  r.reference_note = std::string(c.backend == Backend::Fem ? "finest-mesh FEM" : "exact") + " bag eigenvalues at m = " + fmt(c.m);
  for (double M : c.M_list) {
    StudyRow row{M, {}, ref, {}};
    row.values = at_point("M", M, [&] { return jump_values(c, curve, c.m, M, row.flags); });
    r.rows.push_back(std::move(row));
  }
  Assertion below{"every value < M^2", true, ""};
  for (const auto& row : r.rows)
    for (double v : row.values)
      if (!(v < row.param * row.param)) below.pass = false;
  r.assertions.push_back(below);
  return r;
}

StudyReport run_t3(const StudyConfig& c) {
  check_sweep(c.M_list, "M_list");
  if (!(c.coupling_p > 0.0 && c.coupling_p < 1.0)) throw DomainError("study: coupling exponent p must lie in (0, 1)");
  const ClosedCurve curve = parse_curve_spec(c.curve);
  StudyReport r;
  r.study = c.mirrored ? "T3-mirrored" : "T3";
  r.param_name = "M";
  r.value_name = "E";
  const auto ref = reference_boundary_spectrum(ReferenceSource::circle(curve.length()), c.jmax).values;
  r.reference_note = (c.mirrored ? "m = +M^p, exterior mass -M, p = " : "m = -M^p, p = ") + fmt(c.coupling_p) +
                     "; circle reference, length = " + fmt(curve.length());
  for (double M : c.M_list) {
    const double mag = std::pow(std::fabs(M), c.coupling_p);
    const double m = c.mirrored ? mag : -mag;
    const double Mext = c.mirrored ? -std::fabs(M) : std::fabs(M);
    StudyRow row{M, {}, ref, {}};
    row.values = at_point("M", M, [&] { return jump_values(c, curve, m, Mext, row.flags); });
    r.rows.push_back(std::move(row));
  }
  r.assertions.push_back(strictly_decreasing(r, "gap_1 strictly decreasing"));
  return r;
}

StudyReport run_lichnerowicz(const StudyConfig& c) {
  std::vector<double> grids(c.ngrid_list.begin(), c.ngrid_list.end());
  check_sweep(grids, "ngrid_list");
  const ClosedCurve curve = parse_curve_spec(c.curve);
  BoundaryScheme scheme;
  if (c.scheme == "fourier") scheme = BoundaryScheme::Fourier;
  else if (c.scheme == "fd2") scheme = BoundaryScheme::Fd2;
  else throw DomainError("study: scheme must be fourier or fd2");
  StudyReport r;
  r.study = "lichnerowicz";
  r.param_name = "ngrid";
  r.value_name = "residual";
  r.reference_note = curve.describe() + ", scheme " + c.scheme;
  for (int n : c.ngrid_list) {
    StudyRow row{static_cast<double>(n), {}, {0.0}, {}};
    row.values = {at_point("ngrid", n, [&] { return lichnerowicz_residual(discretize_boundary(curve, n, scheme)); })};
    r.rows.push_back(std::move(row));
  }
  if (scheme == BoundaryScheme::Fourier) {
    Assertion a{"residual <= 1e-10", true, ""};
    for (const auto& row : r.rows) {
      a.detail += fmt(row.values[0]) + " ";
      if (!(row.values[0] <= kLichFourierTol)) a.pass = false;
    }
    r.assertions.push_back(a);
  } else {
    Assertion a{"residual ratio per doubling in [3.5, 4.5]", true, ""};
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
      const double ratio = r.rows[i - 1].values[0] / r.rows[i].values[0];
      a.detail += fmt(ratio) + " ";
      if (r.rows[i].param != 2.0 * r.rows[i - 1].param) continue;
      if (!(ratio >= kLichFd2RatioLo && ratio <= kLichFd2RatioHi)) a.pass = false;
    }
    r.assertions.push_back(a);
  }
  return r;
}

std::vector<double> richardson_L(const ClosedCurve& curve, int n, int j) {
  const Eigen::VectorXd a = hermitian_eigenvalues(assemble_L(discretize_boundary(curve, n, BoundaryScheme::Fd2)));
  const Eigen::VectorXd b = hermitian_eigenvalues(assemble_L(discretize_boundary(curve, 2 * n, BoundaryScheme::Fd2)));
  std::vector<double> out(j);
  for (int i = 0; i < j; ++i) out[i] = (4.0 * b(i) - a(i)) / 3.0;
  return out;
}

StudyReport run_length(const StudyConfig& c) {
  const ClosedCurve curve = parse_curve_spec(c.curve);
  const ClosedCurve circle = ClosedCurve::circle(curve.length() / (2.0 * std::numbers::pi));
  StudyReport r;
  r.study = "length-invariance";
  r.param_name = "j";
  r.value_name = "E";
  r.reference_note = "circle of equal length " + fmt(curve.length()) + "; fd2 Richardson from ngrid " +
                     std::to_string(c.ngrid) + " and " + std::to_string(2 * c.ngrid);
  const auto e = richardson_L(curve, c.ngrid, c.jmax);
  const auto ref = richardson_L(circle, c.ngrid, c.jmax);
  Assertion a{"relative difference < 1e-3", true, ""};
  double worst = 0.0;
  for (int j = 0; j < c.jmax; ++j) {
    r.rows.push_back({static_cast<double>(j + 1), {e[j]}, {ref[j]}, {}});
    worst = std::max(worst, std::fabs(e[j] - ref[j]) / std::fabs(ref[j]));
  }
  a.pass = worst < kLengthRelTol;
  a.detail = "max relative difference " + fmt(worst);
  r.assertions.push_back(a);
  return r;
}

}  // namespace

StudyKind parse_study_kind(const std::string& s) {
  if (s == "T1") return StudyKind::T1;
  if (s == "T2") return StudyKind::T2;
  if (s == "T3") return StudyKind::T3;
  if (s == "T1-ball") return StudyKind::T1Ball;
  if (s == "lichnerowicz") return StudyKind::Lichnerowicz;
  if (s == "length-invariance") return StudyKind::LengthInvariance;
  throw DomainError("unknown study '" + s + "' (T1, T2, T3, T1-ball, lichnerowicz, length-invariance)");
}

std::string study_name(StudyKind k) {
  switch (k) {
    case StudyKind::T1: return "T1";
    case StudyKind::T2: return "T2";
    case StudyKind::T3: return "T3";
    case StudyKind::T1Ball: return "T1-ball";
    case StudyKind::Lichnerowicz: return "lichnerowicz";
    case StudyKind::LengthInvariance: return "length-invariance";
  }
  return "";
}

Backend parse_backend(const std::string& s) {
  if (s == "exact") return Backend::Exact;
  if (s == "fem") return Backend::Fem;
  throw DomainError("unknown backend '" + s + "' (exact, fem)");
}

StudyConfig default_study(StudyKind kind) {
  StudyConfig c;
  c.kind = kind;
  switch (kind) {
    case StudyKind::T1:
    case StudyKind::T1Ball: c.m_list = {-4, -8, -16, -32, -64}; break;
    case StudyKind::T2: c.M_list = {8, 16, 32, 64, 128}; break;
    case StudyKind::T3: c.M_list = {16, 64, 256}; break;
    case StudyKind::Lichnerowicz: c.ngrid_list = {128, 256, 512}; break;
    case StudyKind::LengthInvariance:
      c.curve = "ellipse 2 1";
      c.jmax = 6;
      break;
  }
  return c;
}

std::vector<double> StudyRow::gaps() const {
  std::vector<double> g(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) g[i] = std::fabs(values[i] - (i < reference.size() ? reference[i] : 0.0));
  return g;
}

bool StudyReport::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(std::fabs(x[i]) > 0.0 && y[i] > 0.0)) continue;
    const double lx = std::log(std::fabs(x[i])), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::nan("");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

StudyReport run_study(const StudyConfig& c) {
  if (c.jmax < 1) throw DomainError("study: jmax must be positive");
  StudyReport r;
  switch (c.kind) {
    case StudyKind::T1: r = run_t1(c, false); break;
    case StudyKind::T1Ball: r = run_t1(c, true); break;
    case StudyKind::T2: r = run_t2(c); break;
    case StudyKind::T3: r = run_t3(c); break;
    case StudyKind::Lichnerowicz: r = run_lichnerowicz(c); break;
    case StudyKind::LengthInvariance: r = run_length(c); break;
  }
  if (c.kind == StudyKind::T1 || c.kind == StudyKind::T1Ball || c.kind == StudyKind::T2 || c.kind == StudyKind::T3) {
    const std::size_t j = r.rows.front().values.size();
    for (std::size_t k = 0; k < j; ++k) {
      std::vector<double> x, y;
      for (const auto& row : r.rows) {
        x.push_back(row.param);
        y.push_back(row.gaps()[k]);
      }
      r.slopes.push_back(loglog_slope(x, y));
    }
  }
  if (c.kind == StudyKind::T2) {
    const double rate = -r.slopes.at(0);
    r.assertions.push_back({"decay exponent of gap_1 in [0.8, 1.25]", rate >= kT2RateLo && rate <= kT2RateHi,
                            "exponent " + fmt(rate)});
  }
  return r;
}

CsvTable report_table(const StudyReport& r) {
  CsvTable t;
  if (r.rows.empty()) throw std::invalid_argument("study: empty report");
  const std::size_t j = r.rows.front().values.size();
  t.header.push_back(r.param_name);
  for (std::size_t k = 1; k <= j; ++k) t.header.push_back(r.value_name + "_" + std::to_string(k));
  for (std::size_t k = 1; k <= j; ++k) t.header.push_back("reference_" + std::to_string(k));
  for (std::size_t k = 1; k <= j; ++k) t.header.push_back("gap_" + std::to_string(k));
  t.header.push_back("flags");
  for (const auto& row : r.rows) {
    std::vector<std::string> cells{fmt(row.param)};
    const auto g = row.gaps();
    for (std::size_t k = 0; k < j; ++k) cells.push_back(fmt(row.values[k]));
    for (std::size_t k = 0; k < j; ++k) cells.push_back(fmt(k < row.reference.size() ? row.reference[k] : 0.0));
    for (std::size_t k = 0; k < j; ++k) cells.push_back(fmt(g[k]));
    std::string flags;
    for (const auto& f : row.flags) flags += (flags.empty() ? "" : ";") + f;
    cells.push_back(flags);
    t.add_row(std::move(cells));
  }
  return t;
}

void emit_csv(const StudyReport& r, const std::string& path) { write_csv(report_table(r), path); }

void emit_svg(const StudyReport& r, const std::string& path) {
  if (r.rows.empty()) throw std::invalid_argument("study: empty report");
  std::vector<SvgSeries> series;
  const std::size_t j = r.rows.front().values.size();
  for (std::size_t k = 0; k < j; ++k) {
    SvgSeries s{"gap_" + std::to_string(k + 1), {}, {}};
    for (const auto& row : r.rows) {
      s.x.push_back(std::fabs(row.param));
      s.y.push_back(row.gaps()[k]);
    }
    series.push_back(std::move(s));
  }
  write_loglog_svg(series, r.study, "|" + r.param_name + "|", "gap", path);
}

}  // namespace diracml

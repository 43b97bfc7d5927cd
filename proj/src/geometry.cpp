#include "diracml/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "diracml/errors.hpp"

namespace diracml {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 5-point Gauss-Legendre on [-1, 1]
constexpr std::array<double, 5> kGlx = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                        0.9061798459386640};
constexpr std::array<double, 5> kGlw = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                        0.4786286704993665, 0.2369268850561891};

Eigen::Matrix2d rotation(double a) {
  Eigen::Matrix2d r;
  r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return r;
}

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_cross(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2, const Eigen::Vector2d& q1,
                    const Eigen::Vector2d& q2) {
  const double d1 = cross(p2 - p1, q1 - p1), d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1), d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace

ClosedCurve ClosedCurve::circle(double radius, Eigen::Vector2d center) {
  if (!(radius > 0.0)) throw GeometryError("circle: radius must be positive");
  ClosedCurve c;
  c.kind_ = Kind::Circle;
  c.params_ = {radius};
  c.center_ = center;
  c.finalize(1024);
  return c;
}

ClosedCurve ClosedCurve::ellipse(double a, double b, Eigen::Vector2d center) {
  if (!(a > 0.0 && b > 0.0)) throw GeometryError("ellipse: semi-axes must be positive");
  ClosedCurve c;
  c.kind_ = Kind::Ellipse;
  c.params_ = {a, b};
  c.center_ = center;
  c.finalize(1024);
  return c;
}

ClosedCurve ClosedCurve::fourier(std::vector<FourierTerm> terms, int table_size) {
  if (terms.empty()) throw GeometryError("fourier: no coefficients");
  for (const auto& t : terms)
    if (t.k < 0) throw GeometryError("fourier: negative wavenumber");
  ClosedCurve c;
  c.kind_ = Kind::Fourier;
  c.terms_ = std::move(terms);
  c.finalize(table_size);
  return c;
}

ClosedCurve ClosedCurve::rotated(double angle) const {
  ClosedCurve c = *this;
  c.center_ = rotation(angle) * center_;
  c.rotation_ = rotation_ + angle;
  return c;
}

std::string ClosedCurve::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::Circle: os << "circle " << params_[0]; break;
    case Kind::Ellipse: os << "ellipse " << params_[0] << ' ' << params_[1]; break;
    case Kind::Fourier: os << "fourier (" << terms_.size() << " terms)"; break;
  }
  return os.str();
}

Eigen::Vector2d ClosedCurve::point_t(double t) const {
  Eigen::Vector2d base;
  switch (kind_) {
    case Kind::Circle: base << params_[0] * std::cos(t), params_[0] * std::sin(t); break;
    case Kind::Ellipse: base << params_[0] * std::cos(t), params_[1] * std::sin(t); break;
    case Kind::Fourier:
      base.setZero();
      for (const auto& f : terms_) {
        const double c = std::cos(f.k * t), s = std::sin(f.k * t);
        base.x() += f.ax * c + f.bx * s;
        base.y() += f.ay * c + f.by * s;
      }
      break;
  }
  return center_ + rotation(rotation_) * base;
}

Eigen::Vector2d ClosedCurve::d1_t(double t) const {
  Eigen::Vector2d base;
  switch (kind_) {
    case Kind::Circle: base << -params_[0] * std::sin(t), params_[0] * std::cos(t); break;
    case Kind::Ellipse: base << -params_[0] * std::sin(t), params_[1] * std::cos(t); break;
    case Kind::Fourier:
      base.setZero();
      for (const auto& f : terms_) {
        const double c = std::cos(f.k * t), s = std::sin(f.k * t);
        base.x() += f.k * (-f.ax * s + f.bx * c);
        base.y() += f.k * (-f.ay * s + f.by * c);
      }
      break;
  }
  return rotation(rotation_) * base;
}

Eigen::Vector2d ClosedCurve::d2_t(double t) const {
  Eigen::Vector2d base;
  switch (kind_) {
    case Kind::Circle: base << -params_[0] * std::cos(t), -params_[0] * std::sin(t); break;
    case Kind::Ellipse: base << -params_[0] * std::cos(t), -params_[1] * std::sin(t); break;
    case Kind::Fourier:
      base.setZero();
      for (const auto& f : terms_) {
        const double c = std::cos(f.k * t), s = std::sin(f.k * t);
        const double k2 = static_cast<double>(f.k) * f.k;
        base.x() -= k2 * (f.ax * c + f.bx * s);
        base.y() -= k2 * (f.ay * c + f.by * s);
      }
      break;
  }
  return rotation(rotation_) * base;
}

double ClosedCurve::curvature_t(double t) const {
  const Eigen::Vector2d d1 = d1_t(t), d2 = d2_t(t);
  const double sp = d1.norm();
  return cross(d1, d2) / (sp * sp * sp);
}

Eigen::Vector2d ClosedCurve::normal_t(double t) const {
  const Eigen::Vector2d d1 = d1_t(t).normalized();
  return {d1.y(), -d1.x()};
}

Eigen::Vector2d ClosedCurve::tangent(double s) const { return d1_t(param_of(s)).normalized(); }

double ClosedCurve::arclength_at(double t) const {
  const int n = static_cast<int>(table_.size()) - 1;
  const double h = kTwoPi / n;
  const double tc = std::clamp(t, 0.0, kTwoPi);
  const int i = std::min(static_cast<int>(tc / h), n - 1);
  const double t0 = i * h;
  const double half = 0.5 * (tc - t0);
  double acc = 0.0;
  for (std::size_t q = 0; q < kGlx.size(); ++q) acc += kGlw[q] * d1_t(t0 + half * (1.0 + kGlx[q])).norm();
  return table_[static_cast<std::size_t>(i)] + half * acc;
}

double ClosedCurve::param_of(double s) const {
  double sm = std::fmod(s, length_);
  if (sm < 0.0) sm += length_;
  const auto it = std::upper_bound(table_.begin(), table_.end(), sm);
  const int n = static_cast<int>(table_.size()) - 1;
  const int i = std::clamp(static_cast<int>(it - table_.begin()) - 1, 0, n - 1);
  const double h = kTwoPi / n;
  const double s0 = table_[static_cast<std::size_t>(i)], s1 = table_[static_cast<std::size_t>(i + 1)];
  double t = (i + (sm - s0) / (s1 - s0)) * h;
  for (int it2 = 0; it2 < 8; ++it2) {
    const double dt = (arclength_at(t) - sm) / d1_t(t).norm();
    t -= dt;
    if (std::fabs(dt) < 1e-15) break;
  }
  return t;
}

double ClosedCurve::signed_area() const {
  const int n = 2048;
  double a = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = kTwoPi * i / n;
    a += cross(point_t(t), d1_t(t));
  }
  return 0.5 * a * kTwoPi / n;
}

Eigen::Vector2d ClosedCurve::centroid() const {
  const int n = 2048;
  Eigen::Vector2d m = Eigen::Vector2d::Zero();
  double a = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = kTwoPi * i / n;
    const Eigen::Vector2d p = point_t(t), d = d1_t(t);
    const double w = cross(p, d);
    a += w;
    m += w * p;
  }
  return m * (2.0 / 3.0) / a;
}

double ClosedCurve::circumradius() const {
  const Eigen::Vector2d c = centroid();
  double r = 0.0;
  for (int i = 0; i < 2048; ++i) r = std::max(r, (point_t(kTwoPi * i / 2048) - c).norm());
  return r;
}

double ClosedCurve::project(const Eigen::Vector2d& p) const {
  const int n = 512;
  double best = 0.0, bd = 1e300;
  for (int i = 0; i < n; ++i) {
    const double t = kTwoPi * i / n;
    const double d = (point_t(t) - p).squaredNorm();
    if (d < bd) {
      bd = d;
      best = t;
    }
  }
  double t = best;
  for (int it = 0; it < 30; ++it) {
    const Eigen::Vector2d r = point_t(t) - p, d1 = d1_t(t), d2 = d2_t(t);
    const double f = r.dot(d1), fp = d1.squaredNorm() + r.dot(d2);
    const double step = fp > 0.0 ? f / fp : f / d1.squaredNorm();
    t -= std::clamp(step, -0.1, 0.1);
    if (std::fabs(step) < 1e-15) break;
  }
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return arclength_at(t);
}

void ClosedCurve::finalize(int table_size) {
  if (table_size < 16) throw GeometryError("curve: arclength table too small");
  const double h = kTwoPi / table_size;
  table_.assign(static_cast<std::size_t>(table_size) + 1, 0.0);
  for (int i = 0; i < table_size; ++i) {
    const double t0 = i * h;
    double acc = 0.0;
    for (std::size_t q = 0; q < kGlx.size(); ++q) acc += kGlw[q] * d1_t(t0 + 0.5 * h * (1.0 + kGlx[q])).norm();
    table_[static_cast<std::size_t>(i + 1)] = table_[static_cast<std::size_t>(i)] + 0.5 * h * acc;
  }
  length_ = table_.back();

  max_abs_kappa_ = 0.0;
  max_neg_kappa_ = 0.0;
  const int ns = 4 * table_size;
  for (int i = 0; i < ns; ++i) {
    const double t = kTwoPi * i / ns;
    if (d1_t(t).norm() < 1e-12) throw GeometryError("curve: singular parametrisation (zero speed)");
    const double k = curvature_t(t);
    max_abs_kappa_ = std::max(max_abs_kappa_, std::fabs(k));
    max_neg_kappa_ = std::max(max_neg_kappa_, -k);
  }
  if (signed_area() <= 0.0) throw GeometryError("curve: orientation must be counterclockwise");

  const int np = 256;
  std::vector<Eigen::Vector2d> poly(np);
  for (int i = 0; i < np; ++i) poly[static_cast<std::size_t>(i)] = point_t(kTwoPi * i / np);
  for (int i = 0; i < np; ++i)
    for (int j = i + 2; j < np; ++j) {
      if (i == 0 && j == np - 1) continue;
      if (segments_cross(poly[static_cast<std::size_t>(i)], poly[static_cast<std::size_t>(i + 1)],
                         poly[static_cast<std::size_t>(j)], poly[static_cast<std::size_t>((j + 1) % np)]))
        throw GeometryError("curve: self-intersection detected");
    }
}

std::vector<FourierTerm> load_fourier_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError("cannot open fourier coefficient file: " + path);
  std::vector<FourierTerm> terms;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const char c = line[first];
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.')) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream is(line);
    FourierTerm t;
    if (!(is >> t.k >> t.ax >> t.bx >> t.ay >> t.by)) throw GeometryError("malformed fourier row: " + line);
    terms.push_back(t);
  }
  return terms;
}

ClosedCurve parse_curve_spec(const std::string& spec) {
  std::istringstream is(spec);
  std::string kind;
  is >> kind;
  if (kind == "circle") {
    double r = 0.0;
    if (!(is >> r)) throw GeometryError("curve spec: expected `circle R`");
    return ClosedCurve::circle(r);
  }
  if (kind == "ellipse") {
    double a = 0.0, b = 0.0;
    if (!(is >> a >> b)) throw GeometryError("curve spec: expected `ellipse a b`");
    return ClosedCurve::ellipse(a, b);
  }
  if (kind == "fourier") {
    std::string path;
    if (!(is >> path)) throw GeometryError("curve spec: expected `fourier <path>`");
    return ClosedCurve::fourier(load_fourier_csv(path));
  }
  throw GeometryError("unknown curve kind: " + kind);
}

UniformSample sample_uniform(const ClosedCurve& c, int n) {
  if (n < 3) throw GeometryError("sample_uniform: need at least 3 nodes");
  UniformSample u;
  u.h = c.length() / n;
  for (int j = 0; j < n; ++j) {
    const double s = j * u.h;
    const double t = c.param_of(s);
    u.s.push_back(s);
    u.t.push_back(t);
    u.kappa.push_back(c.curvature_t(t));
    u.point.push_back(c.point_t(t));
    u.tangent.push_back(c.d1_t(t).normalized());
    u.normal.push_back(c.normal_t(t));
  }
  return u;
}

TubularChart::TubularChart(const ClosedCurve& c, Side side, double delta) : curve_(&c), side_(side), delta_(delta) {
  if (!(delta > 0.0)) throw GeometryError("tubular: width must be positive");
  if (side == Side::Interior) {
    if (delta >= 0.9 / c.max_abs_curvature()) throw GeometryError("tubular: interior width exceeds 0.9/max|kappa|");
  } else if (c.max_negative_curvature() > 0.0 && delta >= 0.9 / c.max_negative_curvature()) {
    throw GeometryError("tubular: exterior width exceeds 0.9/max(-kappa)");
  }
}

Eigen::Vector2d TubularChart::map(double s, double t) const {
  const double tp = curve_->param_of(s);
  const double sign = side_ == Side::Interior ? -1.0 : 1.0;
  return curve_->point_t(tp) + sign * t * curve_->normal_t(tp);
}

double TubularChart::weight(double s, double t) const {
  const double k = curve_->curvature(s);
  return side_ == Side::Interior ? 1.0 - t * k : 1.0 + t * k;
}

}  // namespace diracml

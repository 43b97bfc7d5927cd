#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace diracml {

struct FourierTerm {
  int k = 0;
  double ax = 0.0, bx = 0.0, ay = 0.0, by = 0.0;  // x += ax cos kt + bx sin kt, y likewise
};

/// Smooth simple closed planar curve, counterclockwise, parametrised by
/// t in [0, 2 pi) and by arclength s in [0, length()).
///
/// Normal points out of the enclosed region; curvature is positive on convex
/// arcs (unit circle: kappa = 1).
class ClosedCurve {
 public:
  enum class Kind { Circle, Ellipse, Fourier };

  static ClosedCurve circle(double radius, Eigen::Vector2d center = Eigen::Vector2d::Zero());
  static ClosedCurve ellipse(double a, double b, Eigen::Vector2d center = Eigen::Vector2d::Zero());
  static ClosedCurve fourier(std::vector<FourierTerm> terms, int table_size = 1024);

  /// Same curve after rigid rotation about the origin.
  ClosedCurve rotated(double angle) const;

  Kind kind() const { return kind_; }
  const std::vector<double>& shape_params() const { return params_; }
  const std::vector<FourierTerm>& fourier_terms() const { return terms_; }
  std::string describe() const;

  // raw parametrisation
  Eigen::Vector2d point_t(double t) const;
  Eigen::Vector2d d1_t(double t) const;
  Eigen::Vector2d d2_t(double t) const;
  double curvature_t(double t) const;
  Eigen::Vector2d normal_t(double t) const;
  double arclength_at(double t) const;  // s(t), t in [0, 2 pi]

  // arclength parametrisation (s taken modulo length())
  double length() const { return length_; }
  double param_of(double s) const;  // t(s)
  Eigen::Vector2d point(double s) const { return point_t(param_of(s)); }
  Eigen::Vector2d tangent(double s) const;
  Eigen::Vector2d normal(double s) const { return normal_t(param_of(s)); }
  double curvature(double s) const { return curvature_t(param_of(s)); }

  double max_abs_curvature() const { return max_abs_kappa_; }
  double max_negative_curvature() const { return max_neg_kappa_; }  // max(-kappa)_+
  double signed_area() const;
  double circumradius() const;  // max |point - centroid of samples|
  Eigen::Vector2d centroid() const;

  /// Arclength parameter of the closest curve point.
  double project(const Eigen::Vector2d& p) const;

 private:
  ClosedCurve() = default;
  void finalize(int table_size);

  Kind kind_ = Kind::Circle;
  std::vector<double> params_;
  std::vector<FourierTerm> terms_;
  Eigen::Vector2d center_ = Eigen::Vector2d::Zero();
  double rotation_ = 0.0;
  std::vector<double> table_;  // cumulative arclength at t_i = 2 pi i / n
  double length_ = 0.0;
  double max_abs_kappa_ = 0.0;
  double max_neg_kappa_ = 0.0;
};

/// `circle R`, `ellipse a b`, or `fourier <csv path>`.
ClosedCurve parse_curve_spec(const std::string& spec);
/// Rows `k, ax, bx, ay, by`; lines that do not start with a number are skipped.
std::vector<FourierTerm> load_fourier_csv(const std::string& path);

struct UniformSample {
  std::vector<double> s, t, kappa;
  std::vector<Eigen::Vector2d> point, tangent, normal;
  double h = 0.0;
};

/// n nodes at s_j = j * length / n.
UniformSample sample_uniform(const ClosedCurve& c, int n);

enum class Side { Interior, Exterior };

/// (s, t) -> c(s) - t nu(s) inside, c(s) + t nu(s) outside; weight
/// phi = 1 - t kappa inside and 1 + t kappa outside.
class TubularChart {
 public:
  TubularChart(const ClosedCurve& c, Side side, double delta);
  Eigen::Vector2d map(double s, double t) const;
  double weight(double s, double t) const;
  Side side() const { return side_; }
  double delta() const { return delta_; }

 private:
  const ClosedCurve* curve_;
  Side side_;
  double delta_;
};

}  // namespace diracml

#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "diracml/geometry.hpp"

namespace diracml {

/// Geometric grading of rows parallel to the curve: first row thickness
/// `first`, growth `ratio`, capped at the target size h, total `width`.
struct LayerSpec {
  double width = 0.0;
  double ratio = 1.2;
  double first = 0.0;
};

/// width 3/|m|, ratio 1.2, first row 0.1/m^2.
LayerSpec default_layer(double m);

enum class MeshProblem { Bag, Jump };

struct MeshOptions {
  MeshProblem problem = MeshProblem::Bag;
  double box_half_width = 0.0;          // jump: truncation at distance box - circumradius from the curve
  std::optional<LayerSpec> layer;       // interior side of the curve
  std::optional<LayerSpec> outer_layer; // jump: exterior rows; width is ignored
};

struct Mesh2D {
  explicit Mesh2D(ClosedCurve c) : curve(std::move(c)) {}

  ClosedCurve curve;
  MeshProblem problem = MeshProblem::Bag;
  std::vector<Eigen::Vector2d> vertices;
  std::vector<std::array<int, 3>> triangles;  // counterclockwise
  std::vector<char> exterior;                 // per triangle, jump meshes
  std::vector<char> graded;                   // per triangle, inside a tubular row band
  std::vector<int> boundary_nodes;            // nodes on the curve, increasing s
  std::vector<double> boundary_s;
  std::vector<int> dirichlet_nodes;
  std::optional<LayerSpec> layer;
  double h = 0.0;  // longest edge

  // tubular coordinates of row nodes (side 0: none, 1: interior, 2: exterior)
  std::vector<double> chart_s, chart_t;
  std::vector<char> chart_side;

  bool interface() const { return problem == MeshProblem::Jump; }
};

struct MeshQuality {
  double min_angle_deg = 0.0;      // over core (ungraded) triangles
  int worst_triangle = -1;
  double min_angle_all_deg = 0.0;  // including graded rows
  double area = 0.0;
  double min_normal_edge = 0.0;    // thinnest row
};

Mesh2D build_mesh(const ClosedCurve& curve, double h, const MeshOptions& opt = {});

/// Regular 1:4 subdivision; edge midpoints between row nodes go through the
/// tubular chart, so curve nodes stay on the curve.
Mesh2D refine_uniform(const Mesh2D& mesh);

MeshQuality mesh_quality(const Mesh2D& mesh);

void write_mesh(const Mesh2D& mesh, const std::string& path);
Mesh2D read_mesh(const std::string& path, const ClosedCurve& curve);

}  // namespace diracml

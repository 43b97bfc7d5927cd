#include "diracml/mesh2d.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "diracml/errors.hpp"

namespace diracml {

namespace {

constexpr char kNoChart = 0, kInside = 1, kOutside = 2;

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

double signed_area(const Mesh2D& m, const std::array<int, 3>& t) {
  const auto& a = m.vertices[t[0]];
  return 0.5 * cross(m.vertices[t[1]] - a, m.vertices[t[2]] - a);
}

// Row offsets 0 = t_0 < t_1 < ... < t_L = width.
std::vector<double> row_offsets(double first, double ratio, double cap, double width) {
  if (!(first > 0.0) || !(ratio >= 1.0) || !(width > 0.0)) throw DomainError("mesh: invalid layer specification");
  std::vector<double> t{0.0};
  double d = std::min(first, cap);
  while (t.back() + 1.5 * d < width) {
    t.push_back(t.back() + d);
    d = std::min(d * ratio, cap);
  }
  t.push_back(width);
  return t;
}

Eigen::Vector2d chart_point(const ClosedCurve& c, double s, double t, char side) {
  const double tp = c.param_of(s);
  const double sign = side == kOutside ? 1.0 : -1.0;
  return c.point_t(tp) + sign * t * c.normal_t(tp);
}

double edge_length(const Mesh2D& m, int a, int b) { return (m.vertices[a] - m.vertices[b]).norm(); }

void finish_h(Mesh2D& m) {
  m.h = 0.0;
  for (const auto& t : m.triangles)
    for (int e = 0; e < 3; ++e) m.h = std::max(m.h, edge_length(m, t[e], t[(e + 1) % 3]));
}

void check_orientation(const Mesh2D& m) {
  for (std::size_t i = 0; i < m.triangles.size(); ++i) {
    if (!(signed_area(m, m.triangles[i]) > 0.0)) {
      std::ostringstream os;
      os << "mesh: triangle " << i << " is inverted or degenerate at (" << m.vertices[m.triangles[i][0]].transpose()
         << "); the core map requires a domain star-shaped about the centroid";
      throw GeometryError(os.str());
    }
  }
}

double min_angle_deg(const Mesh2D& m, const std::array<int, 3>& t) {
  double best = 180.0;
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector2d u = m.vertices[t[(k + 1) % 3]] - m.vertices[t[k]];
    const Eigen::Vector2d v = m.vertices[t[(k + 2) % 3]] - m.vertices[t[k]];
    best = std::min(best, std::atan2(std::fabs(cross(u, v)), u.dot(v)) * 180.0 / std::numbers::pi);
  }
  return best;
}

}  // namespace

LayerSpec default_layer(double m) {
  const double a = std::fabs(m);
  if (!(a > 0.0)) throw DomainError("default_layer: mass must be nonzero");
  return {3.0 / a, 1.2, 0.1 / (a * a)};
}

Mesh2D build_mesh(const ClosedCurve& curve, double h, const MeshOptions& opt) {
  const double len = curve.length();
  if (!(h > 0.0) || h > len / 12.0) throw DomainError("build_mesh: h must lie in (0, length/12]");
  if (opt.problem == MeshProblem::Jump && !(opt.box_half_width >= 2.0 * curve.circumradius()))
    throw DomainError("build_mesh: box half width must be at least twice the circumradius");

  Mesh2D m(curve);
  m.problem = opt.problem;
  m.layer = opt.layer;
  const int nr = std::max(2, static_cast<int>(std::ceil(len / (6.0 * h))));
  const int n = 6 * nr;

  auto add_vertex = [&m](const Eigen::Vector2d& p, double s, double t, char side) {
    m.vertices.push_back(p);
    m.chart_s.push_back(s);
    m.chart_t.push_back(t);
    m.chart_side.push_back(side);
    return static_cast<int>(m.vertices.size()) - 1;
  };
  auto add_tri = [&m](int a, int b, int c, bool ext, bool graded) {
    m.triangles.push_back({a, b, c});
    m.exterior.push_back(ext);
    m.graded.push_back(graded);
  };

  // rows parallel to the curve on one side; row 0 is shared
  auto build_rows = [&](const std::vector<double>& offs, char side, const std::vector<int>& row0) {
    std::vector<int> prev = row0;
    for (std::size_t l = 1; l < offs.size(); ++l) {
      std::vector<int> row(n);
      for (int j = 0; j < n; ++j) {
        const double s = j * len / n;
        row[j] = add_vertex(chart_point(curve, s, offs[l], side), s, offs[l], side);
      }
      for (int j = 0; j < n; ++j) {
        const int a = prev[j], b = prev[(j + 1) % n], c = row[(j + 1) % n], d = row[j];
        const bool ext = side == kOutside;
        if (ext) {
          add_tri(a, c, b, true, true);
          add_tri(a, d, c, true, true);
        } else {
          add_tri(a, b, c, false, true);
          add_tri(a, c, d, false, true);
        }
      }
      prev = std::move(row);
    }
    return prev;
  };

  std::vector<int> boundary(n);
  for (int j = 0; j < n; ++j) {
    const double s = j * len / n;
    boundary[j] = add_vertex(curve.point(s), s, 0.0, kInside);
    m.boundary_nodes.push_back(boundary[j]);
    m.boundary_s.push_back(s);
  }

  double w = 0.0;
  std::vector<int> outer_ring = boundary;
  if (opt.layer) {
    TubularChart chart(curve, Side::Interior, opt.layer->width);
    w = opt.layer->width;
    outer_ring = build_rows(row_offsets(opt.layer->first, opt.layer->ratio, h, w), kInside, boundary);
  }

  // core: hexagonal rings mapped to scaled copies of the inner row curve
  const Eigen::Vector2d center = curve.centroid();
  std::vector<int> prev{add_vertex(center, 0.0, 0.0, kNoChart)};
  for (int r = 1; r <= nr; ++r) {
    const int cnt = 6 * r;
    std::vector<int> ring(cnt);
    if (r == nr) {
      ring = outer_ring;
    } else {
      for (int j = 0; j < cnt; ++j) {
        const double s = static_cast<double>(j) / cnt * len;
        const Eigen::Vector2d g = w > 0.0 ? chart_point(curve, s, w, kInside) : curve.point(s);
        ring[j] = add_vertex(center + (static_cast<double>(r) / nr) * (g - center), 0.0, 0.0, kNoChart);
      }
    }
    if (r == 1) {
      for (int j = 0; j < 6; ++j) add_tri(prev[0], ring[j], ring[(j + 1) % 6], false, false);
    } else {
      const long a = static_cast<long>(prev.size()), b = cnt;
      long i = 0, j = 0;
      while (i < a || j < b) {
        if (j < b && (i == a || (j + 1) * a <= (i + 1) * b)) {
          add_tri(prev[i % a], ring[j], ring[(j + 1) % b], false, false);
          ++j;
        } else {
          add_tri(prev[i], ring[j % b], prev[(i + 1) % a], false, false);
          ++i;
        }
      }
    }
    prev = std::move(ring);
  }

  if (opt.problem == MeshProblem::Jump) {
    const double width = opt.box_half_width - curve.circumradius();
    TubularChart chart(curve, Side::Exterior, width);
    const LayerSpec ol = opt.outer_layer.value_or(LayerSpec{width, 1.1, h / 4.0});
    const auto last = build_rows(row_offsets(ol.first, ol.ratio, 8.0 * h, width), kOutside, boundary);
    m.dirichlet_nodes = last;
  }

  check_orientation(m);
  finish_h(m);
  const MeshQuality q = mesh_quality(m);
  if (q.min_angle_deg < 20.0) {
    const auto& t = m.triangles[q.worst_triangle];
    std::ostringstream os;
    os << "mesh: minimum core angle " << q.min_angle_deg << " deg below 20 at triangle " << q.worst_triangle << " ("
       << m.vertices[t[0]].transpose() << ")";
    throw GeometryError(os.str());
  }
  return m;
}

Mesh2D refine_uniform(const Mesh2D& in) {
  Mesh2D m(in.curve);
  m.problem = in.problem;
  m.layer = in.layer;
  m.vertices = in.vertices;
  m.chart_s = in.chart_s;
  m.chart_t = in.chart_t;
  m.chart_side = in.chart_side;
  const double len = in.curve.length();

  std::vector<char> dir(in.vertices.size(), 0);
  for (int v : in.dirichlet_nodes) dir[v] = 1;

  std::map<std::pair<int, int>, int> mid;
  auto midpoint = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    if (auto it = mid.find(key); it != mid.end()) return it->second;
    const char sa = m.chart_side[a], sb = m.chart_side[b];
    const bool ta0 = sa != kNoChart && m.chart_t[a] == 0.0, tb0 = sb != kNoChart && m.chart_t[b] == 0.0;
    const bool charted = sa != kNoChart && sb != kNoChart && (sa == sb || ta0 || tb0);
    Eigen::Vector2d p;
    double s = 0.0, t = 0.0;
    char side = kNoChart;
    if (charted) {
      double s0 = m.chart_s[a], s1 = m.chart_s[b];
      if (s1 - s0 > 0.5 * len) s1 -= len;
      if (s0 - s1 > 0.5 * len) s1 += len;
      s = 0.5 * (s0 + s1);
      if (s < 0.0) s += len;
      if (s >= len) s -= len;
      t = 0.5 * (m.chart_t[a] + m.chart_t[b]);
      side = ta0 && tb0 ? kInside : (ta0 ? sb : sa);
      p = chart_point(m.curve, s, t, side);
    } else {
      p = 0.5 * (m.vertices[a] + m.vertices[b]);
    }
    m.vertices.push_back(p);
    m.chart_s.push_back(s);
    m.chart_t.push_back(t);
    m.chart_side.push_back(side);
    dir.push_back(dir[a] && dir[b]);
    const int id = static_cast<int>(m.vertices.size()) - 1;
    mid.emplace(key, id);
    return id;
  };

  for (std::size_t k = 0; k < in.triangles.size(); ++k) {
    const auto [a, b, c] = in.triangles[k];
    const int ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
    for (const std::array<int, 3>& t :
         {std::array<int, 3>{a, ab, ca}, std::array<int, 3>{ab, b, bc}, std::array<int, 3>{ca, bc, c},
          std::array<int, 3>{ab, bc, ca}}) {
      m.triangles.push_back(t);
      m.exterior.push_back(in.exterior[k]);
      m.graded.push_back(in.graded[k]);
    }
  }

  std::vector<std::pair<double, int>> bnd;
  for (std::size_t v = 0; v < m.vertices.size(); ++v)
    if (m.chart_side[v] != kNoChart && m.chart_t[v] == 0.0) bnd.emplace_back(m.chart_s[v], static_cast<int>(v));
  std::sort(bnd.begin(), bnd.end());
  for (const auto& [s, v] : bnd) {
    m.boundary_nodes.push_back(v);
    m.boundary_s.push_back(s);
  }
  for (std::size_t v = 0; v < dir.size(); ++v)
    if (dir[v]) m.dirichlet_nodes.push_back(static_cast<int>(v));

  check_orientation(m);
  finish_h(m);
  return m;
}

MeshQuality mesh_quality(const Mesh2D& m) {
  MeshQuality q;
  q.min_angle_deg = 180.0;
  q.min_angle_all_deg = 180.0;
  q.min_normal_edge = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.triangles.size(); ++i) {
    const double a = min_angle_deg(m, m.triangles[i]);
    q.area += signed_area(m, m.triangles[i]);
    q.min_angle_all_deg = std::min(q.min_angle_all_deg, a);
    if (!m.graded.empty() && m.graded[i]) continue;
    if (a < q.min_angle_deg) {
      q.min_angle_deg = a;
      q.worst_triangle = static_cast<int>(i);
    }
  }
  for (const auto& t : m.triangles)
    for (int e = 0; e < 3; ++e) {
      const int a = t[e], b = t[(e + 1) % 3];
      if (m.chart_side.empty() || m.chart_side[a] == kNoChart || m.chart_side[a] != m.chart_side[b]) continue;
      if (m.chart_s[a] == m.chart_s[b] && m.chart_t[a] != m.chart_t[b])
        q.min_normal_edge = std::min(q.min_normal_edge, edge_length(m, a, b));
    }
  return q;
}

void write_mesh(const Mesh2D& m, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_mesh: cannot open " + path);
  os.precision(17);
  os << "$problem\n" << (m.problem == MeshProblem::Jump ? "jump" : "bag") << "\n";
  os << "$vertices\n";
  for (std::size_t i = 0; i < m.vertices.size(); ++i)
    os << i << ' ' << m.vertices[i].x() << ' ' << m.vertices[i].y() << '\n';
  os << "$triangles\n";
  for (std::size_t i = 0; i < m.triangles.size(); ++i)
    os << i << ' ' << m.triangles[i][0] << ' ' << m.triangles[i][1] << ' ' << m.triangles[i][2] << '\n';
  os << "$boundary\n";
  for (std::size_t i = 0; i < m.boundary_nodes.size(); ++i) os << m.boundary_nodes[i] << ' ' << m.boundary_s[i] << '\n';
  os << "$dirichlet\n";
  for (int v : m.dirichlet_nodes) os << v << '\n';
  os << "$exterior\n";
  for (std::size_t i = 0; i < m.exterior.size(); ++i)
    if (m.exterior[i]) os << i << '\n';
  if (!os) throw std::runtime_error("write_mesh: write failed for " + path);
}

Mesh2D read_mesh(const std::string& path, const ClosedCurve& curve) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_mesh: cannot open " + path);
  Mesh2D m(curve);
  std::string line, section;
  std::vector<int> ext;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '$') {
      section = line;
      continue;
    }
    std::istringstream ls(line);
    if (section == "$problem") {
      m.problem = line == "jump" ? MeshProblem::Jump : MeshProblem::Bag;
    } else if (section == "$vertices") {
      long id;
      double x, y;
      ls >> id >> x >> y;
      if (!ls || id != static_cast<long>(m.vertices.size())) throw GeometryError("read_mesh: bad vertex line: " + line);
      m.vertices.emplace_back(x, y);
    } else if (section == "$triangles") {
      long id;
      std::array<int, 3> t;
      ls >> id >> t[0] >> t[1] >> t[2];
      if (!ls) throw GeometryError("read_mesh: bad triangle line: " + line);
      m.triangles.push_back(t);
    } else if (section == "$boundary") {
      int v;
      double s;
      ls >> v >> s;
      if (!ls) throw GeometryError("read_mesh: bad boundary line: " + line);
      m.boundary_nodes.push_back(v);
      m.boundary_s.push_back(s);
    } else if (section == "$dirichlet") {
      int v;
      ls >> v;
      m.dirichlet_nodes.push_back(v);
    } else if (section == "$exterior") {
      int t;
      ls >> t;
      ext.push_back(t);
    }
  }
  const auto nv = static_cast<int>(m.vertices.size());
  for (const auto& t : m.triangles)
    for (int v : t)
      if (v < 0 || v >= nv) throw GeometryError("read_mesh: triangle references a missing vertex");
  m.exterior.assign(m.triangles.size(), 0);
  m.graded.assign(m.triangles.size(), 0);
  for (int t : ext) m.exterior.at(t) = 1;
  m.chart_s.assign(nv, 0.0);
  m.chart_t.assign(nv, 0.0);
  m.chart_side.assign(nv, kNoChart);
  for (std::size_t i = 0; i < m.boundary_nodes.size(); ++i) {
    m.chart_s.at(m.boundary_nodes[i]) = m.boundary_s[i];
    m.chart_side.at(m.boundary_nodes[i]) = kInside;
  }
  check_orientation(m);
  finish_h(m);
  return m;
}

}  // namespace diracml

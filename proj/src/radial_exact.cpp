#include "diracml/radial_exact.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "diracml/errors.hpp"
#include "diracml/specfun.hpp"

namespace diracml {

namespace {

// Reduced interior functions at a common exp(-|x|) scale, with z = E^2 - m^2.
struct Reduced {
  double z;
  std::function<double(int)> at;
};

Reduced disk_reduced(double E, double m, double R) {
  const double z = E * E - m * m;
  if (z >= 0.0) {
    const double x = std::sqrt(z) * R;
    return {z, [x](int l) { return bessel_j_reduced(l, x); }};
  }
  const double y = std::sqrt(-z) * R;
  return {z, [y](int l) { return bessel_i_reduced_scaled(l, y); }};
}

Reduced ball_reduced(double E, double m, double R) {
  const double z = E * E - m * m;
  if (z >= 0.0) {
    const double x = std::sqrt(z) * R;
    return {z, [x](int l) { return sph_bessel_j_reduced(l, x); }};
  }
  const double y = std::sqrt(-z) * R;
  return {z, [y](int l) { return sph_bessel_i_reduced_scaled(l, y); }};
}

// Boundary values (f, g) of the regular interior disk solution, up to a common factor.
std::pair<double, double> disk_interior(int k, double E, double m, double R) {
  const Reduced r = disk_reduced(E, m, R);
  if (k >= 0) return {r.at(k), (E + m) * R * r.at(k + 1)};
  const int n = -k - 1;
  return {(m - E) * R * r.at(n + 1), r.at(n)};
}

struct Secular {
  double value;
  double scale;  // sum of term magnitudes
};

Secular disk_mit(int k, double E, double m, double R) {
  const auto [f, g] = disk_interior(k, E, m, R);
  return {f + g, std::fabs(f) + std::fabs(g)};
}

Secular disk_jump(int k, double E, double m, double M, double R) {
  const auto [fi, gi] = disk_interior(k, E, m, R);
  const double kap = std::sqrt(M * M - E * E);
  const double x = kap * R;
  const int a = k >= 0 ? k : -k;  // order carried by f outside
  const int b = k >= 0 ? k + 1 : -k - 1;
  const double fo = bessel_k_scaled(a, x);
  const double go = kap * bessel_k_scaled(b, x) / (E - M);
  return {fi * go - gi * fo, std::fabs(fi * go) + std::fabs(gi * fo)};
}

Secular ball_mit(int kappa, double E, double m, double R) {
  const Reduced r = ball_reduced(E, m, R);
  double t1, t2;
  if (kappa < 0) {
    const int l = -kappa - 1;
    t1 = r.at(l);
    t2 = (m - E) * R * r.at(l + 1);
  } else {
    const int l = kappa;
    t1 = r.at(l - 1);
    t2 = (E + m) * R * r.at(l);
  }
  return {t1 + t2, std::fabs(t1) + std::fabs(t2)};
}

void check_common(const RadialProblem& p) {
  if (!(p.radius > 0.0) || !std::isfinite(p.radius)) throw DomainError("radial: radius must be positive");
  if (!std::isfinite(p.m)) throw DomainError("radial: mass must be finite");
  if (p.channel_cap < 1 || p.channel_cap > 40) throw DomainError("radial: channel cap must lie in [1, 40]");
  if (p.jmax < 1) throw DomainError("radial: jmax must be positive");
  if (p.scan_step < 0.0) throw DomainError("radial: scan step must be non-negative");
}

struct ChannelFn {
  int channel;
  int multiplicity;
  std::function<Secular(double)> fn;
};

// Roots of fn in (lo, hi) by sign-change scan and bisection.
std::vector<std::pair<double, double>> scan_roots(const std::function<Secular(double)>& fn, double lo, double hi,
                                                  double step, bool& close_pair) {
  std::vector<std::pair<double, double>> out;
  const int n = std::max(2, static_cast<int>(std::ceil((hi - lo) / step)));
  const double h = (hi - lo) / n;
  double xa = lo;
  double fa = fn(xa).value;
  for (int i = 1; i <= n; ++i) {
    const double xb = i == n ? hi : lo + i * h;
    const double fb = fn(xb).value;
    if (fa == 0.0) {
      out.emplace_back(xa, 0.0);
    } else if (fa * fb < 0.0) {
      double a = xa, b = xb, va = fa;
      for (int it = 0; it < 200 && b - a > 4e-16 * std::max(1.0, std::fabs(a)); ++it) {
        const double c = 0.5 * (a + b);
        const double vc = fn(c).value;
        if (vc == 0.0) {
          a = b = c;
          break;
        }
        if ((vc < 0.0) == (va < 0.0)) {
          a = c;
          va = vc;
        } else {
          b = c;
        }
      }
      const double r = 0.5 * (a + b);
      const Secular s = fn(r);
      out.emplace_back(r, s.scale > 0.0 ? std::fabs(s.value) / s.scale : std::fabs(s.value));
    }
    xa = xb;
    fa = fb;
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].first - out[i - 1].first < 4.0 * h) close_pair = true;
  return out;
}

RadialSpectrum solve(const std::vector<ChannelFn>& channels, const RadialProblem& p, double e_start, double e_cap,
                     bool cap_is_hard) {
  const double step = p.scan_step > 0.0 ? p.scan_step : 0.005 / p.radius;
  RadialSpectrum out;
  double emax = std::min(e_start, e_cap);
  bool close_pair = false;
  for (;;) {
    out.roots.clear();
    close_pair = false;
    for (const auto& ch : channels) {
      auto roots = scan_roots(ch.fn, -emax, emax, step, close_pair);
      std::sort(roots.begin(), roots.end(),
                [](const auto& a, const auto& b) { return std::fabs(a.first) < std::fabs(b.first); });
      int idx = 0;
      for (const auto& [e, res] : roots)
        out.roots.push_back({ch.channel, ++idx, e, e * e, res, ch.multiplicity});
    }
    int total = 0;
    for (const auto& r : out.roots) total += r.multiplicity;
    if (total >= p.jmax || emax >= e_cap) break;
    emax = std::min(2.0 * emax, e_cap);
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const RadialRoot& a, const RadialRoot& b) {
    if (a.square != b.square) return a.square < b.square;
    if (a.channel != b.channel) return a.channel < b.channel;
    return a.energy < b.energy;
  });
  for (const auto& r : out.roots)
    for (int i = 0; i < r.multiplicity && static_cast<int>(out.squares.size()) < p.jmax; ++i)
      out.squares.push_back(r.square);
  if (static_cast<int>(out.squares.size()) < p.jmax)
    out.flags.push_back(cap_is_hard ? "fewer_roots_than_requested" : "energy_window_exhausted");
  if (close_pair) out.flags.push_back("possible_missed_root");

  // Roots of the outermost channels below the last reported value mean
  // truncating the channel range may have hidden further roots.
  if (!out.squares.empty()) {
    const double last = out.squares.back();
    const int cap = p.channel_cap;
    for (const auto& r : out.roots) {
      const bool outer = p.geometry == RadialGeometry::Disk ? (r.channel == cap || r.channel == -cap - 1)
                                                            : (std::abs(r.channel) == cap);
      if (outer && r.square <= last) {
        out.flags.push_back("channel_truncation");
        break;
      }
    }
  }
  return out;
}

// Bessel evaluation limits: J arguments up to 200.
double oscillatory_cap(double m, double R) { return std::sqrt(m * m + std::pow(190.0 / R, 2)); }

}  // namespace

double disk_mit_secular(int k, double E, double m, double R) { return disk_mit(k, E, m, R).value; }

double disk_jump_secular(int k, double E, double m, double M, double R) {
  if (!(std::fabs(E) < std::fabs(M))) throw DomainError("disk_jump_secular: requires |E| < |M|");
  return disk_jump(k, E, m, M, R).value;
}

double ball_mit_secular(int kappa, double E, double m, double R) {
  if (kappa == 0) throw DomainError("ball_mit_secular: kappa must be nonzero");
  return ball_mit(kappa, E, m, R).value;
}

RadialSpectrum disk_mit_spectrum(const RadialProblem& p) {
  check_common(p);
  const double R = p.radius, m = p.m;
  std::vector<ChannelFn> ch;
  for (int k = -p.channel_cap - 1; k <= p.channel_cap; ++k)
    ch.push_back({k, 1, [=](double E) { return disk_mit(k, E, m, R); }});
  RadialProblem q = p;
  q.geometry = RadialGeometry::Disk;
  return solve(ch, q, 4.0 / R, oscillatory_cap(m, R), false);
}

RadialSpectrum disk_jump_spectrum(const RadialProblem& p) {
  check_common(p);
  if (!p.M) throw DomainError("disk_jump_spectrum: exterior mass M is required");
  const double R = p.radius, m = p.m, M = *p.M;
  if (!(std::fabs(M) > 0.0) || !std::isfinite(M)) throw DomainError("disk_jump_spectrum: M must be nonzero and finite");
  std::vector<ChannelFn> ch;
  for (int k = -p.channel_cap - 1; k <= p.channel_cap; ++k)
    ch.push_back({k, 1, [=](double E) { return disk_jump(k, E, m, M, R); }});
  RadialProblem q = p;
  q.geometry = RadialGeometry::Disk;
  const double cap = std::min(std::fabs(M) * (1.0 - 1e-12), oscillatory_cap(m, R));
  return solve(ch, q, 4.0 / R, cap, true);
}

RadialSpectrum ball_mit_spectrum(const RadialProblem& p) {
  check_common(p);
  const double R = p.radius, m = p.m;
  std::vector<ChannelFn> ch;
  for (int a = 1; a <= p.channel_cap; ++a)
    for (int kappa : {-a, a}) ch.push_back({kappa, 2 * a, [=](double E) { return ball_mit(kappa, E, m, R); }});
  RadialProblem q = p;
  q.geometry = RadialGeometry::Ball;
  return solve(ch, q, 4.0 / R, oscillatory_cap(m, R), false);
}

ReferenceSpectrum reference_boundary_spectrum(ReferenceSource source, int count) {
  if (count < 0) throw DomainError("reference_boundary_spectrum: count must be non-negative");
  if (!(source.size > 0.0)) throw DomainError("reference_boundary_spectrum: size must be positive");
  ReferenceSpectrum out{source, {}};
  for (int k = 0; static_cast<int>(out.values.size()) < count; ++k) {
    double v;
    int mult;
    if (source.kind == ReferenceSource::Kind::Circle) {
      v = std::pow((k + 0.5) * 2.0 * std::numbers::pi / source.size, 2);
      mult = 2;
    } else {
      v = std::pow((k + 1.0) / source.size, 2);
      mult = 4 * (k + 1);
    }
    for (int i = 0; i < mult && static_cast<int>(out.values.size()) < count; ++i) out.values.push_back(v);
  }
  return out;
}

}  // namespace diracml

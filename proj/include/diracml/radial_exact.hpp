#pragma once

#include <optional>
#include <string>
#include <vector>

namespace diracml {

enum class RadialGeometry { Disk, Ball };

struct RadialProblem {
  RadialGeometry geometry = RadialGeometry::Disk;
  double radius = 1.0;
  double m = 0.0;
  std::optional<double> M;  // exterior mass (jump problems)
  int channel_cap = 6;      // disk: k in [-cap-1, cap]; ball: kappa in +-1..+-cap
  int jmax = 6;             // eigenvalues of the square, counted with multiplicity
  double scan_step = 0.0;   // energy scan step; 0 selects 0.005 / radius
};

struct RadialRoot {
  int channel = 0;  // disk: k; ball: relativistic kappa
  int index = 0;    // 1-based order within the channel by |E|
  double energy = 0.0;
  double square = 0.0;
  double residual = 0.0;
  int multiplicity = 1;
};

struct RadialSpectrum {
  std::vector<RadialRoot> roots;  // sorted by square, then channel
  std::vector<double> squares;    // lowest jmax values of the square, multiplicities expanded
  std::vector<std::string> flags;
};

// Disk, spinor u = (f(r) e^{i k theta}, i g(r) e^{i(k+1) theta}); the boundary
// condition u = B u reads f(R) + g(R) = 0. Secular functions are entire in E
// and free of spurious zeros:
//   k >= 0:      Jh_k + (E + m) R Jh_{k+1}
//   k = -n - 1:  Jh_n + (m - E) R Jh_{n+1}
// with Jh_l(z) = J_l(x) / x^l, x = sqrt(z) R, z = E^2 - m^2 (I_l for z < 0),
// divided by exp(|x|) when z < 0.
double disk_mit_secular(int k, double E, double m, double R);

/// Wronskian-type matching of the regular interior solution (mass m) and the
/// decaying exterior one (mass M) at r = R; requires |E| < |M|.
double disk_jump_secular(int k, double E, double m, double M, double R);

// Ball, spinor (g Omega_kappa, i f Omega_{-kappa}) in the standard
// representation; each root has multiplicity 2|kappa|.
//   kappa = -(l + 1):  jh_l + (m - E) R jh_{l+1}
//   kappa = l >= 1:    jh_{l-1} + (E + m) R jh_l
double ball_mit_secular(int kappa, double E, double m, double R);

RadialSpectrum disk_mit_spectrum(const RadialProblem& p);
RadialSpectrum disk_jump_spectrum(const RadialProblem& p);
RadialSpectrum ball_mit_spectrum(const RadialProblem& p);

struct ReferenceSource {
  enum class Kind { Circle, Sphere };
  Kind kind = Kind::Circle;
  double size = 1.0;  // circle: length; sphere: radius

  static ReferenceSource circle(double length) { return {Kind::Circle, length}; }
  static ReferenceSource sphere(double radius) { return {Kind::Sphere, radius}; }
};

struct ReferenceSpectrum {
  ReferenceSource source;
  std::vector<double> values;  // sorted, multiplicities expanded
};

/// Eigenvalues of the squared intrinsic Dirac operator:
/// circle ((k + 1/2) 2 pi / length)^2 twice, sphere ((k + 1)/R)^2 with multiplicity 4(k + 1).
ReferenceSpectrum reference_boundary_spectrum(ReferenceSource source, int count);

}  // namespace diracml

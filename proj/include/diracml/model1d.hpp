#pragma once

#include <string>
#include <vector>

namespace diracml {

// -f'' on (0, delta) with
//   S : f'(0) + alpha f(0) = 0,  f(delta) = 0
//   S': f'(0) + alpha f(0) = 0,  f'(delta) - beta f(delta) = 0
struct Model1DParams {
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 1.0;
};

struct EndCondition {
  enum class Kind { Robin, Dirichlet };
  Kind kind = Kind::Robin;
  double coef = 0.0;  // alpha at t = 0, beta at t = delta

  static EndCondition robin(double c) { return {Kind::Robin, c}; }
  static EndCondition dirichlet() { return {Kind::Dirichlet, 0.0}; }
};

// psi(t) = c1 phi1(t) + c2 phi2(t) with
//   Hyperbolic (E < 0): phi1 = exp(-k t),  phi2 = exp(-k (delta - t))
//   Trigonometric (E > 0): phi1 = cos(k t), phi2 = sin(k t)
//   Linear (E = 0): phi1 = 1, phi2 = t
// where k = sqrt(|E|). Coefficients are L2-normalised.
struct ModeData {
  enum class Basis { Hyperbolic, Trigonometric, Linear };
  double eigenvalue = 0.0;
  double k = 0.0;
  Basis basis = Basis::Linear;
  double c1 = 0.0;
  double c2 = 0.0;
  double value_at_0 = 0.0;
  double value_at_delta = 0.0;
};

struct Model1DSpectrum {
  std::vector<double> eigenvalues;
  std::vector<double> residuals;  // |sigma(E)| relative to the size of its terms
  std::vector<ModeData> modes;
  double boundary_value_sq_at_0 = 0.0;  // |psi_1(0)|^2
  // alpha^2 + E_1 computed without cancellation when E_1 < 0 is the
  // boundary-localised ground state; otherwise the plain difference.
  double ground_gap = 0.0;
  std::vector<std::string> flags;
};

Model1DSpectrum spectrum_S(const Model1DParams& p, int jmax);
Model1DSpectrum spectrum_Sprime(const Model1DParams& p, int jmax);

/// Lowest jmax eigenvalues for arbitrary end conditions.
Model1DSpectrum spectrum_interval(EndCondition left, EndCondition right, double delta, int jmax);

/// Secular function whose zeros are the eigenvalues; entire in E, divided by
/// exp(k delta) when E = -k^2 < 0.
double secular(EndCondition left, EndCondition right, double delta, double E);

/// Number of eigenvalues strictly below E.
int count_below(EndCondition left, EndCondition right, double delta, double E);

double mode_value(const ModeData& mode, double delta, double t);

struct WeylBounds {
  double b_plus = 0.0;
  double b_minus = 0.0;
  double b0 = 0.0;
};

/// b- j^2 - b0 <= E_j(S') <= b+ j^2 for j >= 2, with b+- from Dirichlet and
/// Neumann comparison spectra; b0 depends only on beta and delta.
WeylBounds weyl_bounds(double beta, double delta);

}  // namespace diracml

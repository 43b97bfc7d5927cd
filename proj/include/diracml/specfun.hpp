#pragma once

namespace diracml {

// Integer-order real Bessel functions.
//
// Domains: order 0..40. J and j accept 0 <= x <= 200; the modified functions
// accept x up to 1e4 (unscaled I up to 700, where it would overflow).
// Out-of-range arguments throw DomainError.

inline constexpr int kMaxBesselOrder = 40;
inline constexpr double kMaxBesselArg = 200.0;
inline constexpr double kMaxModifiedBesselArg = 1.0e4;

double bessel_j(int k, double x);
double bessel_i(int k, double x);
double bessel_k(int k, double x);
double sph_bessel_j(int l, double x);

/// exp(-x) I_k(x)
double bessel_i_scaled(int k, double x);
/// exp(x) K_k(x)
double bessel_k_scaled(int k, double x);
/// exp(-x) i_l(x), modified spherical Bessel of the first kind.
double sph_bessel_i_scaled(int l, double x);

// Reduced forms f(x) / x^k, entire in x^2 and finite at x = 0.
double bessel_j_reduced(int k, double x);
double bessel_i_reduced_scaled(int k, double x);
double sph_bessel_j_reduced(int l, double x);
double sph_bessel_i_reduced_scaled(int l, double x);

enum class BesselKind { J, I, K, SphJ };

struct BesselEval {
  BesselKind kind = BesselKind::J;
  int order = 0;
  double argument = 0.0;
  double value = 0.0;
  double est_abs_err = 0.0;
};

/// Value with an a-posteriori error estimate (two-start Miller comparison for
/// J/I/j, Wronskian defect for K).
BesselEval bessel_eval(BesselKind kind, int order, double x);

}  // namespace diracml

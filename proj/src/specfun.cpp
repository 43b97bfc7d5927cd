#include "diracml/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "diracml/errors.hpp"

namespace diracml {

namespace {

using ld = long double;

constexpr ld kRescaleAt = 1.0e2000L;
constexpr ld kRescaleBy = 1.0e-2000L;
constexpr double kSeriesCutoff = 1.0;

void check_order(int k, const char* who) {
  if (k < 0 || k > kMaxBesselOrder)
    throw DomainError(std::string(who) + ": order " + std::to_string(k) + " outside [0, 40]");
}

void check_arg(double x, double xmax, const char* who) {
  if (!(x >= 0.0) || x > xmax)
    throw DomainError(std::string(who) + ": argument " + std::to_string(x) + " outside domain");
}

// sum_m (-1)^m (x/2)^{2m} / (2^k m! (m+k)!)
ld series_j_reduced(int k, ld x) {
  ld term = 1.0L;
  for (int i = 1; i <= k; ++i) term /= 2.0L * i;
  const ld q = -x * x / 4.0L;
  ld sum = term;
  for (int m = 0; m < 200; ++m) {
    term *= q / ((m + 1.0L) * (m + 1.0L + k));
    sum += term;
    if (std::fabs(term) <= 1e-22L * std::fabs(sum)) break;
  }
  return sum;
}

ld series_i_reduced(int k, ld x) {
  ld term = 1.0L;
  for (int i = 1; i <= k; ++i) term /= 2.0L * i;
  const ld q = x * x / 4.0L;
  ld sum = term;
  for (int m = 0; m < 200; ++m) {
    term *= q / ((m + 1.0L) * (m + 1.0L + k));
    sum += term;
    if (term <= 1e-22L * sum) break;
  }
  return sum;
}

// sum_m (s x^2/2)^m / (m! (2l+2m+1)!!), s = -1 for j_l, +1 for i_l
ld series_sph_reduced(int l, ld x, int s) {
  ld term = 1.0L;
  for (int i = 1; i <= 2 * l + 1; i += 2) term /= i;
  const ld q = s * x * x / 2.0L;
  ld sum = term;
  for (int m = 0; m < 200; ++m) {
    term *= q / ((m + 1.0L) * (2.0L * l + 2.0L * m + 3.0L));
    sum += term;
    if (std::fabs(term) <= 1e-22L * std::fabs(sum)) break;
  }
  return sum;
}

int miller_start_j(int k, double x, int extra) {
  const double top = std::max({static_cast<double>(k), x, 1.0});
  const int n = static_cast<int>(top + std::sqrt(60.0 * top)) + 30 + extra;
  return 2 * ((n + 1) / 2);
}

int miller_start_i(int k, double x, int extra) {
  const int n = k + static_cast<int>(std::sqrt(100.0 * x)) + 40 + extra;
  return 2 * ((n + 1) / 2);
}

// Backward recurrence, normalised by J0 + 2 sum J_{2m} = 1.
ld miller_j(int k, ld x, int start) {
  ld fp = 0.0L, f = 1.0e-30L, ans = 0.0L, sum = 0.0L;
  for (int j = start; j >= 1; --j) {
    const ld fm = (2.0L * j / x) * f - fp;
    fp = f;
    f = fm;
    if (j - 1 == k) ans = f;
    if ((j - 1) % 2 == 0 && j - 1 > 0) sum += 2.0L * f;
    if (std::fabs(f) > kRescaleAt) {
      f *= kRescaleBy;
      fp *= kRescaleBy;
      ans *= kRescaleBy;
      sum *= kRescaleBy;
    }
  }
  sum += f;
  return ans / sum;
}

// Backward recurrence for exp(-x) I_k, normalised by I0 + 2 sum I_m = e^x.
ld miller_i_scaled(int k, ld x, int start) {
  ld fp = 0.0L, f = 1.0e-30L, ans = 0.0L, sum = 0.0L;
  if (k == start) ans = f;
  for (int j = start; j >= 1; --j) {
    sum += 2.0L * f;
    const ld fm = (2.0L * j / x) * f + fp;
    fp = f;
    f = fm;
    if (j - 1 == k) ans = f;
    if (f > kRescaleAt) {
      f *= kRescaleBy;
      fp *= kRescaleBy;
      ans *= kRescaleBy;
      sum *= kRescaleBy;
    }
  }
  sum += f;
  return ans / sum;
}

ld sph_j0(ld x) { return std::sin(x) / x; }
ld sph_j1(ld x) { return std::sin(x) / (x * x) - std::cos(x) / x; }

ld sph_j_impl(int l, ld x, int extra) {
  if (l == 0) return sph_j0(x);
  if (l == 1) return sph_j1(x);
  if (static_cast<ld>(l) < x) {
    ld jm = sph_j0(x), j = sph_j1(x);
    for (int n = 1; n < l; ++n) {
      const ld jp = (2.0L * n + 1.0L) / x * j - jm;
      jm = j;
      j = jp;
    }
    return j;
  }
  const int start = l + static_cast<int>(std::sqrt(60.0 * l)) + 30 + extra;
  ld fp = 0.0L, f = 1.0e-30L, ans = 0.0L, f1 = 0.0L;
  for (int n = start; n >= 1; --n) {
    const ld fm = (2.0L * n + 1.0L) / x * f - fp;
    fp = f;
    f = fm;
    if (n - 1 == l) ans = f;
    if (n - 1 == 1) f1 = f;
    if (std::fabs(f) > kRescaleAt) {
      f *= kRescaleBy;
      fp *= kRescaleBy;
      ans *= kRescaleBy;
      f1 *= kRescaleBy;
    }
  }
  const ld j0 = sph_j0(x), j1 = sph_j1(x);
  return std::fabs(j0) >= std::fabs(j1) ? ans * j0 / f : ans * j1 / f1;
}

ld sph_i_scaled_impl(int l, ld x, int extra) {
  const ld i0s = -std::expm1(-2.0L * x) / (2.0L * x);
  if (l == 0) return i0s;
  const int start = l + static_cast<int>(std::sqrt(100.0 * static_cast<double>(x))) + 40 + extra;
  ld fp = 0.0L, f = 1.0e-30L, ans = 0.0L;
  for (int n = start; n >= 1; --n) {
    const ld fm = (2.0L * n + 1.0L) / x * f + fp;
    fp = f;
    f = fm;
    if (n - 1 == l) ans = f;
    if (f > kRescaleAt) {
      f *= kRescaleBy;
      fp *= kRescaleBy;
      ans *= kRescaleBy;
    }
  }
  return ans * i0s / f;
}

constexpr ld kEulerGamma = 0.577215664901532860606512090082402431L;

// K0, K1 by their logarithmic series; x <= 2.
void k01_series(ld x, ld& k0, ld& k1) {
  const ld q = x * x / 4.0L;
  const ld lg = std::log(x / 2.0L);
  const ld i0 = series_i_reduced(0, x);
  const ld i1 = x * series_i_reduced(1, x);

  ld term = 1.0L, harmonic = 0.0L, s0 = 0.0L;
  for (int m = 1; m < 100; ++m) {
    term *= q / (static_cast<ld>(m) * m);
    harmonic += 1.0L / m;
    s0 += term * harmonic;
    if (term * harmonic < 1e-22L * std::fabs(s0)) break;
  }
  k0 = -(lg + kEulerGamma) * i0 + s0;

  // psi(m+1) + psi(m+2) = -2 gamma + 2 H_m + 1/(m+1)
  ld t = 1.0L, hm = 0.0L, s1 = 0.0L;
  for (int m = 0; m < 100; ++m) {
    if (m > 0) {
      t *= q / (static_cast<ld>(m) * (m + 1));
      hm += 1.0L / m;
    }
    const ld c = -2.0L * kEulerGamma + 2.0L * hm + 1.0L / (m + 1);
    s1 += t * c;
    if (m > 2 && std::fabs(t * c) < 1e-22L * std::fabs(s1)) break;
  }
  k1 = 1.0L / x + lg * i1 - (x / 4.0L) * s1;
}

// Steed's continued fraction for exp(x) K0, exp(x) K1; x > 2.
void k01_scaled_cf(ld x, ld& k0s, ld& k1s) {
  ld b = 2.0L * (1.0L + x);
  ld d = 1.0L / b;
  ld h = d, delh = d;
  ld q1 = 0.0L, q2 = 1.0L;
  const ld a1 = 0.25L;
  ld q = a1, c = a1, a = -a1;
  ld s = 1.0L + q * delh;
  for (int i = 1; i < 100000; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0L);
    const ld qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0L;
    d = 1.0L / (b + a * d);
    delh = (b * d - 1.0L) * delh;
    h += delh;
    const ld dels = q * delh;
    s += dels;
    if (std::fabs(dels / s) < 1e-21L) break;
  }
  h = a1 * h;
  k0s = std::sqrt(std::numbers::pi_v<ld> / (2.0L * x)) / s;
  k1s = k0s * (x + 0.5L - h) / x;
}

ld k_scaled_impl(int k, ld x) {
  ld k0, k1;
  if (x <= 2.0L) {
    k01_series(x, k0, k1);
    const ld e = std::exp(x);
    k0 *= e;
    k1 *= e;
  } else {
    k01_scaled_cf(x, k0, k1);
  }
  if (k == 0) return k0;
  for (int n = 1; n < k; ++n) {
    const ld kp = k0 + (2.0L * n / x) * k1;
    k0 = k1;
    k1 = kp;
  }
  return k1;
}

}  // namespace

double bessel_j(int k, double x) {
  check_order(k, "bessel_j");
  check_arg(x, kMaxBesselArg, "bessel_j");
  if (x == 0.0) return k == 0 ? 1.0 : 0.0;
  if (x <= kSeriesCutoff) return static_cast<double>(std::pow(static_cast<ld>(x), k) * series_j_reduced(k, x));
  return static_cast<double>(miller_j(k, x, miller_start_j(k, x, 0)));
}

double bessel_i_scaled(int k, double x) {
  check_order(k, "bessel_i_scaled");
  check_arg(x, kMaxModifiedBesselArg, "bessel_i_scaled");
  if (x == 0.0) return k == 0 ? 1.0 : 0.0;
  if (x <= kSeriesCutoff)
    return static_cast<double>(std::exp(-static_cast<ld>(x)) * std::pow(static_cast<ld>(x), k) *
                               series_i_reduced(k, x));
  return static_cast<double>(miller_i_scaled(k, x, miller_start_i(k, x, 0)));
}

double bessel_i(int k, double x) {
  check_arg(x, 700.0, "bessel_i");
  return static_cast<double>(static_cast<ld>(bessel_i_scaled(k, x)) * std::exp(static_cast<ld>(x)));
}

double bessel_k_scaled(int k, double x) {
  check_order(k, "bessel_k_scaled");
  if (x == 0.0) throw DomainError("bessel_k: K_k is singular at x = 0");
  check_arg(x, kMaxModifiedBesselArg, "bessel_k_scaled");
  return static_cast<double>(k_scaled_impl(k, x));
}

double bessel_k(int k, double x) {
  const double ks = bessel_k_scaled(k, x);
  return static_cast<double>(static_cast<ld>(ks) * std::exp(-static_cast<ld>(x)));
}

double sph_bessel_j(int l, double x) {
  check_order(l, "sph_bessel_j");
  check_arg(x, kMaxBesselArg, "sph_bessel_j");
  if (x == 0.0) return l == 0 ? 1.0 : 0.0;
  if (x <= kSeriesCutoff) return static_cast<double>(std::pow(static_cast<ld>(x), l) * series_sph_reduced(l, x, -1));
  return static_cast<double>(sph_j_impl(l, x, 0));
}

double sph_bessel_i_scaled(int l, double x) {
  check_order(l, "sph_bessel_i_scaled");
  check_arg(x, kMaxModifiedBesselArg, "sph_bessel_i_scaled");
  if (x == 0.0) return l == 0 ? 1.0 : 0.0;
  if (x <= kSeriesCutoff)
    return static_cast<double>(std::exp(-static_cast<ld>(x)) * std::pow(static_cast<ld>(x), l) *
                               series_sph_reduced(l, x, +1));
  return static_cast<double>(sph_i_scaled_impl(l, x, 0));
}

double bessel_j_reduced(int k, double x) {
  check_order(k, "bessel_j_reduced");
  check_arg(x, kMaxBesselArg, "bessel_j_reduced");
  if (x <= kSeriesCutoff) return static_cast<double>(series_j_reduced(k, x));
  return static_cast<double>(miller_j(k, x, miller_start_j(k, x, 0)) / std::pow(static_cast<ld>(x), k));
}

double bessel_i_reduced_scaled(int k, double x) {
  check_order(k, "bessel_i_reduced_scaled");
  check_arg(x, kMaxModifiedBesselArg, "bessel_i_reduced_scaled");
  if (x <= kSeriesCutoff) return static_cast<double>(std::exp(-static_cast<ld>(x)) * series_i_reduced(k, x));
  return static_cast<double>(miller_i_scaled(k, x, miller_start_i(k, x, 0)) / std::pow(static_cast<ld>(x), k));
}

double sph_bessel_j_reduced(int l, double x) {
  check_order(l, "sph_bessel_j_reduced");
  check_arg(x, kMaxBesselArg, "sph_bessel_j_reduced");
  if (x <= kSeriesCutoff) return static_cast<double>(series_sph_reduced(l, x, -1));
  return static_cast<double>(sph_j_impl(l, x, 0) / std::pow(static_cast<ld>(x), l));
}

double sph_bessel_i_reduced_scaled(int l, double x) {
  check_order(l, "sph_bessel_i_reduced_scaled");
  check_arg(x, kMaxModifiedBesselArg, "sph_bessel_i_reduced_scaled");
  if (x <= kSeriesCutoff) return static_cast<double>(std::exp(-static_cast<ld>(x)) * series_sph_reduced(l, x, +1));
  return static_cast<double>(sph_i_scaled_impl(l, x, 0) / std::pow(static_cast<ld>(x), l));
}

BesselEval bessel_eval(BesselKind kind, int order, double x) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  BesselEval out;
  out.kind = kind;
  out.order = order;
  out.argument = x;
  double alt = 0.0;
  switch (kind) {
    case BesselKind::J:
      out.value = bessel_j(order, x);
      alt = x <= kSeriesCutoff ? out.value : static_cast<double>(miller_j(order, x, miller_start_j(order, x, 40)));
      break;
    case BesselKind::I:
      out.value = bessel_i(order, x);
      alt = x <= kSeriesCutoff
                ? out.value
                : static_cast<double>(miller_i_scaled(order, x, miller_start_i(order, x, 40)) * std::exp(static_cast<ld>(x)));
      break;
    case BesselKind::SphJ:
      out.value = sph_bessel_j(order, x);
      alt = x <= kSeriesCutoff ? out.value : static_cast<double>(sph_j_impl(order, x, 40));
      break;
    case BesselKind::K: {
      out.value = bessel_k(order, x);
      const double w = x * (bessel_i_scaled(order, x) * bessel_k_scaled(std::min(order + 1, kMaxBesselOrder), x) +
                            bessel_i_scaled(std::min(order + 1, kMaxBesselOrder), x) * bessel_k_scaled(order, x));
      alt = order < kMaxBesselOrder ? out.value * (1.0 + std::fabs(w - 1.0)) : out.value;
      break;
    }
  }
  out.est_abs_err = std::fabs(out.value - alt) + 4.0 * eps * std::fabs(out.value);
  return out;
}

}  // namespace diracml

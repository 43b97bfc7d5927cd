#include "diracml/model1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "diracml/errors.hpp"

namespace diracml {

namespace {

constexpr double kPi = std::numbers::pi;

// Fundamental pair C (C(0)=1, C'(0)=0) and Sn (Sn(0)=0, Sn'(0)=1) of -u'' = E u,
// both multiplied by exp(-k t) when E = -k^2 < 0.
struct Fundamental {
  double C;
  double Sn;
};

Fundamental fundamental(double E, double t) {
  if (E < 0.0) {
    const double k = std::sqrt(-E);
    const double e = std::exp(-2.0 * k * t);
    return {0.5 * (1.0 + e), -0.5 * std::expm1(-2.0 * k * t) / k};
  }
  if (E > 0.0) {
    const double k = std::sqrt(E);
    return {std::cos(k * t), std::sin(k * t) / k};
  }
  return {1.0, t};
}

struct State {
  double u, du;        // scaled u(t), u'(t)
  double u_abs, du_abs;  // sums of absolute values of their terms
};

State left_solution(EndCondition left, double E, double t) {
  const auto [C, Sn] = fundamental(E, t);
  if (left.kind == EndCondition::Kind::Dirichlet) return {Sn, C, std::fabs(Sn), std::fabs(C)};
  const double a = left.coef;
  return {C - a * Sn, -E * Sn - a * C, std::fabs(C) + std::fabs(a * Sn), std::fabs(E * Sn) + std::fabs(a * C)};
}

double sigma_with_scale(EndCondition left, EndCondition right, double delta, double E, double& scale) {
  const State s = left_solution(left, E, delta);
  if (right.kind == EndCondition::Kind::Dirichlet) {
    scale = s.u_abs;
    return s.u;
  }
  scale = s.du_abs + std::fabs(right.coef) * s.u_abs;
  return s.du - right.coef * s.u;
}

double prufer_angle_at_delta(EndCondition left, double delta, double E) {
  const int steps = static_cast<int>(std::ceil(2.0 * std::max(1.0, std::fabs(E)) * delta)) + 8;
  State s = left_solution(left, E, 0.0);
  double theta = std::atan2(s.u, s.du);
  double prev = theta;
  for (int i = 1; i <= steps; ++i) {
    const double t = delta * static_cast<double>(i) / steps;
    s = left_solution(left, E, t);
    const double a = std::atan2(s.u, s.du);
    double d = a - prev;
    while (d > kPi) d -= 2.0 * kPi;
    while (d <= -kPi) d += 2.0 * kPi;
    theta += d;
    prev = a;
  }
  return theta;
}

double target_angle(EndCondition right) {
  return right.kind == EndCondition::Kind::Dirichlet ? kPi : std::atan2(1.0, right.coef);
}

ModeData build_mode(EndCondition left, EndCondition right, double delta, double E) {
  ModeData m;
  m.eigenvalue = E;
  m.k = std::sqrt(std::fabs(E));
  const double k = m.k;
  struct Row {
    double a, b, scale;
  };
  Row rl{}, rr{};
  if (E < 0.0) {
    m.basis = ModeData::Basis::Hyperbolic;
    const double ek = std::exp(-k * delta);
    rl = left.kind == EndCondition::Kind::Dirichlet
             ? Row{1.0, ek, 1.0}
             : Row{left.coef - k, (left.coef + k) * ek, std::fabs(left.coef) + k};
    rr = right.kind == EndCondition::Kind::Dirichlet
             ? Row{ek, 1.0, 1.0}
             : Row{(-k - right.coef) * ek, k - right.coef, std::fabs(right.coef) + k};
  } else if (E > 0.0) {
    m.basis = ModeData::Basis::Trigonometric;
    const double c = std::cos(k * delta), s = std::sin(k * delta);
    rl = left.kind == EndCondition::Kind::Dirichlet ? Row{1.0, 0.0, 1.0}
                                                    : Row{left.coef, k, std::fabs(left.coef) + k};
    rr = right.kind == EndCondition::Kind::Dirichlet
             ? Row{c, s, 1.0}
             : Row{-k * s - right.coef * c, k * c - right.coef * s, k + std::fabs(right.coef)};
  } else {
    m.basis = ModeData::Basis::Linear;
    rl = left.kind == EndCondition::Kind::Dirichlet ? Row{1.0, 0.0, 1.0}
                                                    : Row{left.coef, 1.0, std::fabs(left.coef) + 1.0};
    rr = right.kind == EndCondition::Kind::Dirichlet
             ? Row{1.0, delta, 1.0 + delta}
             : Row{-right.coef, 1.0 - right.coef * delta, 1.0 + std::fabs(right.coef) * (1.0 + delta)};
  }
  const auto weight = [](const Row& r) { return std::max(std::fabs(r.a), std::fabs(r.b)) / r.scale; };
  const Row& row = weight(rl) >= weight(rr) ? rl : rr;
  double c1 = row.b, c2 = -row.a;

  double norm2 = 0.0;
  switch (m.basis) {
    case ModeData::Basis::Hyperbolic: {
      const double w = -std::expm1(-2.0 * k * delta) / (2.0 * k);
      norm2 = (c1 * c1 + c2 * c2) * w + 2.0 * c1 * c2 * delta * std::exp(-k * delta);
      break;
    }
    case ModeData::Basis::Trigonometric: {
      const double s2 = std::sin(2.0 * k * delta) / (4.0 * k);
      norm2 = c1 * c1 * (0.5 * delta + s2) + c2 * c2 * (0.5 * delta - s2) +
              c1 * c2 * (1.0 - std::cos(2.0 * k * delta)) / (2.0 * k);
      break;
    }
    case ModeData::Basis::Linear:
      norm2 = c1 * c1 * delta + c1 * c2 * delta * delta + c2 * c2 * delta * delta * delta / 3.0;
      break;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  m.c1 = c1 * inv;
  m.c2 = c2 * inv;
  m.value_at_0 = mode_value(m, delta, 0.0);
  m.value_at_delta = mode_value(m, delta, delta);
  return m;
}

}  // namespace

double secular(EndCondition left, EndCondition right, double delta, double E) {
  double scale = 0.0;
  return sigma_with_scale(left, right, delta, E, scale);
}

int count_below(EndCondition left, EndCondition right, double delta, double E) {
  const double theta = prufer_angle_at_delta(left, delta, E);
  const double n = std::ceil((theta - target_angle(right)) / kPi);
  return n > 0.0 ? static_cast<int>(n) : 0;
}

double mode_value(const ModeData& mode, double delta, double t) {
  switch (mode.basis) {
    case ModeData::Basis::Hyperbolic:
      return mode.c1 * std::exp(-mode.k * t) + mode.c2 * std::exp(-mode.k * (delta - t));
    case ModeData::Basis::Trigonometric:
      return mode.c1 * std::cos(mode.k * t) + mode.c2 * std::sin(mode.k * t);
    case ModeData::Basis::Linear:
      return mode.c1 + mode.c2 * t;
  }
  return 0.0;
}

Model1DSpectrum spectrum_interval(EndCondition left, EndCondition right, double delta, int jmax) {
  if (!(delta > 0.0)) throw DomainError("model1d: delta must be positive");
  if (jmax < 1) throw DomainError("model1d: jmax must be >= 1");

  const auto count = [&](double E) { return count_below(left, right, delta, E); };

  const double a0 = std::fabs(left.coef) + std::fabs(right.coef) + 1.0 / delta;
  double lo = -4.0 * a0 * a0 - 1.0;
  for (int it = 0; count(lo) > 0; ++it) {
    if (it > 200) throw NumericalError("model1d: no lower bound for the spectrum");
    lo *= 2.0;
  }
  double hi = std::pow((jmax + 1) * kPi / delta, 2) + 1.0;
  for (int it = 0; count(hi) < jmax; ++it) {
    if (it > 200) throw NumericalError("model1d: no upper bracket for the requested eigenvalues");
    hi = 2.0 * hi + 1.0;
  }

  Model1DSpectrum out;
  double a = lo;
  for (int j = 1; j <= jmax; ++j) {
    // isolate E_j in [a, b) with count(a) = j-1, count(b) = j
    double b = hi;
    int guard = 0;
    while (count(b) > j) {
      const double mid = 0.5 * (a + b);
      if (count(mid) >= j) b = mid; else a = mid;
      if (++guard > 400) {
        std::ostringstream msg;
        msg << "model1d: failed to isolate eigenvalue " << j << " in [" << a << ", " << b << "]";
        throw NumericalError(msg.str());
      }
    }
    while (count(a) < j - 1) {
      const double mid = 0.5 * (a + b);
      if (count(mid) <= j - 1) a = mid; else b = mid;
      if (++guard > 800) throw NumericalError("model1d: failed to isolate eigenvalue");
    }

    double E;
    if (a <= 0.0 && b > 0.0 && secular(left, right, delta, 0.0) == 0.0) {
      E = 0.0;
    } else {
      double fa = secular(left, right, delta, a);
      double x0 = a, x1 = b;
      E = 0.5 * (x0 + x1);
      for (int it = 0; it < 300; ++it) {
        E = 0.5 * (x0 + x1);
        if (E == x0 || E == x1) break;
        const double fm = secular(left, right, delta, E);
        if (fm == 0.0) break;
        if ((fm < 0.0) == (fa < 0.0)) {
          x0 = E;
          fa = fm;
        } else {
          x1 = E;
        }
      }
    }
    double scale = 0.0;
    const double sig = sigma_with_scale(left, right, delta, E, scale);
    out.eigenvalues.push_back(E);
    out.residuals.push_back(scale > 0.0 ? std::fabs(sig) / scale : std::fabs(sig));
    out.modes.push_back(build_mode(left, right, delta, E));
    a = b;
  }

  const double v0 = out.modes.front().value_at_0;
  out.boundary_value_sq_at_0 = v0 * v0;
  out.ground_gap = left.coef * left.coef + out.eigenvalues.front();
  return out;
}

Model1DSpectrum spectrum_S(const Model1DParams& p, int jmax) {
  auto out = spectrum_interval(EndCondition::robin(p.alpha), EndCondition::dirichlet(), p.delta, jmax);
  const double e1 = out.eigenvalues.front();
  if (p.alpha > 0.0 && e1 < 0.0) {
    // k = alpha tanh(k delta), so alpha - k = 2 alpha / (exp(2 k delta) + 1)
    const double k = std::sqrt(-e1);
    const double d = 2.0 * p.alpha / (std::exp(2.0 * k * p.delta) + 1.0);
    out.ground_gap = d * (2.0 * p.alpha - d);
  }
  return out;
}

Model1DSpectrum spectrum_Sprime(const Model1DParams& p, int jmax) {
  auto out = spectrum_interval(EndCondition::robin(p.alpha), EndCondition::robin(p.beta), p.delta, jmax);
  if (p.alpha <= p.beta) out.flags.push_back("alpha_le_beta");
  const double e1 = out.eigenvalues.front();
  if (p.alpha > p.beta && p.beta >= 0.0 && e1 < 0.0) {
    // g(k) = h(k) rearranged: k - alpha = (k + alpha)(k + beta) / ((k - beta) exp(2 k delta))
    double d = 0.0;
    for (int it = 0; it < 12; ++it) {
      const double k = p.alpha + d;
      d = (k + p.alpha) * (k + p.beta) / ((k - p.beta) * std::exp(2.0 * k * p.delta));
    }
    if (d < 1e-3 * p.alpha) out.ground_gap = -d * (2.0 * p.alpha + d);
  }
  return out;
}

WeylBounds weyl_bounds(double beta, double delta) {
  WeylBounds w;
  w.b_plus = kPi * kPi / (delta * delta);
  w.b_minus = kPi * kPi / (4.0 * delta * delta);
  const double e1d = spectrum_interval(EndCondition::dirichlet(), EndCondition::robin(beta), delta, 1).eigenvalues.front();
  w.b0 = 3.0 * kPi * kPi / (delta * delta) + std::max(0.0, -e1d);
  return w;
}

}  // namespace diracml

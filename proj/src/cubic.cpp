#include "cpsblotto/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cpsblotto {

double Cubic::scale(double x) const {
  const double x2 = x * x;
  return std::max({std::abs(a * x2 * x), std::abs(b * x2), std::abs(c * x), std::abs(d)});
}

namespace {

double polish(const Cubic& p, double x) {
  for (int iter = 0; iter < 8; ++iter) {
    const double f = p(x);
    const double df = p.derivative(x);
    if (f == 0.0 || df == 0.0) break;
    const double next = x - f / df;
    if (!std::isfinite(next) || std::abs(p(next)) >= std::abs(f)) break;
    x = next;
  }
  return x;
}

std::vector<double> quadratic_roots(double a, double b, double c) {
  if (a == 0.0) {
    if (b == 0.0) return {};
    return {-c / b};
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {};
  if (disc == 0.0) return {-b / (2.0 * a)};
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  std::vector<double> roots{q / a};
  if (q != 0.0) roots.push_back(c / q);
  else roots.push_back(0.0);
  return roots;
}

}  // namespace

std::vector<double> real_roots(const Cubic& p) {
  std::vector<double> roots;
  if (p.a == 0.0) {
    roots = quadratic_roots(p.b, p.c, p.d);
  } else {
    // Monic form x^3 + A x^2 + B x + C, reduced with Q and R as in the
    // classical trigonometric / Cardano split.
    const double A = p.b / p.a, B = p.c / p.a, C = p.d / p.a;
    const double Q = (A * A - 3.0 * B) / 9.0;
    const double R = (A * (2.0 * A * A - 9.0 * B) + 27.0 * C) / 54.0;
    const double Q3 = Q * Q * Q;
    if (R * R < Q3) {
      const double theta = std::acos(std::clamp(R / std::sqrt(Q3), -1.0, 1.0));
      const double m = -2.0 * std::sqrt(Q);
      for (int k = 0; k < 3; ++k)
        roots.push_back(m * std::cos((theta + 2.0 * std::numbers::pi * k) / 3.0) - A / 3.0);
    } else {
      const double U = -std::cbrt(R + std::copysign(std::sqrt(R * R - Q3), R));
      const double V = U == 0.0 ? 0.0 : Q / U;
      roots.push_back(U + V - A / 3.0);
      // Double root when the discriminant vanishes.
      if (U == V && U != 0.0) roots.push_back(-U - A / 3.0);
    }
  }
  for (double& x : roots) x = polish(p, x);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

double bracketed_root(const Cubic& p, double lo, double hi, double tol) {
  double flo = p(lo);
  if (flo == 0.0) return lo;
  double fhi = p(hi);
  if (fhi == 0.0) return hi;
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double fx = p(x);
    if (std::abs(fx) <= tol) return x;
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    const double df = p.derivative(x);
    double next = df != 0.0 ? x - fx / df : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x || next == lo || next == hi) return std::abs(p(lo)) < std::abs(p(hi)) ? lo : hi;
    x = next;
  }
  return x;
}

}  // namespace cpsblotto

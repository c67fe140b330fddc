#pragma once

#include <vector>

namespace cpsblotto {

/// a x^3 + b x^2 + c x + d
struct Cubic {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  double operator()(double x) const { return ((a * x + b) * x + c) * x + d; }
  double derivative(double x) const { return (3.0 * a * x + 2.0 * b) * x + c; }
  /// Largest term magnitude at x; the natural scale for residuals.
  double scale(double x) const;
};

/// Real roots in ascending order, Newton-polished. Degenerate leading
/// coefficients fall back to the quadratic and linear formulas; the zero
/// polynomial has no isolated roots and returns an empty list.
std::vector<double> real_roots(const Cubic& p);

/// Root of p in [lo, hi] given p(lo) and p(hi) of opposite sign (or zero),
/// by Newton steps safeguarded with bisection. Stops once |p(x)| <= tol or
/// the bracket collapses to adjacent doubles.
double bracketed_root(const Cubic& p, double lo, double hi, double tol = 1e-12);

}  // namespace cpsblotto

// Test-only numerical oracles, kept independent of the library paths they
// cross-check.
#pragma once

#include <cmath>
#include <functional>

#include "rmfield/types.hpp"

namespace oracles {

// Adaptive Simpson quadrature with interval bisection.
inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double b, double fa, double fm,
                                   double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                              depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol = 1e-12) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Central-difference derivative of a scalar function, Richardson refined.
inline double central_derivative(const std::function<double(double)>& f,
                                 double x, double h = 1e-4) {
  const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
  const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

// Christoffel symbols of an arbitrary metric field by finite differences on
// the metric components. Independent route for checking closed forms.
// metric(p) returns the 3x3 matrix g_ij at p.
inline double christoffel_fd(const std::function<rmf::Mat3(const rmf::Vec3&)>& metric,
                             const rmf::Vec3& p, int k, int i, int j) {
  auto dg = [&](int a, int b, int dir) {
    return central_derivative(
        [&](double x) {
          rmf::Vec3 q = p;
          q(dir) = x;
          return metric(q)(a, b);
        },
        p(dir));
  };
  const rmf::Mat3 ginv = metric(p).inverse();
  double sum = 0.0;
  for (int l = 0; l < 3; ++l)
    sum += 0.5 * ginv(k, l) * (dg(l, i, j) + dg(l, j, i) - dg(i, j, l));
  return sum;
}

}  // namespace oracles

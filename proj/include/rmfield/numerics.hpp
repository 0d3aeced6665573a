#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "rmfield/types.hpp"

namespace rmf {

/// Summary of a per-sample residual series. max_abs >= rms >= 0.
struct ResidualReport {
  double max_abs = 0.0;
  double rms = 0.0;
  std::vector<std::pair<double, double>> per_sample;  // (t, value)
};

inline ResidualReport make_report(std::vector<std::pair<double, double>> samples) {
  ResidualReport report;
  report.per_sample = std::move(samples);
  double sq = 0.0;
  for (const auto& [t, v] : report.per_sample) {
    report.max_abs = std::max(report.max_abs, std::abs(v));
    sq += v * v;
  }
  if (!report.per_sample.empty())
    report.rms = std::sqrt(sq / static_cast<double>(report.per_sample.size()));
  return report;
}

/// First-order ODE y' = rhs(t, y) on a fixed state dimension.
struct OdeSystem {
  Eigen::Index dimension = 0;
  std::function<VecX(double, const VecX&)> rhs;
};

struct OdeTrajectory {
  std::vector<double> ts;
  std::vector<VecX> states;
};

/// Classical fixed-step fourth-order Runge-Kutta over [t0, t1], inclusive of
/// both endpoints. Deterministic for fixed inputs.
inline OdeTrajectory rk4(const OdeSystem& system, VecX y0, double t0, double t1,
                         int steps) {
  if (steps < 1) throw Error("rk4: steps must be >= 1");
  if (!(t1 > t0)) throw Error("rk4: need t1 > t0");
  if (y0.size() != system.dimension)
    throw DimensionMismatch("rk4: state size does not match system dimension");

  OdeTrajectory out;
  out.ts.reserve(steps + 1);
  out.states.reserve(steps + 1);
  const double h = (t1 - t0) / steps;

  VecX y = std::move(y0);
  out.ts.push_back(t0);
  out.states.push_back(y);
  for (int i = 0; i < steps; ++i) {
    const double t = t0 + i * h;
    const VecX k1 = system.rhs(t, y);
    const VecX k2 = system.rhs(t + 0.5 * h, y + 0.5 * h * k1);
    const VecX k3 = system.rhs(t + 0.5 * h, y + 0.5 * h * k2);
    const VecX k4 = system.rhs(t + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!y.allFinite())
      throw NonFiniteState("rk4: state became non-finite at t = " +
                           std::to_string(t + h));
    out.ts.push_back(i + 1 == steps ? t1 : t0 + (i + 1) * h);
    out.states.push_back(y);
  }
  return out;
}

/// Finite-difference weights on arbitrary nodes (Fornberg's recursion).
/// Column k of the result holds weights w such that
///   f^(k)(x0) ~= sum_i w(i) f(nodes[i]).
/// Weights for k >= 1 are corrected to annihilate constants exactly, so a
/// constant sample series differentiates to exactly zero.
inline MatX fornberg_weights(const std::vector<double>& nodes, double x0,
                             int max_order) {
  const int n = static_cast<int>(nodes.size());
  if (n < max_order + 1) throw TooFewSamples("fornberg_weights: too few nodes");
  MatX c = MatX::Zero(n, max_order + 1);
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
        c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k)
        c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
      c(j, 0) = c4 * c(j, 0) / c3;
    }
    c1 = c2;
  }
  // Exactness on constants: the k-th derivative weights must sum to zero.
  // Dump the numerical leftover onto the node closest to x0.
  int center = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(nodes[i] - x0) < std::abs(nodes[center] - x0)) center = i;
  for (int k = 1; k <= max_order; ++k) c(center, k) -= c.col(k).sum();
  return c;
}

namespace detail {

inline void check_strictly_increasing(const std::vector<double>& ts) {
  for (std::size_t i = 1; i < ts.size(); ++i)
    if (!(ts[i] > ts[i - 1]))
      throw Error("sample parameters must be strictly increasing");
}

/// Index window [first, first+width) centered on i, clamped to [0, n).
inline int stencil_start(int i, int n, int width) {
  int first = i - width / 2;
  first = std::max(0, std::min(first, n - width));
  return first;
}

}  // namespace detail

/// Differentiates a sampled vector series on its own grid. Interior points
/// use centered five-point stencils (fourth order on uniform grids); the
/// ends fall back to one-sided stencils of the same width.
template <class Value>
std::vector<Value> finite_diff(const std::vector<double>& ts,
                               const std::vector<Value>& values, int order) {
  if (order != 1 && order != 2) throw Error("finite_diff: order must be 1 or 2");
  const int n = static_cast<int>(ts.size());
  if (values.size() != ts.size())
    throw GridMismatch("finite_diff: ts/values size mismatch");
  if ((order == 1 && n < 3) || (order == 2 && n < 5))
    throw TooFewSamples("finite_diff: not enough samples for requested order");
  detail::check_strictly_increasing(ts);

  const int width = std::min(5, n);
  std::vector<Value> out;
  out.reserve(n);
  std::vector<double> nodes(width);
  for (int i = 0; i < n; ++i) {
    const int first = detail::stencil_start(i, n, width);
    for (int k = 0; k < width; ++k) nodes[k] = ts[first + k];
    const MatX w = fornberg_weights(nodes, ts[i], order);
    // Work on values shifted by the evaluation node so that constant series
    // differentiate to exactly zero.
    const Value& base = values[i];
    Value acc = w(0, order) * (values[first] - base);
    for (int k = 1; k < width; ++k)
      acc += w(k, order) * (values[first + k] - base);
    out.push_back(acc);
  }
  return out;
}

/// Cumulative integral of a sampled function, F[i] = integral from ts[0] to
/// ts[i]. Each interval integrates the local quartic interpolant on a
/// five-node stencil; short series fall back to lower degrees.
inline std::vector<double> cumulative_integral(const std::vector<double>& ts,
                                               const std::vector<double>& fs) {
  const int n = static_cast<int>(ts.size());
  if (fs.size() != ts.size())
    throw GridMismatch("cumulative_integral: ts/fs size mismatch");
  if (n < 2) throw TooFewSamples("cumulative_integral: need at least 2 samples");
  detail::check_strictly_increasing(ts);

  std::vector<double> F(n, 0.0);
  if (n < 3) {
    F[1] = 0.5 * (ts[1] - ts[0]) * (fs[1] + fs[0]);
    return F;
  }
  const int width = std::min(5, n);
  MatX V(width, width);
  VecX y(width), coef(width);
  for (int i = 0; i + 1 < n; ++i) {
    const int first = detail::stencil_start(i, n, width);
    // Interpolating polynomial in the scaled variable (t - tc)/h for
    // conditioning, integrated exactly over the interval.
    const double tc = 0.5 * (ts[i] + ts[i + 1]);
    const double h = ts[i + 1] - ts[i];
    for (int r = 0; r < width; ++r) {
      const double x = (ts[first + r] - tc) / h;
      double p = 1.0;
      for (int cidx = 0; cidx < width; ++cidx) {
        V(r, cidx) = p;
        p *= x;
      }
      y(r) = fs[first + r];
    }
    coef = V.fullPivLu().solve(y);
    const double a = (ts[i] - tc) / h, b = (ts[i + 1] - tc) / h;
    double seg = 0.0, pa = a, pb = b;
    for (int cidx = 0; cidx < width; ++cidx) {
      seg += coef(cidx) * (pb - pa) / (cidx + 1);
      pa *= a;
      pb *= b;
    }
    F[i + 1] = F[i] + h * seg;
  }
  return F;
}

/// Euclidean inner product as a metric functor.
struct EuclideanMetric {
  template <class U, class V>
  double operator()(const U& u, const V& v) const {
    return u.dot(v);
  }
};

/// Gram matrix G_ij = g(v_i, v_j) under a supplied bilinear form.
template <class Metric>
MatX gram_matrix(const Metric& g, const std::vector<VecX>& vectors) {
  const int m = static_cast<int>(vectors.size());
  MatX G(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      G(i, j) = g(vectors[i], vectors[j]);
      G(j, i) = G(i, j);
    }
  return G;
}

/// Determinant of the Gram matrix; zero iff the vectors are dependent.
template <class Metric>
double gram_det(const Metric& g, const std::vector<VecX>& vectors) {
  if (vectors.empty()) throw Error("gram_det: need at least one vector");
  const Eigen::Index dim = vectors.front().size();
  if (static_cast<Eigen::Index>(vectors.size()) > dim)
    throw DimensionMismatch("gram_det: more vectors than ambient dimension");
  for (const auto& v : vectors)
    if (v.size() != dim) throw DimensionMismatch("gram_det: mixed dimensions");
  return gram_matrix(g, vectors).determinant();
}

/// Modified Gram-Schmidt under a supplied metric. Preserves the span and
/// returns vectors with Gram matrix equal to the identity.
template <class Metric>
std::vector<VecX> orthonormalize(const Metric& g, std::vector<VecX> vectors,
                                 double eps = 1e-12) {
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      vectors[i] -= g(vectors[i], vectors[j]) * vectors[j];
    // second pass for numerical orthogonality
    for (std::size_t j = 0; j < i; ++j)
      vectors[i] -= g(vectors[i], vectors[j]) * vectors[j];
    const double nn = g(vectors[i], vectors[i]);
    if (!(nn > eps * eps))
      throw DependentInput("orthonormalize: input vectors are dependent");
    vectors[i] /= std::sqrt(nn);
  }
  return vectors;
}

/// Total-least-squares line fit in the plane. The line is the set of points
/// p with normal.dot(p) = offset; offset is signed. A cloud that collapses
/// to a single point gets the line through it perpendicular to the position
/// vector, which is the limiting line of nearby noncollapsed clouds here.
struct LineFit {
  Vec2 normal = Vec2::UnitY();
  double offset = 0.0;
  double max_deviation = 0.0;
  double spread = 0.0;  // rms extent along the fitted direction
};

inline LineFit fit_line_tls(const std::vector<Vec2>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 2) throw TooFewSamples("fit_line_tls: need at least 2 points");
  Vec2 c = Vec2::Zero();
  for (const auto& p : points) c += p;
  c /= n;
  Mat2 M = Mat2::Zero();
  for (const auto& p : points) M += (p - c) * (p - c).transpose();
  Eigen::SelfAdjointEigenSolver<Mat2> eig(M);

  LineFit fit;
  fit.spread = std::sqrt(std::max(0.0, eig.eigenvalues()(1)) / n);
  const double point_like = 1e-9 * (c.norm() + 1e-12);
  if (fit.spread <= point_like && c.norm() > 0.0) {
    fit.normal = c.normalized();
  } else {
    fit.normal = eig.eigenvectors().col(0);  // smallest-variance direction
  }
  fit.offset = fit.normal.dot(c);
  for (const auto& p : points)
    fit.max_deviation =
        std::max(fit.max_deviation, std::abs(fit.normal.dot(p - c)));
  return fit;
}

/// Algebraic (Kasa) circle fit: least squares on
/// x^2 + y^2 + B x + C y + D = 0. Residual is the rms radial misfit.
struct CircleFit {
  Vec2 center = Vec2::Zero();
  double radius = 0.0;
  double rms = 0.0;
};

inline CircleFit fit_circle(const std::vector<Vec2>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw TooFewSamples("fit_circle: need at least 3 points");
  MatX A(n, 3);
  VecX b(n);
  for (int i = 0; i < n; ++i) {
    A(i, 0) = points[i].x();
    A(i, 1) = points[i].y();
    A(i, 2) = 1.0;
    b(i) = -points[i].squaredNorm();
  }
  Eigen::ColPivHouseholderQR<MatX> qr(A);
  if (qr.rank() < 3)
    throw DegenerateFit("fit_circle: samples are collinear or coincident");
  const Eigen::Vector3d sol = qr.solve(b);
  CircleFit fit;
  fit.center = Vec2(-0.5 * sol(0), -0.5 * sol(1));
  const double r2 = fit.center.squaredNorm() - sol(2);
  if (!(r2 > 0.0)) throw DegenerateFit("fit_circle: nonpositive radius");
  fit.radius = std::sqrt(r2);
  double sq = 0.0;
  for (const auto& p : points) {
    const double d = (p - fit.center).norm() - fit.radius;
    sq += d * d;
  }
  fit.rms = std::sqrt(sq / n);
  return fit;
}

}  // namespace rmf

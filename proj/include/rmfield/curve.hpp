#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "rmfield/numerics.hpp"
#include "rmfield/types.hpp"

namespace rmf {

enum class CurveKind { analytic, sampled };

/// A curve source: either a built-in analytic family with parameters, or a
/// table of samples with strictly increasing parameter values. All geometry
/// operations accept both; analytic curves evaluate derivatives in closed
/// form, sampled curves go through local polynomial interpolation.
struct CurveSpec {
  Ambient ambient;
  CurveKind kind = CurveKind::analytic;

  // analytic
  std::string family;
  std::map<std::string, double> params;

  // sampled
  std::vector<double> ts;
  std::vector<VecX> points;

  double t_min = 0.0;
  double t_max = 1.0;

  double param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

inline CurveSpec make_analytic(Ambient ambient, std::string family,
                               std::map<std::string, double> params,
                               double t_min, double t_max) {
  CurveSpec c;
  c.ambient = ambient;
  c.kind = CurveKind::analytic;
  c.family = std::move(family);
  c.params = std::move(params);
  c.t_min = t_min;
  c.t_max = t_max;
  return c;
}

inline CurveSpec make_sampled(Ambient ambient, std::vector<double> ts,
                              std::vector<VecX> points) {
  CurveSpec c;
  c.ambient = ambient;
  c.kind = CurveKind::sampled;
  c.ts = std::move(ts);
  c.points = std::move(points);
  if (c.ts.size() < 4) throw TooFewSamples("sampled curve needs >= 4 samples");
  if (c.ts.size() != c.points.size())
    throw GridMismatch("sampled curve: ts/points size mismatch");
  detail::check_strictly_increasing(c.ts);
  c.t_min = c.ts.front();
  c.t_max = c.ts.back();
  return c;
}

namespace detail {

inline VecX embed_plane(int dim, double x, double y) {
  VecX v = VecX::Zero(dim);
  v(0) = x;
  v(1) = y;
  return v;
}

/// Closed-form evaluation of the built-in analytic families.
inline VecX analytic_eval(const CurveSpec& c, double t, int order) {
  const int dim = c.ambient.dim();
  const auto& f = c.family;

  if (f == "line") {
    VecX p = VecX::Zero(dim), d = VecX::Zero(dim);
    bool has_dir = false;
    for (int i = 0; i < dim; ++i) {
      auto pi = c.params.find("p" + std::to_string(i));
      if (pi != c.params.end()) p(i) = pi->second;
      auto di = c.params.find("d" + std::to_string(i));
      if (di != c.params.end()) {
        d(i) = di->second;
        has_dir = true;
      }
    }
    if (!has_dir) d(0) = 1.0;
    if (order == 0) return p + t * d;
    if (order == 1) return d;
    return VecX::Zero(dim);
  }

  if (f == "circle" || f == "ellipse") {
    const double a = f == "circle" ? c.param("r", 1.0) : c.param("a", 2.0);
    const double b = f == "circle" ? c.param("r", 1.0) : c.param("b", 1.0);
    VecX v = VecX::Zero(dim);
    const double ct = std::cos(t), st = std::sin(t);
    if (order == 0) {
      v(0) = a * ct;
      v(1) = b * st;
      for (int i = 0; i < dim; ++i)
        v(i) += c.param("c" + std::to_string(i), 0.0);
    } else if (order == 1) {
      v(0) = -a * st;
      v(1) = b * ct;
    } else {
      v(0) = -a * ct;
      v(1) = -b * st;
    }
    return v;
  }

  if (f == "ellipse_evolute") {
    // Locus of centers of curvature of (a cos t, b sin t).
    const double a = c.param("a", 2.0), b = c.param("b", 1.0);
    const double e2 = a * a - b * b;
    const double ct = std::cos(t), st = std::sin(t);
    VecX v = VecX::Zero(dim);
    if (order == 0) {
      v(0) = e2 / a * ct * ct * ct;
      v(1) = -e2 / b * st * st * st;
    } else if (order == 1) {
      v(0) = -3.0 * e2 / a * ct * ct * st;
      v(1) = -3.0 * e2 / b * st * st * ct;
    } else {
      v(0) = -3.0 * e2 / a * (ct * ct * ct - 2.0 * ct * st * st);
      v(1) = -3.0 * e2 / b * (2.0 * st * ct * ct - st * st * st);
    }
    return v;
  }

  if (f == "helix") {
    const double a = c.param("a", 1.0), b = c.param("b", 1.0);
    VecX v = VecX::Zero(dim);
    if (order == 0)
      v << a * std::cos(t), a * std::sin(t), b * t;
    else if (order == 1)
      v << -a * std::sin(t), a * std::cos(t), b;
    else
      v << -a * std::cos(t), -a * std::sin(t), 0.0;
    return v;
  }

  if (f == "sphere_curve") {
    // R (cos(a t), sin(a t) cos(b t), sin(a t) sin(b t)), on the radius-R
    // sphere for every parameter choice.
    const double R = c.param("R", 1.0);
    const double a = c.param("a", 1.0), b = c.param("b", 2.0);
    const double sa = std::sin(a * t), ca = std::cos(a * t);
    const double sb = std::sin(b * t), cb = std::cos(b * t);
    VecX v = VecX::Zero(dim);
    if (order == 0) {
      v << R * ca, R * sa * cb, R * sa * sb;
    } else if (order == 1) {
      v << -R * a * sa, R * (a * ca * cb - b * sa * sb),
          R * (a * ca * sb + b * sa * cb);
    } else {
      v << -R * a * a * ca,
          R * (-(a * a + b * b) * sa * cb - 2.0 * a * b * ca * sb),
          R * (-(a * a + b * b) * sa * sb + 2.0 * a * b * ca * cb);
    }
    return v;
  }

  if (f == "log_spiral") {
    // (e^t cos t, e^t sin t); not arc-length parametrized.
    const double et = std::exp(t), ct = std::cos(t), st = std::sin(t);
    if (order == 0) return embed_plane(dim, et * ct, et * st);
    if (order == 1) return embed_plane(dim, et * (ct - st), et * (st + ct));
    return embed_plane(dim, -2.0 * et * st, 2.0 * et * ct);
  }

  if (f == "log_spiral_natural") {
    // Arc-length parametrization of the spiral above, valid for s > -sqrt(2).
    const double r2 = std::numbers::sqrt2;
    const double u = 1.0 + t / r2;
    if (!(u > 0.0))
      throw OutOfRange("log_spiral_natural: parameter must exceed -sqrt(2)");
    const double L = std::log(u);
    const double cL = std::cos(L), sL = std::sin(L);
    if (order == 0) return embed_plane(dim, u * cL, u * sL);
    if (order == 1) return embed_plane(dim, (cL - sL) / r2, (sL + cL) / r2);
    return embed_plane(dim, -(sL + cL) / (2.0 * u), (cL - sL) / (2.0 * u));
  }

  if (f == "hyp_vertical_ray") {
    // Vertical geodesic of the upper half-space, unit speed in g.
    const double x = c.param("x", 0.0), y = c.param("y", 0.0);
    const double z0 = c.param("z0", 1.0);
    VecX v = VecX::Zero(dim);
    v(2) = z0 * std::exp(t);  // all orders share the exponential
    if (order == 0) {
      v(0) = x;
      v(1) = y;
    }
    return v;
  }

  if (f == "hyp_semicircle") {
    // Semicircle geodesic orthogonal to {z = 0}, unit speed in g.
    const double cx = c.param("cx", 0.0), y = c.param("y", 0.0);
    const double r = c.param("r", 1.0);
    const double th = std::tanh(t), se = 1.0 / std::cosh(t);
    VecX v = VecX::Zero(dim);
    if (order == 0) {
      v << cx + r * th, y, r * se;
    } else if (order == 1) {
      v << r * se * se, 0.0, -r * se * th;
    } else {
      v << -2.0 * r * se * se * th, 0.0, -r * se * (se * se - th * th);
    }
    return v;
  }

  throw ParseError("unknown analytic family '" + f + "'");
}

/// Local polynomial interpolation of a sampled curve (Fornberg weights on
/// the nearest nodes), usable at any parameter inside the range.
inline VecX sampled_eval(const CurveSpec& c, double t, int order) {
  const int n = static_cast<int>(c.ts.size());
  const int width = std::min(7, n);
  auto it = std::upper_bound(c.ts.begin(), c.ts.end(), t);
  int i = static_cast<int>(it - c.ts.begin()) - 1;
  i = std::max(0, std::min(i, n - 1));
  const int first = detail::stencil_start(i, n, width);
  std::vector<double> nodes(c.ts.begin() + first, c.ts.begin() + first + width);
  const MatX w = fornberg_weights(nodes, t, order);
  VecX acc = w(0, order) * c.points[first];
  for (int k = 1; k < width; ++k) acc += w(k, order) * c.points[first + k];
  return acc;
}

inline VecX evaluate_unchecked(const CurveSpec& c, double t, int order) {
  return c.kind == CurveKind::analytic ? analytic_eval(c, t, order)
                                       : sampled_eval(c, t, order);
}

}  // namespace detail

inline void check_in_range(const CurveSpec& c, double t) {
  const double slack = 1e-9 * (std::abs(c.t_max - c.t_min) + 1.0);
  if (t < c.t_min - slack || t > c.t_max + slack)
    throw OutOfRange("parameter " + std::to_string(t) + " outside [" +
                     std::to_string(c.t_min) + ", " + std::to_string(c.t_max) +
                     "]");
}

/// Evaluates gamma(t), gamma'(t) or gamma''(t). First-derivative results are
/// checked against the regularity floor.
inline VecX evaluate(const CurveSpec& c, double t, int order,
                     const Tolerances& tol = {}) {
  if (order < 0 || order > 2) throw Error("evaluate: order must be 0, 1 or 2");
  check_in_range(c, t);
  VecX v = detail::evaluate_unchecked(c, t, order);
  if (order == 1 && v.norm() <= tol.reg)
    throw DegenerateCurve("curve fails regularity at t = " + std::to_string(t));
  return v;
}

/// Validates the CurveSpec invariants (sample grid, regularity probe, and
/// the half-space constraint for hyperbolic curves).
inline void validate(const CurveSpec& c, const Tolerances& tol = {}) {
  if (c.kind == CurveKind::sampled) {
    if (c.ts.size() < 4) throw TooFewSamples("sampled curve needs >= 4 samples");
    if (c.ts.size() != c.points.size())
      throw GridMismatch("sampled curve: ts/points size mismatch");
    detail::check_strictly_increasing(c.ts);
    const int dim = c.ambient.dim();
    for (const auto& p : c.points)
      if (p.size() != dim)
        throw DimensionMismatch("sample dimension does not match ambient");
  }
  if (c.ambient.space == Ambient::Space::hyp_half_space3) {
    const int probes = c.kind == CurveKind::sampled
                           ? static_cast<int>(c.ts.size())
                           : 33;
    for (int i = 0; i < probes; ++i) {
      const double t = c.kind == CurveKind::sampled
                           ? c.ts[i]
                           : c.t_min + (c.t_max - c.t_min) * i / (probes - 1);
      if (detail::evaluate_unchecked(c, t, 0)(2) <= 0.0)
        throw NotInHalfSpace("curve leaves the upper half-space at t = " +
                             std::to_string(t));
    }
  }
  (void)tol;
}

/// Ambient-aware speed ||gamma'(t)||; hyperbolic curves are measured in the
/// half-space metric.
inline double speed(const CurveSpec& c, double t, const Tolerances& tol = {}) {
  const VecX d = evaluate(c, t, 1, tol);
  if (c.ambient.space == Ambient::Space::hyp_half_space3) {
    const double z = detail::evaluate_unchecked(c, t, 0)(2);
    if (z <= 0.0) throw NotInHalfSpace("speed: point not in half-space");
    return d.norm() / z;
  }
  return d.norm();
}

inline std::vector<double> uniform_grid(double t0, double t1, int count) {
  std::vector<double> ts(count);
  for (int i = 0; i < count; ++i)
    ts[i] = i + 1 == count ? t1 : t0 + (t1 - t0) * i / (count - 1);
  return ts;
}

/// Resamples onto a uniform parameter grid of `count` points.
inline CurveSpec resample(const CurveSpec& c, int count,
                          const Tolerances& tol = {}) {
  if (count < 4) throw TooFewSamples("resample: count must be >= 4");
  std::vector<double> ts = uniform_grid(c.t_min, c.t_max, count);
  std::vector<VecX> points;
  points.reserve(count);
  for (double t : ts) {
    evaluate(c, t, 1, tol);  // regularity probe
    points.push_back(detail::evaluate_unchecked(c, t, 0));
  }
  CurveSpec out = make_sampled(c.ambient, std::move(ts), std::move(points));
  return out;
}

/// Arc length of the curve over its range (ambient metric), by quadrature on
/// a fine grid.
inline double arc_length(const CurveSpec& c, int grid = 4096,
                         const Tolerances& tol = {}) {
  std::vector<double> ts = uniform_grid(c.t_min, c.t_max, grid);
  std::vector<double> sp(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) sp[i] = speed(c, ts[i], tol);
  return cumulative_integral(ts, sp).back();
}

/// Reparametrizes by arc length: returns a sampled curve on a uniform
/// arc-length grid [0, L] with `count` samples. Works in the ambient metric,
/// so hyperbolic curves come back unit speed in g.
inline CurveSpec reparametrize_by_arc_length(const CurveSpec& c, int count,
                                             const Tolerances& tol = {}) {
  if (count < 4) throw TooFewSamples("reparametrize: count must be >= 4");
  const int fine = std::max(8 * count, 4096);
  std::vector<double> ts = uniform_grid(c.t_min, c.t_max, fine);
  std::vector<double> sp(ts.size());
  for (int i = 0; i < fine; ++i) sp[i] = speed(c, ts[i], tol);
  const std::vector<double> S = cumulative_integral(ts, sp);
  const double L = S.back();

  std::vector<double> out_s = uniform_grid(0.0, L, count);
  std::vector<VecX> points;
  points.reserve(count);
  for (double target : out_s) {
    auto it = std::upper_bound(S.begin(), S.end(), target);
    int i = static_cast<int>(it - S.begin()) - 1;
    i = std::max(0, std::min(i, fine - 2));
    double t = ts[i] + (ts[i + 1] - ts[i]) *
                           ((target - S[i]) / std::max(S[i + 1] - S[i], 1e-300));
    // Newton refinement on s(t) - target, with s interpolated locally and
    // s'(t) = speed(t) exact.
    for (int iter = 0; iter < 4; ++iter) {
      const int first = detail::stencil_start(i, fine, 4);
      std::vector<double> nodes(ts.begin() + first, ts.begin() + first + 4);
      const MatX w = fornberg_weights(nodes, t, 0);
      double s_here = 0.0;
      for (int k = 0; k < 4; ++k) s_here += w(k, 0) * S[first + k];
      const double v = speed(c, t, tol);
      t -= (s_here - target) / v;
      t = std::max(c.t_min, std::min(c.t_max, t));
    }
    points.push_back(detail::evaluate_unchecked(c, t, 0));
  }
  CurveSpec out = make_sampled(c.ambient, std::move(out_s), std::move(points));
  return out;
}

/// Unit normal vector samples along a curve; the object RM-ness is
/// predicated of. Orthogonality and unit norm are in the ambient metric.
struct NormalField {
  CurveSpec curve;
  std::vector<double> ts;
  std::vector<Vec3> normals;
};

/// Output of the RM transports: frame samples along the curve together with
/// the natural curvatures extracted from them. Tangents are unit in the
/// ambient metric; kappa values are with respect to arc length.
struct TransportedFrame {
  CurveSpec curve;
  std::vector<double> ts;
  std::vector<Vec3> point;
  std::vector<Vec3> tangent;
  std::vector<Vec3> normal1;
  std::vector<Vec3> normal2;
  std::vector<double> kappa1;
  std::vector<double> kappa2;

  NormalField field(int which = 1) const {
    return NormalField{curve, ts, which == 1 ? normal1 : normal2};
  }

  NaturalCurvatures curvatures() const {
    NaturalCurvatures nc;
    nc.ts = ts;
    nc.kappas.reserve(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      VecX k(2);
      k << kappa1[i], kappa2[i];
      nc.kappas.push_back(std::move(k));
    }
    return nc;
  }

  Frame frame_at(std::size_t i) const {
    Frame f;
    f.point = point[i];
    f.vectors = {tangent[i], normal1[i], normal2[i]};
    return f;
  }
};

}  // namespace rmf

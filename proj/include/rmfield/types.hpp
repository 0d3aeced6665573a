#pragma once

#include <Eigen/Core>
#include <Eigen/Dense>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmf {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using VecX = Eigen::VectorXd;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using MatX = Eigen::MatrixXd;

/// Numerical thresholds shared across the library. Every entry can be
/// overridden per call; these are the documented defaults.
struct Tolerances {
  double orth = 1e-8;      ///< frame orthonormality
  double reg = 1e-9;       ///< regularity floor for the speed
  double residual = 1e-6;  ///< verdict threshold for residual reports
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};
class DegenerateCurve : public Error {
 public:
  using Error::Error;
};
class NonFiniteState : public Error {
 public:
  using Error::Error;
};
class TooFewSamples : public Error {
 public:
  using Error::Error;
};
class DependentInput : public Error {
 public:
  using Error::Error;
};
class GridMismatch : public Error {
 public:
  using Error::Error;
};
class FrenetUndefined : public Error {
 public:
  using Error::Error;
};
class CuspOnWindow : public Error {
 public:
  using Error::Error;
};
class CoincidentCurves : public Error {
 public:
  using Error::Error;
};
class DegenerateDevelopment : public Error {
 public:
  using Error::Error;
};
class DegenerateFit : public Error {
 public:
  using Error::Error;
};
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};
class NotInHalfSpace : public Error {
 public:
  using Error::Error;
};
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Identifies the ambient manifold a curve lives in.
struct Ambient {
  enum class Space { euclid3, hyp_half_space3, flat_complex };

  Space space = Space::euclid3;
  int complex_dim = 1;  // n for flat_complex, real dimension 2n

  static Ambient euclid3() { return {Space::euclid3, 1}; }
  static Ambient hyp3() { return {Space::hyp_half_space3, 1}; }
  static Ambient complex_n(int n) {
    if (n < 1) throw DimensionMismatch("complex dimension must be positive");
    return {Space::flat_complex, n};
  }

  int dim() const {
    return space == Space::flat_complex ? 2 * complex_dim : 3;
  }

  bool operator==(const Ambient& o) const {
    return space == o.space &&
           (space != Space::flat_complex || complex_dim == o.complex_dim);
  }
};

/// An orthonormal moving-frame snapshot: base point plus the frame vectors,
/// tangent first. Orthonormality is with respect to the ambient metric at
/// the point and is the caller's invariant to keep.
struct Frame {
  VecX point;
  std::vector<VecX> vectors;
};

/// Per-sample natural curvatures kappa_1..kappa_{n-1} along a curve.
struct NaturalCurvatures {
  std::vector<double> ts;
  std::vector<VecX> kappas;
};

/// A rows x cols grid of points with quad connectivity, used for ruled and
/// swept surfaces. Half-space meshes store model coordinates as-is.
struct SurfaceMesh {
  int rows = 0;
  int cols = 0;
  std::vector<Vec3> points;               // row-major, rows*cols entries
  std::vector<std::array<int, 4>> quads;  // CCW corner indices
  std::vector<double> row_params;         // parameter s per row
  std::vector<double> col_params;         // parameter lambda per column
  std::string warning;                    // nonempty when flagged degenerate

  const Vec3& at(int r, int c) const { return points[r * cols + c]; }
};

inline void build_quads(SurfaceMesh& mesh) {
  mesh.quads.clear();
  for (int r = 0; r + 1 < mesh.rows; ++r)
    for (int c = 0; c + 1 < mesh.cols; ++c)
      mesh.quads.push_back({r * mesh.cols + c, r * mesh.cols + c + 1,
                            (r + 1) * mesh.cols + c + 1,
                            (r + 1) * mesh.cols + c});
}

inline void validate(const SurfaceMesh& mesh) {
  if (mesh.rows < 2 || mesh.cols < 2)
    throw DimensionMismatch("surface mesh must be at least 2x2");
  if (static_cast<int>(mesh.points.size()) != mesh.rows * mesh.cols)
    throw DimensionMismatch("surface mesh point count mismatch");
  for (const auto& q : mesh.quads)
    for (int idx : q)
      if (idx < 0 || idx >= static_cast<int>(mesh.points.size()))
        throw DimensionMismatch("surface mesh quad index out of range");
}

}  // namespace rmf

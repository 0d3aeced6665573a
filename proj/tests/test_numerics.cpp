#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "rmfield/numerics.hpp"

using namespace rmf;

namespace {

VecX scalar(double v) {
  VecX x(1);
  x << v;
  return x;
}

}  // namespace

TEST_CASE("rk4 keeps a constant solution constant") {
  OdeSystem sys{1, [](double, const VecX& y) { return VecX::Zero(y.size()); }};
  auto traj = rk4(sys, scalar(3.0), 0.0, 1.0, 10);
  CHECK(traj.ts.size() == 11);
  for (const auto& y : traj.states) CHECK(y(0) == 3.0);
}

TEST_CASE("rk4 reproduces the exponential") {
  OdeSystem sys{1, [](double, const VecX& y) { return y; }};
  auto traj = rk4(sys, scalar(1.0), 0.0, 1.0, 1000);
  CHECK(std::abs(traj.states.back()(0) - std::exp(1.0)) < 1e-10);
}

TEST_CASE("rk4 closes the harmonic oscillator orbit") {
  OdeSystem sys{2, [](double, const VecX& y) {
                  VecX d(2);
                  d << y(1), -y(0);
                  return d;
                }};
  VecX y0(2);
  y0 << 1.0, 0.0;
  auto traj = rk4(sys, y0, 0.0, 2.0 * std::numbers::pi, 2000);
  CHECK((traj.states.back() - y0).norm() < 1e-8);
}

TEST_CASE("rk4 halving the step is fourth order") {
  OdeSystem sys{2, [](double t, const VecX& y) {
                  VecX d(2);
                  d << y(1), -std::sin(y(0)) - 0.3 * std::cos(t);
                  return d;
                }};
  VecX y0(2);
  y0 << 0.7, 0.2;
  auto exact = rk4(sys, y0, 0.0, 4.0, 16000).states.back();
  const double e1 = (rk4(sys, y0, 0.0, 4.0, 100).states.back() - exact).norm();
  const double e2 = (rk4(sys, y0, 0.0, 4.0, 200).states.back() - exact).norm();
  const double ratio = e1 / e2;
  CHECK(ratio > 8.0);
  CHECK(ratio < 32.0);
}

TEST_CASE("rk4 reports non-finite states") {
  OdeSystem sys{1, [](double, const VecX& y) { return VecX(y.array().square().matrix() * 1e8); }};
  CHECK_THROWS_AS(rk4(sys, scalar(10.0), 0.0, 10.0, 100), NonFiniteState);
}

TEST_CASE("finite_diff matches analytic derivatives") {
  const int n = 101;
  std::vector<double> ts(n);
  std::vector<VecX> sq(n), sn(n);
  for (int i = 0; i < n; ++i) {
    ts[i] = static_cast<double>(i) / (n - 1);
    sq[i] = scalar(ts[i] * ts[i]);
    sn[i] = scalar(std::sin(ts[i]));
  }

  auto d1 = finite_diff(ts, sq, 1);
  for (int i = 0; i < n; ++i)
    CHECK(std::abs(d1[i](0) - 2.0 * ts[i]) < 1e-6);

  auto d2 = finite_diff(ts, sn, 2);
  for (int i = 0; i < n; ++i)
    CHECK(std::abs(d2[i](0) + std::sin(ts[i])) < 1e-4);
}

TEST_CASE("finite_diff of constants is exactly zero") {
  std::vector<double> ts{0.0, 0.13, 0.21, 0.5, 0.77, 1.0};
  std::vector<VecX> vs(ts.size(), scalar(4.2));
  for (const auto& d : finite_diff(ts, vs, 1)) CHECK(d(0) == 0.0);
}

TEST_CASE("finite_diff rejects short series") {
  std::vector<double> ts{0.0, 0.5, 1.0, 1.5};
  std::vector<VecX> vs(ts.size(), scalar(0.0));
  CHECK_THROWS_AS(finite_diff(ts, vs, 2), TooFewSamples);
}

TEST_CASE("cumulative_integral is fourth order against adaptive Simpson") {
  const int n = 201;
  std::vector<double> ts(n), fs(n);
  for (int i = 0; i < n; ++i) {
    ts[i] = 3.0 * i / (n - 1);
    fs[i] = std::exp(-ts[i]) * std::cos(2.0 * ts[i]);
  }
  auto F = cumulative_integral(ts, fs);
  auto f = [](double t) { return std::exp(-t) * std::cos(2.0 * t); };
  for (int i : {50, 120, 200}) {
    const double ref = oracles::adaptive_simpson(f, 0.0, ts[i]);
    CHECK(std::abs(F[i] - ref) < 1e-9);
  }
}

TEST_CASE("gram_det identity and dependence") {
  EuclideanMetric g;
  std::vector<VecX> basis{VecX(Vec3(1, 0, 0)), VecX(Vec3(0, 1, 0)),
                          VecX(Vec3(0, 0, 1))};
  CHECK(gram_det(g, basis) == doctest::Approx(1.0));

  std::vector<VecX> dep{VecX(Vec3(1, 2, 0)), VecX(Vec3(2, 4, 0)),
                        VecX(Vec3(0, 1, 1))};
  CHECK(std::abs(gram_det(g, dep)) < 1e-14);
}

TEST_CASE("gram_det under the half-space metric") {
  // g = delta / z^2 at (0,0,2) gives Gram diag(1/4, 1/4).
  auto g = [](const VecX& u, const VecX& v) { return u.dot(v) / 4.0; };
  std::vector<VecX> vs{VecX(Vec3(1, 0, 0)), VecX(Vec3(0, 1, 0))};
  CHECK(gram_det(g, vs) == doctest::Approx(1.0 / 16.0));
}

TEST_CASE("gram_det is invariant under vector permutation") {
  EuclideanMetric g;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<VecX> vs;
  for (int k = 0; k < 3; ++k)
    vs.push_back(VecX(Vec3(u(rng), u(rng), u(rng))));
  const double d0 = gram_det(g, vs);
  std::swap(vs[0], vs[2]);
  CHECK(gram_det(g, vs) == doctest::Approx(d0));
}

TEST_CASE("orthonormalize under Euclidean and scaled metrics") {
  EuclideanMetric g;
  auto single = orthonormalize(g, {VecX(Vec3(2, 0, 0))});
  CHECK((single[0] - VecX(Vec3(1, 0, 0))).norm() < 1e-15);

  auto pair = orthonormalize(g, {VecX(Vec3(1, 1, 0)), VecX(Vec3(0, 1, 0))});
  const double s = 1.0 / std::numbers::sqrt2;
  CHECK((pair[0] - VecX(Vec3(s, s, 0))).norm() < 1e-14);
  CHECK((pair[1] - VecX(Vec3(-s, s, 0))).norm() < 1e-14);

  // already unit under g = delta / z^2 at z = 1
  auto half = [](const VecX& u, const VecX& v) { return u.dot(v); };
  auto one = orthonormalize(half, {VecX(Vec3(1, 0, 0))});
  CHECK((one[0] - VecX(Vec3(1, 0, 0))).norm() < 1e-15);
}

TEST_CASE("orthonormalize output Gram is the identity") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto g = [](const VecX& a, const VecX& b) {
    return 2.0 * a(0) * b(0) + 0.5 * a(1) * b(1) + a(2) * b(2);
  };
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<VecX> vs;
    for (int k = 0; k < 3; ++k)
      vs.push_back(VecX(Vec3(u(rng), u(rng), u(rng))));
    if (std::abs(gram_det(g, vs)) < 1e-3) continue;
    auto q = orthonormalize(g, vs);
    const MatX G = gram_matrix(g, q);
    CHECK((G - MatX::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("orthonormalize rejects dependent input") {
  EuclideanMetric g;
  CHECK_THROWS_AS(
      orthonormalize(g, {VecX(Vec3(1, 0, 0)), VecX(Vec3(2, 0, 0))}),
      DependentInput);
}

TEST_CASE("fit_line_tls recovers an exact line") {
  std::vector<Vec2> pts;
  for (int i = 0; i <= 20; ++i) {
    const double t = -1.0 + 0.1 * i;
    pts.emplace_back(1.0 + t, 2.0 - t);  // line x + y = 3
  }
  auto fit = fit_line_tls(pts);
  CHECK(std::abs(std::abs(fit.offset) - 3.0 / std::numbers::sqrt2) < 1e-12);
  CHECK(fit.max_deviation < 1e-12);
}

TEST_CASE("fit_line_tls handles a collapsed cloud") {
  std::vector<Vec2> pts(10, Vec2(0.5, 0.0));
  auto fit = fit_line_tls(pts);
  CHECK(std::abs(fit.offset) == doctest::Approx(0.5));
}

TEST_CASE("fit_circle recovers center and radius") {
  std::vector<Vec2> pts;
  for (int i = 0; i < 40; ++i) {
    const double t = 2.0 * std::numbers::pi * i / 40.0;
    pts.emplace_back(0.3 + 2.0 * std::cos(t), -1.0 + 2.0 * std::sin(t));
  }
  auto fit = fit_circle(pts);
  CHECK((fit.center - Vec2(0.3, -1.0)).norm() < 1e-12);
  CHECK(fit.radius == doctest::Approx(2.0));
  CHECK(fit.rms < 1e-12);
}

TEST_CASE("fit_circle rejects collinear samples") {
  std::vector<Vec2> pts;
  for (int i = 0; i < 10; ++i) pts.emplace_back(i, 2.0 * i);
  CHECK_THROWS_AS(fit_circle(pts), DegenerateFit);
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "elastica/manifold.hpp"
#include "fixtures.hpp"

using namespace elastica;
using fixtures::vec;

namespace {

// Geodesic x'' = -|x'|^2 x / rho^2 on the sphere, integrated with RK4 in the
// ambient space. Independent of the closed-form exp.
Point integrate_sphere_geodesic(const Point& p, const Vector& v, double rho, int steps) {
  Vector x = p, u = v;
  const double h = 1.0 / steps;
  auto acc = [&](const Vector& y, const Vector& w) -> Vector { return -(w.squaredNorm() / (rho * rho)) * y; };
  for (int i = 0; i < steps; ++i) {
    Vector k1x = u, k1u = acc(x, u);
    Vector k2x = u + 0.5 * h * k1u, k2u = acc(x + 0.5 * h * k1x, u + 0.5 * h * k1u);
    Vector k3x = u + 0.5 * h * k2u, k3u = acc(x + 0.5 * h * k2x, u + 0.5 * h * k2u);
    Vector k4x = u + h * k3u, k4u = acc(x + h * k3x, u + h * k3u);
    x += h / 6 * (k1x + 2 * k2x + 2 * k3x + k4x);
    u += h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
  }
  return x;
}

// Transport ODE V' = -(V . x') x / rho^2 along the unit-speed great circle from
// p towards q.
Vector integrate_sphere_transport(const Point& p, const Point& q, const Vector& v, int steps) {
  const double theta = std::acos(std::clamp(p.dot(q), -1.0, 1.0));
  Vector e = (q - p.dot(q) * p).normalized();
  auto x = [&](double s) -> Vector { return std::cos(s) * p + std::sin(s) * e; };
  auto dx = [&](double s) -> Vector { return -std::sin(s) * p + std::cos(s) * e; };
  auto f = [&](double s, const Vector& w) -> Vector { return -(w.dot(dx(s))) * x(s); };
  Vector w = v;
  const double h = theta / steps;
  for (int i = 0; i < steps; ++i) {
    const double s = i * h;
    Vector k1 = f(s, w), k2 = f(s + h / 2, w + h / 2 * k1), k3 = f(s + h / 2, w + h / 2 * k2),
           k4 = f(s + h, w + h * k3);
    w += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return w;
}

double minkowski(const Vector& a, const Vector& b) { return a.dot(b) - 2 * a[0] * b[0]; }

}  // namespace

TEST(ManifoldSpec, DerivedQuantities) {
  EXPECT_EQ(ManifoldSpec::euclidean(3).sectional_curvature(), 0.0);
  EXPECT_DOUBLE_EQ(ManifoldSpec::sphere(2, 2.0).sectional_curvature(), 0.25);
  EXPECT_DOUBLE_EQ(ManifoldSpec::sphere(2, 2.0).injectivity_radius(), 2.0 * M_PI);
  EXPECT_EQ(ManifoldSpec::hyperbolic(2).sectional_curvature(), -1.0);
  EXPECT_EQ(ManifoldSpec::hyperbolic(2).curvature_bound(), 1.0);
  EXPECT_TRUE(std::isinf(ManifoldSpec::hyperbolic(2).injectivity_radius()));
  EXPECT_THROW(ManifoldSpec::sphere(2, -1.0).validate(), Error);
  EXPECT_THROW(ManifoldSpec::euclidean(0).validate(), Error);
}

TEST(Inner, Examples) {
  const auto e = ManifoldSpec::euclidean(2);
  EXPECT_EQ(inner(e, vec({0, 0}), {vec({0, 0}), vec({1, 0})}, {vec({0, 0}), vec({0, 1})}), 0.0);

  const auto s = ManifoldSpec::sphere(2);
  const Point north = vec({0, 0, 1});
  EXPECT_DOUBLE_EQ(inner(s, north, {north, vec({1, 0, 0})}, {north, vec({1, 0, 0})}), 1.0);

  // Tangent at the vertex with Minkowski norm^2 = 4.
  const auto h = ManifoldSpec::hyperbolic(2);
  const Point o = vec({1, 0, 0});
  const Vector u = vec({0, 2 * std::cos(0.3), 2 * std::sin(0.3)});
  EXPECT_NEAR(minkowski(u, u), 4.0, 1e-14);
  EXPECT_NEAR(inner(h, o, {o, u}, {o, u}), 4.0, 1e-12);

  // Away from the vertex the form is still Minkowski.
  const Point p = vec({std::cosh(1.0), std::sinh(1.0), 0});
  const Vector w = 2.0 * vec({std::sinh(1.0), std::cosh(1.0), 0});
  EXPECT_NEAR(inner(h, p, {p, w}, {p, w}), 4.0, 1e-12);
}

TEST(Inner, BaseMismatchIsInvalidArgument) {
  const auto s = ManifoldSpec::sphere(2);
  try {
    inner(s, vec({0, 0, 1}), {vec({1, 0, 0}), vec({0, 1, 0})}, {vec({0, 0, 1}), vec({0, 1, 0})});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(Exp, ZeroAndFlat) {
  for (const auto& m : fixtures::all_backends()) {
    const Point p = base_point(m);
    EXPECT_LT((exp(m, p, {p, Vector::Zero(m.ambient_dim())}) - p).norm(), 1e-15);
  }
  const auto e = ManifoldSpec::euclidean(2);
  EXPECT_EQ(exp(e, vec({1, 2}), {vec({1, 2}), vec({0.5, -1})}), vec({1.5, 1}));
}

TEST(Exp, QuarterGreatCircleMatchesOdeIntegration) {
  const auto s = ManifoldSpec::sphere(2);
  const Point p = vec({0, 0, 1});
  const Vector v = vec({M_PI / 2, 0, 0});
  const Point q = exp(s, p, {p, v});
  const Point oracle = integrate_sphere_geodesic(p, v, 1.0, 4000);
  EXPECT_LT((oracle - vec({1, 0, 0})).norm(), 1e-10);
  EXPECT_LT((q - oracle).norm(), 1e-10);
}

TEST(Log, Examples) {
  const auto e = ManifoldSpec::euclidean(2);
  EXPECT_EQ(log(e, vec({1, 1}), vec({2, 3})).vec, vec({1, 2}));

  const auto s = ManifoldSpec::sphere(2);
  const Point p = vec({0, 0, 1});
  EXPECT_LT(log(s, p, p).vec.norm(), 1e-15);
  const Tangent l = log(s, p, vec({1, 0, 0}));
  EXPECT_NEAR(l.vec.norm(), M_PI / 2, 1e-14);
  EXPECT_LT((l.vec - vec({M_PI / 2, 0, 0})).norm(), 1e-14);
}

TEST(Log, AntipodalIsInjectivityViolation) {
  const auto s = ManifoldSpec::sphere(2);
  try {
    log(s, vec({0, 0, 1}), vec({0, 0, -1}));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::InjectivityViolation);
  }
}

TEST(Transport, Examples) {
  const auto e = ManifoldSpec::euclidean(2);
  EXPECT_EQ(transport(e, vec({0, 0}), vec({3, 1}), {vec({0, 0}), vec({1, 2})}).vec, vec({1, 2}));

  const auto s = ManifoldSpec::sphere(2);
  const Point p = vec({0, 0, 1}), q = vec({1, 0, 0});
  EXPECT_LT((transport(s, p, p, {p, vec({0.3, 0.2, 0})}).vec - vec({0.3, 0.2, 0})).norm(), 1e-15);
  const Vector fixed = transport(s, p, q, {p, vec({0, 1, 0})}).vec;
  EXPECT_LT((fixed - vec({0, 1, 0})).norm(), 1e-14);
  EXPECT_LT((integrate_sphere_transport(p, q, vec({0, 1, 0}), 2000) - vec({0, 1, 0})).norm(), 1e-12);
}

TEST(Transport, MatchesOdeTransportOnSphere) {
  std::mt19937_64 rng(7);
  const auto s = ManifoldSpec::sphere(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Point p = fixtures::random_point(s, rng);
    const Point q = exp(s, p, {p, fixtures::random_tangent(s, p, rng, 0.8)});
    const Vector v = fixtures::random_tangent(s, p, rng);
    const Vector closed_form = transport(s, p, q, {p, v}).vec;
    EXPECT_LT((closed_form - integrate_sphere_transport(p, q, v, 2000)).norm(), 1e-11);
  }
}

TEST(Curvature, Examples) {
  std::mt19937_64 rng(3);
  const auto e = ManifoldSpec::euclidean(3);
  const Point o = base_point(e);
  auto t = [&](const ManifoldSpec& m, const Point& p) { return Tangent{p, fixtures::random_tangent(m, p, rng)}; };
  EXPECT_EQ(curvature(e, o, t(e, o), t(e, o), t(e, o)).vec.norm(), 0.0);

  for (const auto& m : fixtures::all_backends()) {
    const Point p = base_point(m);
    const Tangent x = t(m, p);
    EXPECT_LT(curvature(m, p, x, x, t(m, p)).vec.norm(), 1e-15);
  }

  const auto s = ManifoldSpec::sphere(2);
  const Point north = vec({0, 0, 1});
  const Tangent X{north, vec({1, 0, 0})}, Y{north, vec({0, 1, 0})};
  EXPECT_LT((curvature(s, north, X, Y, Y).vec - X.vec).norm(), 1e-15);
}

class BackendProperties : public ::testing::TestWithParam<ManifoldSpec> {};

TEST_P(BackendProperties, ExpLogInversion) {
  const auto m = GetParam();
  std::mt19937_64 rng(11);
  const double reach = std::isinf(m.injectivity_radius()) ? 3.0 : 0.9 * m.injectivity_radius();
  std::uniform_real_distribution<double> len(0.0, reach);
  for (int trial = 0; trial < 200; ++trial) {
    const Point p = fixtures::random_point(m, rng);
    Vector v = fixtures::random_tangent(m, p, rng);
    v *= len(rng) / std::sqrt(inner(m, p, {p, v}, {p, v}));
    if (trial % 10 == 0) v *= 1e-8;  // exercise the series branch
    const Point q = exp(m, p, {p, v});
    EXPECT_TRUE(is_on_manifold(m, q, 1e-10));
    const Vector back = log(m, p, q).vec;
    const double vn = std::sqrt(inner(m, p, {p, v}, {p, v}));
    EXPECT_LE((back - v).norm(), 1e-9 * (1 + vn)) << "trial " << trial;
    EXPECT_NEAR(distance(m, p, q), vn, 1e-9 * (1 + vn));
  }
}

TEST_P(BackendProperties, TransportIsometryAndReversibility) {
  const auto m = GetParam();
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Point p = fixtures::random_point(m, rng);
    const Point q = exp(m, p, {p, fixtures::random_tangent(m, p, rng, 0.7)});
    const Vector v = fixtures::random_tangent(m, p, rng);
    const Tangent w = transport(m, p, q, {p, v});
    EXPECT_TRUE(is_tangent(m, q, w.vec, 1e-10));
    // Minkowski norms lose digits to cancellation; measure against the
    // ambient magnitudes that set the rounding scale.
    const double nv = norm(m, {p, v});
    const double scale = std::max(1.0, (v.squaredNorm() + w.vec.squaredNorm()) / std::max(nv, 1e-3));
    EXPECT_NEAR(norm(m, w), nv, 1e-12 * scale);
    EXPECT_LE((transport(m, q, p, w).vec - v).norm(), 1e-9);
  }
}

TEST_P(BackendProperties, CurvatureSymmetries) {
  const auto m = GetParam();
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Point p = fixtures::random_point(m, rng);
    auto t = [&] { return Tangent{p, fixtures::random_tangent(m, p, rng)}; };
    const Tangent X = t(), Y = t(), Z = t(), W = t();
    auto R = [&](const Tangent& a, const Tangent& b, const Tangent& c) { return curvature(m, p, a, b, c); };
    const double scale = 1.0 + X.vec.norm() * Y.vec.norm() * Z.vec.norm() * std::max(1.0, p.squaredNorm());
    EXPECT_LT((R(X, Y, Z).vec + R(Y, X, Z).vec).norm(), 1e-12 * scale);
    EXPECT_LT((R(X, Y, Z).vec + R(Y, Z, X).vec + R(Z, X, Y).vec).norm(), 1e-12 * scale);
    const double a = inner(m, p, R(X, Y, Z), W);
    const double b = inner(m, p, R(X, Y, W), Z);
    EXPECT_NEAR(a, -b, 1e-12 * scale * (1 + W.vec.norm()));
  }
}

TEST_P(BackendProperties, TangentFrameIsOrthonormal) {
  const auto m = GetParam();
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const Point p = fixtures::random_point(m, rng);
    const Eigen::MatrixXd E = tangent_frame(m, p);
    ASSERT_EQ(E.cols(), m.dim);
    for (int i = 0; i < m.dim; ++i) {
      EXPECT_TRUE(is_tangent(m, p, E.col(i), 1e-10));
      for (int j = 0; j < m.dim; ++j) {
        EXPECT_NEAR(inner(m, p, {p, E.col(i)}, {p, E.col(j)}), i == j ? 1.0 : 0.0, 1e-12);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllBackends, BackendProperties, ::testing::ValuesIn(fixtures::all_backends()),
                         [](const auto& info) {
                           return std::string(to_string(info.param.kind)) + std::to_string(info.param.dim);
                         });

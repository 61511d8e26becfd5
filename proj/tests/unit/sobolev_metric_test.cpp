#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "elastica/sobolev_metric.hpp"
#include "fixtures.hpp"

using namespace elastica;
using fixtures::vec;
using fixtures::scaled;

namespace {

VectorField constant_field(const DiscreteCurve& c, const Vector& v) {
  return VectorField(c, std::vector<Vector>(c.size(), v));
}

VectorField radial(const DiscreteCurve& c) {
  return sample_field(c, [](double t, const Point&) { return vec({std::cos(t), std::sin(t)}); });
}

}  // namespace

TEST(Coefficients, Examples) {
  EXPECT_EQ(coefficients(MetricSpec::constant({1, 0, 1}), 17.0), (std::vector<double>{1, 0, 1}));
  const auto si = coefficients(MetricSpec::scale_invariant({1, 0, 1}), 2.0);
  EXPECT_DOUBLE_EQ(si[0], 0.125);
  EXPECT_DOUBLE_EQ(si[1], 0.0);
  EXPECT_DOUBLE_EQ(si[2], 2.0);
  const auto cu = MetricSpec::make_custom({[](double) { return 1.0; }, [](double l) { return 1.0 / l; }});
  EXPECT_DOUBLE_EQ(coefficients(cu, 4.0)[1], 0.25);
  EXPECT_NEAR(coefficient_derivatives(cu, 4.0)[1], -1.0 / 16, 1e-9);
  EXPECT_NEAR(coefficient_derivatives(MetricSpec::scale_invariant({1, 1}), 2.0)[0], -3.0 / 16, 1e-15);
}

TEST(Coefficients, Invalid) {
  EXPECT_THROW(coefficients(MetricSpec::constant({1, 1}), 0.0), Error);
  EXPECT_THROW(MetricSpec::constant({0, 1}), Error);
  EXPECT_THROW(MetricSpec::constant({1, 1, 0}), Error);
  EXPECT_THROW(MetricSpec::constant({1}), Error);
  EXPECT_THROW(MetricSpec::constant({1, -1, 1}), Error);
}

TEST(InnerG, UnitCircleExamples) {
  // The iterated second-order D_s^2 loses 2/3 dtheta^2 relative on this
  // mode, so N = 512 is needed for the 1e-3 tolerance.
  const auto c = fixtures::circle(512);
  const auto spec = MetricSpec::constant({1, 0, 1});
  const auto e1 = constant_field(c, vec({1, 0}));
  EXPECT_NEAR(inner_G(spec, c, e1, e1), 2 * M_PI, 1e-4);
  const auto h = radial(c);
  EXPECT_NEAR(inner_G(spec, c, h, h), 4 * M_PI, 1e-3);
}

TEST(InnerG, ScaleInvariance) {
  std::mt19937_64 rng(21);
  const auto spec = MetricSpec::scale_invariant({1, 0.5, 2});
  const auto c = fixtures::ellipse(128, 1.3, 0.7);
  const auto h = fixtures::smooth_field(c, rng);
  const auto k = fixtures::smooth_field(c, rng);
  const double ref = inner_G(spec, c, h, k);
  for (double a : {0.5, 2.0}) {
    const auto ca = scaled(c, a);
    const VectorField ha(ca, (h * a).vectors()), ka(ca, (k * a).vectors());
    EXPECT_NEAR(inner_G(spec, ca, ha, ka), ref, 1e-6 * std::abs(ref));
  }
}

TEST(InnerG, SymmetryBilinearityPositivity) {
  std::mt19937_64 rng(22);
  for (const auto& c : {fixtures::sphere_circle(0.9, 96), fixtures::hyperbolic_circle(0.5, 96), fixtures::segment(80)}) {
    const auto spec = MetricSpec::constant({1, 0.3, 0.7});
    const auto h = fixtures::smooth_field(c, rng), k = fixtures::smooth_field(c, rng), f = fixtures::smooth_field(c, rng);
    const double hk = inner_G(spec, c, h, k);
    EXPECT_NEAR(hk, inner_G(spec, c, k, h), 1e-12 * (1 + std::abs(hk)));
    const double lin = inner_G(spec, c, h * 2.5 + f, k);
    EXPECT_NEAR(lin, 2.5 * hk + inner_G(spec, c, f, k), 1e-12 * (1 + std::abs(lin)));
    EXPECT_GT(inner_G(spec, c, h, h), 0.0);
  }
}

TEST(InnerG, MismatchedCurves) {
  const auto a = fixtures::circle(32), b = fixtures::circle(32, 2.0);
  try {
    inner_G(MetricSpec::constant({1, 1}), a, constant_field(a, vec({1, 0})), constant_field(b, vec({1, 0})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(InnerG, ReparametrizationInvarianceConverges) {
  // G_{c o phi}(h o phi, h o phi) - G_c(h, h) shrinks at second order.
  auto gen = [](double t) { return vec({2 * std::cos(t), std::sin(t)}); };
  auto field = [](double t) { return vec({std::cos(2 * t), 0.5 * std::sin(t)}); };
  auto phi = [](double t) { return t + 0.25 * std::sin(t); };
  const auto spec = MetricSpec::constant({1, 0.5, 0.25});
  std::vector<double> err;
  for (int n : {64, 128, 256}) {
    const Domain dom{Topology::Closed, n};
    const auto c = sample_curve(ManifoldSpec::euclidean(2), dom, gen);
    const auto cp = sample_curve(ManifoldSpec::euclidean(2), dom, [&](double t) { return gen(phi(t)); });
    const auto h = sample_field(c, [&](double t, const Point&) { return field(t); });
    const auto hp = sample_field(cp, [&](double t, const Point&) { return field(phi(t)); });
    err.push_back(std::abs(inner_G(spec, cp, hp, hp) - inner_G(spec, c, h, h)));
  }
  for (size_t i = 1; i < err.size(); ++i) EXPECT_NEAR(std::log2(err[i - 1] / err[i]), 2.0, 0.3);
}

TEST(InnerH, Examples) {
  const auto s = fixtures::segment(101);
  const auto h = constant_field(s, vec({0.6, 0.8}));
  EXPECT_NEAR(inner_H(s, h, h, 2), 2 * M_PI, 1e-6);
  const auto c = fixtures::circle(512);
  const auto r = radial(c);
  EXPECT_NEAR(inner_H(c, r, r, 2), 4 * M_PI, 1e-3);
  std::mt19937_64 rng(4);
  const auto k = fixtures::smooth_field(c, rng);
  EXPECT_EQ(inner_H(c, r * 2.0, k, 2), 2.0 * inner_H(c, r, k, 2));
}

TEST(FieldNorm, Examples) {
  const auto c1 = fixtures::circle(256), c2 = fixtures::circle(256, 2.0);
  const auto u1 = constant_field(c1, vec({0, 1})), u2 = constant_field(c2, vec({0, 1}));
  EXPECT_NEAR(field_norm(c1, u1, FieldNorm::L2_ds), std::sqrt(2 * M_PI), 1e-4);
  EXPECT_NEAR(field_norm(c2, u2, FieldNorm::L2_ds), std::sqrt(4 * M_PI), 1e-4);
  EXPECT_NEAR(field_norm(c2, u2, FieldNorm::L2_dtheta), std::sqrt(2 * M_PI), 1e-12);
  const auto s = sample_field(c1, [](double t, const Point&) { return vec({std::sin(t), 0}); });
  EXPECT_NEAR(field_norm(c1, s, FieldNorm::Linf), 1.0, 1e-6);
  EXPECT_EQ(field_norm(c1, VectorField(c1), FieldNorm::Linf), 0.0);
}

TEST(PathEnergy, StationaryPath) {
  const auto c = fixtures::sphere_circle(0.5, 64);
  const auto r = path_energy(MetricSpec::constant({1, 1}), CurvePath({c, c, c, c}));
  EXPECT_EQ(r.energy, 0.0);
  EXPECT_EQ(r.length, 0.0);
}

TEST(PathEnergy, TranslatedSegment) {
  const int m = 16;
  std::vector<DiscreteCurve> curves;
  for (int j = 0; j <= m; ++j) curves.push_back(fixtures::segment(256, static_cast<double>(j) / m));
  const auto r = path_energy(MetricSpec::constant({1, 0, 1}), CurvePath(curves));
  EXPECT_NEAR(r.energy, 2 * M_PI, 1e-3);
  EXPECT_NEAR(r.length * r.length, r.energy, 1e-9);
}

TEST(PathEnergy, ShrinkingSegmentLength) {
  // c(t, theta) = ((1 - t)(theta - pi), 0) for t in [0, 1 - 1/M].
  const int n = 257, m = 100;
  std::vector<double> t;
  std::vector<DiscreteCurve> curves;
  for (int j = 0; j < m; ++j) {
    const double tj = static_cast<double>(j) / m;
    t.push_back(tj);
    curves.push_back(sample_curve(ManifoldSpec::euclidean(2), Domain{Topology::Open, n},
                                  [&](double th) { return vec({(1 - tj) * (th - M_PI), 0}); }));
  }
  const auto r = path_energy(MetricSpec::constant({1, 0, 1}), CurvePath(t, curves));
  // Oracle: int_0^1 sqrt(2 pi^3 (1 - t) / 3) dt.
  const double oracle = std::sqrt(2 * M_PI) * (M_PI / std::sqrt(3.0)) * (2.0 / 3.0);
  EXPECT_NEAR(r.length, oracle, 0.01 * oracle);
  EXPECT_LE(r.length * r.length, r.energy);
}

TEST(PathEnergy, CauchySchwarzOnRandomPaths) {
  std::mt19937_64 rng(8);
  const auto base = fixtures::sphere_circle(0.8, 64);
  const auto& man = base.manifold();
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<DiscreteCurve> cs;
    for (int j = 0; j < 6; ++j) {
      const auto h = fixtures::smooth_field(base, rng);
      std::vector<Point> p(base.size());
      for (int i = 0; i < base.size(); ++i) p[i] = exp(man, base.point(i), {base.point(i), 0.05 * j * h[i]});
      cs.push_back(DiscreteCurve::build(man, base.domain(), p));
    }
    const auto r = path_energy(MetricSpec::scale_invariant({1, 1}), CurvePath(cs));
    EXPECT_LE(r.length * r.length, r.energy * (1 + 1e-12));
  }
}

TEST(PathEnergy, TimeAdjacencyViolation) {
  const auto a = fixtures::sphere_circle(0.3, 32);
  const auto b = fixtures::sphere_circle(2.5, 32);
  try {
    path_energy(MetricSpec::constant({1, 1}), CurvePath({a, b}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TimeAdjacencyViolation);
  }
}

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "elastica/curve.hpp"
#include "elastica/manifold.hpp"

namespace fixtures {

using elastica::Domain;
using elastica::ManifoldSpec;
using elastica::Point;
using elastica::Topology;
using elastica::Vector;

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline elastica::DiscreteCurve circle(int n, double radius = 1.0, Topology topo = Topology::Closed) {
  return elastica::sample_curve(ManifoldSpec::euclidean(2), Domain{topo, n},
                                [&](double t) { return vec({radius * std::cos(t), radius * std::sin(t)}); });
}

inline elastica::DiscreteCurve ellipse(int n, double a, double b) {
  return elastica::sample_curve(ManifoldSpec::euclidean(2), Domain{Topology::Closed, n},
                                [&](double t) { return vec({a * std::cos(t), b * std::sin(t)}); });
}

/// c(theta) = (theta + x0, y0), open.
inline elastica::DiscreteCurve segment(int n, double y0 = 0.0, double x0 = 0.0) {
  return elastica::sample_curve(ManifoldSpec::euclidean(2), Domain{Topology::Open, n},
                                [&](double t) { return vec({t + x0, y0}); });
}

/// Circle of colatitude phi on the unit sphere S^2.
inline elastica::DiscreteCurve sphere_circle(double phi, int n) {
  return elastica::sample_curve(ManifoldSpec::sphere(2), Domain{Topology::Closed, n}, [&](double t) {
    return vec({std::sin(phi) * std::cos(t), std::sin(phi) * std::sin(t), std::cos(phi)});
  });
}

/// Geodesic circle of radius r about the hyperboloid vertex in H^2.
inline elastica::DiscreteCurve hyperbolic_circle(double r, int n) {
  return elastica::sample_curve(ManifoldSpec::hyperbolic(2), Domain{Topology::Closed, n}, [&](double t) {
    return vec({std::cosh(r), std::sinh(r) * std::cos(t), std::sinh(r) * std::sin(t)});
  });
}

inline Vector random_ambient(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = nd(rng);
  return v;
}

inline Point random_point(const ManifoldSpec& m, std::mt19937_64& rng) {
  Vector x = random_ambient(rng, m.ambient_dim());
  return elastica::project_point(m, x);
}

inline Vector random_tangent(const ManifoldSpec& m, const Point& p, std::mt19937_64& rng, double scale = 1.0) {
  return elastica::project_tangent(m, p, random_ambient(rng, m.ambient_dim(), scale));
}

/// Smooth random tangent field: a few ambient Fourier modes projected onto
/// the tangent spaces.
inline elastica::VectorField smooth_field(const elastica::DiscreteCurve& c, std::mt19937_64& rng, int modes = 3) {
  const int d = c.manifold().ambient_dim();
  std::vector<Vector> a, b;
  for (int k = 0; k <= modes; ++k) {
    a.push_back(random_ambient(rng, d, 1.0 / (1 + k * k)));
    b.push_back(random_ambient(rng, d, 1.0 / (1 + k * k)));
  }
  const bool closed = c.closed();
  return elastica::sample_field(c, [&](double t, const Point& p) {
    Vector v = Vector::Zero(d);
    for (int k = 0; k <= modes; ++k) {
      const double arg = closed ? k * t : 0.5 * k * t;
      v += a[k] * std::cos(arg) + b[k] * std::sin(arg);
    }
    return elastica::project_tangent(c.manifold(), p, v);
  });
}

inline elastica::DiscreteCurve shifted(const elastica::DiscreteCurve& c, const Vector& by) {
  std::vector<Point> p = c.points();
  for (auto& x : p) x += by;
  return elastica::DiscreteCurve::build(c.manifold(), c.domain(), p);
}

/// Euclidean rescaling x -> a x.
inline elastica::DiscreteCurve scaled(const elastica::DiscreteCurve& c, double a) {
  std::vector<Point> p = c.points();
  for (auto& x : p) x *= a;
  return elastica::DiscreteCurve::build(c.manifold(), c.domain(), p);
}

/// Pushes every node along exp by eps * v.
inline elastica::DiscreteCurve moved_along(const elastica::DiscreteCurve& c, const elastica::VectorField& v, double eps) {
  std::vector<Point> p(c.size());
  for (int i = 0; i < c.size(); ++i) p[i] = elastica::exp(c.manifold(), c.point(i), {c.point(i), eps * v[i]});
  return elastica::DiscreteCurve::build(c.manifold(), c.domain(), p);
}

/// Random trigonometric loop in the tangent plane at the north pole of S^2,
/// wrapped by exp, reaching geodesic radius between 0.2 and 3.
inline elastica::DiscreteCurve random_sphere_loop(std::mt19937_64& rng, int n) {
  const auto m = ManifoldSpec::sphere(2);
  std::normal_distribution<double> nd;
  std::vector<double> a(8), b(8);
  for (int k = 0; k < 4; ++k) {
    a[2 * k] = nd(rng) / (1 + k);
    a[2 * k + 1] = nd(rng) / (1 + k);
    b[2 * k] = nd(rng) / (1 + k);
    b[2 * k + 1] = nd(rng) / (1 + k);
  }
  std::vector<Vector> planar(n);
  double rmax = 0;
  for (int i = 0; i < n; ++i) {
    const double t = 2 * M_PI * i / n;
    double x = 0, y = 0;
    for (int k = 0; k < 4; ++k) {
      x += a[2 * k] * std::cos((k + 1) * t) + a[2 * k + 1] * std::sin((k + 1) * t);
      y += b[2 * k] * std::cos((k + 1) * t) + b[2 * k + 1] * std::sin((k + 1) * t);
    }
    planar[i] = vec({x, y, 0});
    rmax = std::max(rmax, planar[i].norm());
  }
  std::uniform_real_distribution<double> reach(0.2, 3.0);
  const double scale = reach(rng) / rmax;
  const Point north = vec({0, 0, 1});
  std::vector<Point> p(n);
  for (int i = 0; i < n; ++i) p[i] = elastica::exp(m, north, {north, scale * planar[i]});
  return elastica::DiscreteCurve::build(m, elastica::Domain{Topology::Closed, n}, p);
}

inline std::vector<ManifoldSpec> all_backends() {
  return {ManifoldSpec::euclidean(3), ManifoldSpec::sphere(2), ManifoldSpec::sphere(3, 2.5),
          ManifoldSpec::hyperbolic(2), ManifoldSpec::hyperbolic(3)};
}

}  // namespace fixtures

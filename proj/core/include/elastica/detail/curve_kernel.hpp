#pragma once

// Scalar-generic discrete curve calculus shared by the public double API and
// the forward-mode energy gradient.

#include <cmath>
#include <vector>

#include "elastica/detail/geometry.hpp"

namespace elastica::detail {

enum class Topo { Open, Closed };

template <class T>
using Field = std::vector<VectorT<T>>;

template <class T>
struct CurveGeometry {
  const ManifoldSpec* manifold = nullptr;
  Topo topo = Topo::Closed;
  double dtheta = 0.0;
  Field<T> points;
  Field<T> velocity;  // c'(theta_i), ambient coordinates of a tangent vector
  std::vector<T> speed;
  std::vector<T> weight;  // trapezoid ds_i
  T length = T(0.0);

  int size() const { return static_cast<int>(points.size()); }
  int wrap(int i) const {
    const int n = size();
    return ((i % n) + n) % n;
  }
};

/// c'(theta_i) from fourth-order differences of log_{c_i}(c_j); one-sided
/// five-point stencils at the two nodes nearest each open end.
template <class T>
VectorT<T> log_velocity(const CurveGeometry<T>& g, int i) {
  const ManifoldSpec& m = *g.manifold;
  const int n = g.size();
  const double h = g.dtheta;
  auto L = [&](int j) { return log_map<T>(m, g.points[i], g.points[g.wrap(j)]); };
  if (g.topo == Topo::Closed || (i >= 2 && i <= n - 3)) {
    return (T(8.0) * (L(i + 1) - L(i - 1)) - (L(i + 2) - L(i - 2))) / T(12.0 * h);
  }
  if (i == 0) return (T(48.0) * L(1) - T(36.0) * L(2) + T(16.0) * L(3) - T(3.0) * L(4)) / T(12.0 * h);
  if (i == 1) return (T(-3.0) * L(0) + T(18.0) * L(2) - T(6.0) * L(3) + L(4)) / T(12.0 * h);
  if (i == n - 1) {
    return -(T(48.0) * L(n - 2) - T(36.0) * L(n - 3) + T(16.0) * L(n - 4) - T(3.0) * L(n - 5)) /
           T(12.0 * h);
  }
  return -(T(-3.0) * L(n - 1) + T(18.0) * L(n - 3) - T(6.0) * L(n - 4) + L(n - 5)) / T(12.0 * h);
}

template <class T>
CurveGeometry<T> make_geometry(const ManifoldSpec& m, Topo topo, Field<T> points) {
  using std::sqrt;
  CurveGeometry<T> g;
  g.manifold = &m;
  g.topo = topo;
  const int n = static_cast<int>(points.size());
  g.dtheta = topo == Topo::Closed ? 2.0 * M_PI / n : 2.0 * M_PI / (n - 1);
  g.points = std::move(points);
  g.velocity.resize(n);
  g.speed.resize(n);
  g.weight.resize(n);
  g.length = T(0.0);
  for (int i = 0; i < n; ++i) {
    g.velocity[i] = log_velocity(g, i);
    g.speed[i] = sqrt(ambient_dot<T>(m, g.velocity[i], g.velocity[i]));
    double w = g.dtheta;
    if (topo == Topo::Open && (i == 0 || i == n - 1)) w *= 0.5;
    g.weight[i] = g.speed[i] * T(w);
    g.length += g.weight[i];
  }
  return g;
}

/// One application of the covariant theta-derivative: transported central
/// differences, second-order one-sided stencils (sequential transport) at
/// open ends.
template <class T>
Field<T> theta_derivative(const CurveGeometry<T>& g, const Field<T>& h) {
  const ManifoldSpec& m = *g.manifold;
  const int n = g.size();
  const double inv2h = 1.0 / (2.0 * g.dtheta);
  Field<T> out(n);
  auto pull = [&](int from, int to, const VectorT<T>& v) {
    return transport_map<T>(m, g.points[from], g.points[to], v);
  };
  for (int i = 0; i < n; ++i) {
    if (g.topo == Topo::Closed || (i > 0 && i < n - 1)) {
      const int ip = g.wrap(i + 1);
      const int im = g.wrap(i - 1);
      out[i] = (pull(ip, i, h[ip]) - pull(im, i, h[im])) * T(inv2h);
    } else if (i == 0) {
      VectorT<T> h1 = pull(1, 0, h[1]);
      VectorT<T> h2 = pull(1, 0, pull(2, 1, h[2]));
      out[i] = (T(-3.0) * h[0] + T(4.0) * h1 - h2) * T(inv2h);
    } else {
      VectorT<T> h1 = pull(n - 2, n - 1, h[n - 2]);
      VectorT<T> h2 = pull(n - 2, n - 1, pull(n - 3, n - 2, h[n - 3]));
      out[i] = (T(3.0) * h[n - 1] - T(4.0) * h1 + h2) * T(inv2h);
    }
  }
  return out;
}

template <class T>
Field<T> arclength_derivative(const CurveGeometry<T>& g, const Field<T>& h) {
  Field<T> out = theta_derivative(g, h);
  for (int i = 0; i < g.size(); ++i) out[i] /= g.speed[i];
  return out;
}

/// sum_i w_i g(a_i, b_i) with trapezoid ds weights.
template <class T>
T integrate_ds(const CurveGeometry<T>& g, const Field<T>& a, const Field<T>& b) {
  T s = T(0.0);
  for (int i = 0; i < g.size(); ++i) s += g.weight[i] * ambient_dot<T>(*g.manifold, a[i], b[i]);
  return s;
}

template <class T>
T integrate_dtheta(const CurveGeometry<T>& g, const Field<T>& a, const Field<T>& b) {
  T s = T(0.0);
  const int n = g.size();
  for (int i = 0; i < n; ++i) {
    double w = g.dtheta;
    if (g.topo == Topo::Open && (i == 0 || i == n - 1)) w *= 0.5;
    s += T(w) * ambient_dot<T>(*g.manifold, a[i], b[i]);
  }
  return s;
}

}  // namespace elastica::detail

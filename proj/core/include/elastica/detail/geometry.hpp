#pragma once

// Scalar-generic closed-form geometry. Everything here is instantiated both
// with double and with forward-mode jets (energy gradients), so the code may
// only use operations that have jet overloads and must stay branch-stable
// around the evaluation point.

#include <algorithm>
#include <cmath>
#include <string>

#include "elastica/error.hpp"
#include "elastica/manifold.hpp"

namespace elastica::detail {

template <class T>
struct ScalarTraits {
  static constexpr bool is_dual = false;
  static double value(const T& x) { return static_cast<double>(x); }
};

template <class T>
double value_of(const T& x) {
  return ScalarTraits<T>::value(x);
}

/// Ambient bilinear form: Euclidean dot product or the Minkowski form.
template <class T>
T ambient_dot(const ManifoldSpec& m, const VectorT<T>& a, const VectorT<T>& b) {
  T s = a.dot(b);
  if (m.kind == ManifoldKind::Hyperbolic) s -= T(2.0) * a[0] * b[0];
  return s;
}

template <class T>
VectorT<T> tangent_projection(const ManifoldSpec& m, const VectorT<T>& p, const VectorT<T>& v) {
  switch (m.kind) {
    case ManifoldKind::Euclidean: return v;
    case ManifoldKind::Sphere: return v - (p.dot(v) / T(m.radius * m.radius)) * p;
    case ManifoldKind::Hyperbolic: return v + ambient_dot<T>(m, p, v) * p;
  }
  return v;
}

template <class T>
VectorT<T> point_projection(const ManifoldSpec& m, const VectorT<T>& x) {
  using std::sqrt;
  switch (m.kind) {
    case ManifoldKind::Euclidean: return x;
    case ManifoldKind::Sphere: return (T(m.radius) / sqrt(x.dot(x))) * x;
    case ManifoldKind::Hyperbolic: {
      VectorT<T> y = x;
      T s = x.tail(x.size() - 1).squaredNorm();
      y[0] = sqrt(T(1.0) + s);
      return y;
    }
  }
  return x;
}

template <class T>
VectorT<T> exp_map(const ManifoldSpec& m, const VectorT<T>& p, const VectorT<T>& v) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  switch (m.kind) {
    case ManifoldKind::Euclidean: return p + v;
    case ManifoldKind::Sphere: {
      const double rho = m.radius;
      T r2 = v.dot(v);
      T x2 = r2 / T(rho * rho);
      T c, sc;
      if (value_of(r2) < kSeriesThreshold * kSeriesThreshold) {
        c = T(1.0) - x2 / T(2.0) + x2 * x2 / T(24.0);
        sc = T(1.0) - x2 / T(6.0) + x2 * x2 / T(120.0);
      } else {
        T x = sqrt(x2);
        c = cos(x);
        sc = sin(x) / x;
      }
      return c * p + sc * v;
    }
    case ManifoldKind::Hyperbolic: {
      T r2 = ambient_dot<T>(m, v, v);
      if (value_of(r2) < 0.0) r2 = T(0.0);
      T c, sc;
      if (value_of(r2) < kSeriesThreshold * kSeriesThreshold) {
        c = T(1.0) + r2 / T(2.0) + r2 * r2 / T(24.0);
        sc = T(1.0) + r2 / T(6.0) + r2 * r2 / T(120.0);
      } else {
        T x = sqrt(r2);
        c = cosh(x);
        sc = sinh(x) / x;
      }
      return c * p + sc * v;
    }
  }
  return p;
}

template <class T>
[[noreturn]] void throw_cut_locus(const ManifoldSpec& m, double dist) {
  throw Error(ErrorKind::InjectivityViolation,
              "points at distance " + std::to_string(dist) + " exceed the injectivity radius " +
                  std::to_string(m.injectivity_radius()) + " (minus margin)");
}

template <class T>
VectorT<T> log_map(const ManifoldSpec& m, const VectorT<T>& p, const VectorT<T>& q) {
  using std::atan2;
  using std::log;
  using std::sqrt;
  switch (m.kind) {
    case ManifoldKind::Euclidean: return q - p;
    case ManifoldKind::Sphere: {
      const double rho2 = m.radius * m.radius;
      T c = p.dot(q) / T(rho2);
      VectorT<T> w = q - c * p;
      T s2 = w.dot(w) / T(rho2);
      T f;
      if (value_of(c) > 0.0 && value_of(s2) * rho2 < kSeriesThreshold * kSeriesThreshold) {
        // theta / sin(theta) in powers of sin(theta)^2
        f = T(1.0) + s2 / T(6.0) + T(3.0 / 40.0) * s2 * s2;
      } else {
        T s = sqrt(s2);
        T theta = atan2(s, c);
        const double dist = m.radius * value_of(theta);
        if (dist > M_PI * m.radius - kCutLocusMargin) throw_cut_locus<T>(m, dist);
        f = theta / s;
      }
      return f * w;
    }
    case ManifoldKind::Hyperbolic: {
      T alpha = -ambient_dot<T>(m, p, q);
      VectorT<T> w = q - alpha * p;
      T s2 = ambient_dot<T>(m, w, w);
      if (value_of(s2) < 0.0) s2 = T(0.0);
      T f;
      if (value_of(s2) < kSeriesThreshold * kSeriesThreshold) {
        // asinh(s)/s
        f = T(1.0) - s2 / T(6.0) + T(3.0 / 40.0) * s2 * s2;
      } else {
        T s = sqrt(s2);
        f = log(s + sqrt(s2 + T(1.0))) / s;
      }
      return f * w;
    }
  }
  return q - p;
}

/// Parallel transport of v in T_p to T_q along the minimising geodesic.
template <class T>
VectorT<T> transport_map(const ManifoldSpec& m, const VectorT<T>& p, const VectorT<T>& q,
                         const VectorT<T>& v) {
  switch (m.kind) {
    case ManifoldKind::Euclidean: return v;
    case ManifoldKind::Sphere: {
      const double rho2 = m.radius * m.radius;
      T denom = T(rho2) + p.dot(q);
      const double c = value_of(p.dot(q)) / rho2;
      if (c < std::cos(M_PI - kCutLocusMargin / m.radius)) {
        throw_cut_locus<T>(m, m.radius * std::acos(std::max(-1.0, c)));
      }
      VectorT<T> pq = p + q;
      return v - (q.dot(v) / denom) * pq;
    }
    case ManifoldKind::Hyperbolic: {
      T denom = T(1.0) - ambient_dot<T>(m, p, q);
      VectorT<T> pq = p + q;
      return v + (ambient_dot<T>(m, q, v) / denom) * pq;
    }
  }
  return v;
}

template <class T>
VectorT<T> curvature_map(const ManifoldSpec& m, const VectorT<T>& x, const VectorT<T>& y,
                         const VectorT<T>& z) {
  const double k = m.sectional_curvature();
  if (k == 0.0) return VectorT<T>::Zero(x.size());
  return T(k) * (ambient_dot<T>(m, y, z) * x - ambient_dot<T>(m, x, z) * y);
}

}  // namespace elastica::detail

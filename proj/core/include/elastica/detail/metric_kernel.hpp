#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "elastica/detail/curve_kernel.hpp"
#include "elastica/sobolev_metric.hpp"

namespace elastica::detail {

/// Per-node contributions of one time interval: density[k][i] =
/// w_i |D_s^k u_i|^2 on the midpoint curve, weight[i] = w_i.
template <class T>
struct IntervalTerms {
  std::vector<std::vector<T>> density;
  std::vector<T> weight;
  double min_speed = 0.0;
};

template <class T>
struct MidpointData {
  Field<T> points;
  Field<T> velocity;
};

template <class T>
MidpointData<T> midpoint_data(const ManifoldSpec& m, const Field<T>& a, const Field<T>& b, double dt) {
  MidpointData<T> out;
  const size_t n = a.size();
  out.points.resize(n);
  out.velocity.resize(n);
  for (size_t i = 0; i < n; ++i) {
    VectorT<T> l = log_map<T>(m, a[i], b[i]);
    VectorT<T> half = l * T(0.5);
    out.points[i] = exp_map<T>(m, a[i], half);
    out.velocity[i] = transport_map<T>(m, a[i], out.points[i], l) * T(1.0 / dt);
  }
  return out;
}

template <class T>
IntervalTerms<T> interval_terms(const ManifoldSpec& m, Topo topo, int order, const Field<T>& a,
                                const Field<T>& b, double dt) {
  MidpointData<T> mid = midpoint_data(m, a, b, dt);
  CurveGeometry<T> g = make_geometry<T>(m, topo, std::move(mid.points));
  IntervalTerms<T> terms;
  terms.weight = g.weight;
  terms.min_speed = value_of(g.speed[0]);
  for (const T& v : g.speed) terms.min_speed = std::min(terms.min_speed, value_of(v));
  terms.density.assign(order + 1, std::vector<T>(g.size()));
  Field<T> d = std::move(mid.velocity);
  for (int k = 0; k <= order; ++k) {
    if (k > 0) d = arclength_derivative(g, d);
    for (int i = 0; i < g.size(); ++i) terms.density[k][i] = g.weight[i] * ambient_dot<T>(m, d[i], d[i]);
  }
  return terms;
}

/// a_i(l) for scalar or dual l. Custom coefficients are linearised around
/// value_of(l) so derivatives propagate through the chain rule.
template <class T>
T coefficient_at(const MetricSpec& spec, int i, const T& ell) {
  using std::pow;
  switch (spec.family) {
    case CoefficientFamily::Constant:
      return T(spec.coeffs[i]);
    case CoefficientFamily::ScaleInvariant:
      return T(spec.coeffs[i]) * pow(ell, double(2 * i - 3));
    case CoefficientFamily::Custom:
      break;
  }
  const double l0 = value_of(ell);
  const double a0 = coefficients(spec, l0)[i];
  if constexpr (ScalarTraits<T>::is_dual) {
    const double d0 = coefficient_derivatives(spec, l0)[i];
    return T(a0) + T(d0) * (ell - T(l0));
  } else {
    return T(a0);
  }
}

/// dt_j * G_{m_j}(u_j, u_j) assembled from interval terms.
template <class T>
T interval_energy(const MetricSpec& spec, const IntervalTerms<T>& terms, double dt) {
  T ell = T(0.0);
  for (const T& w : terms.weight) ell += w;
  T g = T(0.0);
  for (int k = 0; k <= spec.order; ++k) {
    T sum = T(0.0);
    for (const T& q : terms.density[k]) sum += q;
    g += coefficient_at(spec, k, ell) * sum;
  }
  return g * T(dt);
}

}  // namespace elastica::detail

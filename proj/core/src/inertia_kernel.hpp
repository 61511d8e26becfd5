#pragma once

// Compact (three-point) discretisation of the first-order inertia operator,
//   (K h)_i = a0 w_i h_i - a1 [ (P h_{i+1} - h_i)/d_i - (h_i - P h_{i-1})/d_{i-1} ],
// with w_i the ds weights, d_i the geodesic edge lengths and P parallel
// transport along the edge. K is symmetric and <K h, h> equals
//   a0 sum_i w_i |h_i|^2 + a1 sum_e |P h_{e+1} - h_e|^2 / d_e.
// Missing edges at open ends give the natural (zero flux) boundary rows.

#include <vector>

#include "elastica/detail/curve_kernel.hpp"

namespace elastica::detail {

template <class T>
struct CompactParts {
  std::vector<T> weight;  // w_i
  std::vector<T> mass;    // w_i |h_i|^2
  std::vector<T> edge;    // |P h_{e+1} - h_e|^2 / d_e, e = 0 .. edges-1
  T length = T(0.0);
};

inline int edge_count(Topo topo, int n) { return topo == Topo::Closed ? n : n - 1; }

template <class T>
CompactParts<T> compact_parts(const ManifoldSpec& m, Topo topo, const Field<T>& pts, const Field<T>& h) {
  using std::sqrt;
  CurveGeometry<T> g = make_geometry<T>(m, topo, pts);
  const int n = g.size();
  CompactParts<T> out;
  out.weight = g.weight;
  out.length = g.length;
  out.mass.resize(n);
  for (int i = 0; i < n; ++i) out.mass[i] = g.weight[i] * ambient_dot<T>(m, h[i], h[i]);
  const int ne = edge_count(topo, n);
  out.edge.resize(ne);
  for (int e = 0; e < ne; ++e) {
    const int j = (e + 1) % n;
    VectorT<T> l = log_map<T>(m, pts[e], pts[j]);
    T d = sqrt(ambient_dot<T>(m, l, l));
    VectorT<T> diff = transport_map<T>(m, pts[j], pts[e], h[j]) - h[e];
    out.edge[e] = ambient_dot<T>(m, diff, diff) / d;
  }
  return out;
}

template <class T>
Field<T> apply_compact(const ManifoldSpec& m, Topo topo, const Field<T>& pts, const std::vector<T>& weight,
                       const Field<T>& h, const T& a0, const T& a1) {
  using std::sqrt;
  const int n = static_cast<int>(pts.size());
  Field<T> out(n);
  for (int i = 0; i < n; ++i) out[i] = (a0 * weight[i]) * h[i];
  for (int e = 0; e < edge_count(topo, n); ++e) {
    const int j = (e + 1) % n;
    VectorT<T> l = log_map<T>(m, pts[e], pts[j]);
    T d = sqrt(ambient_dot<T>(m, l, l));
    out[e] -= (a1 / d) * (transport_map<T>(m, pts[j], pts[e], h[j]) - h[e]);
    out[j] += (a1 / d) * (h[j] - transport_map<T>(m, pts[e], pts[j], h[e]));
  }
  return out;
}

}  // namespace elastica::detail

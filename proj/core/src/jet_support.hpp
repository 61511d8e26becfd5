#pragma once

// Forward-mode duals for the scalar-generic kernels. Private to the library.

#include <ceres/jet.h>

#include <algorithm>
#include <vector>

#include "elastica/detail/geometry.hpp"

namespace elastica::detail {

template <int N>
struct ScalarTraits<ceres::Jet<double, N>> {
  static constexpr bool is_dual = true;
  static double value(const ceres::Jet<double, N>& x) { return x.a; }
};

/// Distance-(2R) colouring of the node graph: two nodes of the same colour
/// are more than 2R apart (cyclically for closed curves), so a term whose
/// support lies in [i-R, i+R] sees at most one seeded node per colour.
struct NodeColoring {
  std::vector<int> color;
  int count = 0;
};

inline NodeColoring color_nodes(int n, bool closed, int radius) {
  NodeColoring c;
  c.color.resize(n);
  const int stride = 2 * radius + 1;
  if (n <= stride) {
    for (int i = 0; i < n; ++i) c.color[i] = i;
    c.count = n;
    return c;
  }
  const int full = closed ? (n / stride) * stride : n;
  for (int i = 0; i < full; ++i) c.color[i] = i % stride;
  c.count = std::min(n, stride);
  // Leftover nodes of a closed curve would wrap onto the first block.
  for (int i = full; i < n; ++i) c.color[i] = c.count++;
  return c;
}

}  // namespace elastica::detail

#pragma once

#include <Eigen/Core>

#include <vector>

#include "elastica/curve.hpp"

namespace elastica {

/// Loop transport c_0 -> c_1 -> ... -> c_{N-1} -> c_0 expressed in the
/// Gram-Schmidt frame at c(0). Closed curves only.
Eigen::MatrixXd loop_holonomy(const DiscreteCurve& c);

/// ||Hol_c - id||_F.
double holonomy_defect(const DiscreteCurve& c);

/// Signed rotation angle of a 2x2 holonomy (surfaces only).
double holonomy_angle(const Eigen::MatrixXd& hol);

struct HolonomyReport {
  int curve_id = 0;
  double length = 0.0;
  double defect = 0.0;
  double ratio = 0.0;  // defect / length^2
  double cap = 0.0;    // min(C* length^2, 2 sqrt(d))
  bool pass = true;
};

struct BoundProbe {
  std::vector<HolonomyReport> reports;
  double bound_constant = 0.0;  // C* = K_N sqrt(d) * slack
  double max_ratio = 0.0;
  /// Least-squares slope of log(defect) against log(length) over curves with
  /// non-zero defect; NaN when fewer than two qualify.
  double slope = 0.0;
  bool all_pass = true;
};

/// Checks defect <= min(C* l^2, 2 sqrt(d)) + 1e-9 on every curve.
BoundProbe bound_probe(const std::vector<DiscreteCurve>& family, double slack = 1.1);

}  // namespace elastica

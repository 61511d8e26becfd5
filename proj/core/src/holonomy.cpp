#include "elastica/holonomy.hpp"

#include <cmath>
#include <limits>

namespace elastica {

Eigen::MatrixXd loop_holonomy(const DiscreteCurve& c) {
  if (!c.closed()) throw Error(ErrorKind::InvalidArgument, "holonomy needs a closed curve");
  const auto& m = c.manifold();
  const int n = c.size();
  const Eigen::MatrixXd frame = tangent_frame(m, c.point(0));
  const int d = static_cast<int>(frame.cols());
  std::vector<Vector> cols(d);
  for (int k = 0; k < d; ++k) cols[k] = frame.col(k);
  for (int i = 0; i < n; ++i) {
    const Point& a = c.point(i);
    const Point& b = c.point((i + 1) % n);
    for (auto& v : cols) v = detail::transport_map<double>(m, a, b, v);
  }
  Eigen::MatrixXd hol(d, d);
  for (int r = 0; r < d; ++r) {
    const Vector er = frame.col(r);
    for (int k = 0; k < d; ++k) hol(r, k) = detail::ambient_dot<double>(m, er, cols[k]);
  }
  return hol;
}

double holonomy_defect(const DiscreteCurve& c) {
  const Eigen::MatrixXd h = loop_holonomy(c);
  return (h - Eigen::MatrixXd::Identity(h.rows(), h.cols())).norm();
}

double holonomy_angle(const Eigen::MatrixXd& hol) {
  if (hol.rows() != 2 || hol.cols() != 2) {
    throw Error(ErrorKind::InvalidArgument, "rotation angle is defined for 2x2 holonomies only");
  }
  return std::atan2(hol(1, 0), hol(0, 0));
}

BoundProbe bound_probe(const std::vector<DiscreteCurve>& family, double slack) {
  if (family.empty()) throw Error(ErrorKind::InvalidArgument, "empty curve family");
  const auto& m = family.front().manifold();
  BoundProbe probe;
  const double cap = 2.0 * std::sqrt(static_cast<double>(m.dim));
  probe.bound_constant = m.curvature_bound() * std::sqrt(static_cast<double>(m.dim)) * slack;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (size_t i = 0; i < family.size(); ++i) {
    const auto& c = family[i];
    if (!(c.manifold() == m)) throw Error(ErrorKind::InvalidArgument, "curve family mixes manifolds");
    HolonomyReport r;
    r.curve_id = static_cast<int>(i);
    r.length = c.length();
    r.defect = holonomy_defect(c);
    r.ratio = r.defect / (r.length * r.length);
    r.cap = std::min(probe.bound_constant * r.length * r.length, cap);
    r.pass = r.defect <= r.cap + 1e-9;
    probe.all_pass = probe.all_pass && r.pass;
    probe.max_ratio = std::max(probe.max_ratio, r.ratio);
    if (r.defect > 1e-14) {
      const double x = std::log(r.length), y = std::log(r.defect);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++count;
    }
    probe.reports.push_back(r);
  }
  const double den = count * sxx - sx * sx;
  probe.slope = count >= 2 && den > 0 ? (count * sxy - sx * sy) / den : std::numeric_limits<double>::quiet_NaN();
  return probe;
}

}  // namespace elastica

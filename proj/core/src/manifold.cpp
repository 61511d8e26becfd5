#include "elastica/manifold.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "elastica/detail/geometry.hpp"

namespace elastica {

std::string_view to_string(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::Euclidean: return "euclidean";
    case ManifoldKind::Sphere: return "sphere";
    case ManifoldKind::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

ManifoldKind manifold_kind_from_string(std::string_view name) {
  if (name == "euclidean") return ManifoldKind::Euclidean;
  if (name == "sphere") return ManifoldKind::Sphere;
  if (name == "hyperbolic") return ManifoldKind::Hyperbolic;
  throw Error(ErrorKind::InvalidArgument, "unknown manifold kind '" + std::string(name) + "'");
}

void ManifoldSpec::validate() const {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "manifold dim must be >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorKind::InvalidArgument, "manifold radius must be positive");
  }
  if (ambient_dim() > kMaxAmbient) {
    throw Error(ErrorKind::InvalidArgument,
                "ambient dimension " + std::to_string(ambient_dim()) + " exceeds supported maximum " +
                    std::to_string(kMaxAmbient));
  }
}

double ManifoldSpec::sectional_curvature() const {
  switch (kind) {
    case ManifoldKind::Euclidean: return 0.0;
    case ManifoldKind::Sphere: return 1.0 / (radius * radius);
    case ManifoldKind::Hyperbolic: return -1.0;
  }
  return 0.0;
}

double ManifoldSpec::curvature_bound() const { return std::abs(sectional_curvature()); }

double ManifoldSpec::injectivity_radius() const {
  if (kind == ManifoldKind::Sphere) return M_PI * radius;
  return std::numeric_limits<double>::infinity();
}

namespace {

double scale_of(const Vector& v) { return std::max(1.0, v.norm()); }

void check_base(const ManifoldSpec& m, const Point& p, const Tangent& t, const char* what) {
  if (p.size() != t.base.size() || t.vec.size() != p.size() ||
      (p - t.base).norm() > kConstraintTol * scale_of(p) * 10.0) {
    (void)m;
    throw Error(ErrorKind::InvalidArgument, std::string(what) + ": tangent not based at the given point");
  }
}

void check_size(const ManifoldSpec& m, const Vector& v) {
  if (v.size() != m.ambient_dim()) {
    throw Error(ErrorKind::InvalidArgument, "vector has ambient size " + std::to_string(v.size()) +
                                                ", expected " + std::to_string(m.ambient_dim()));
  }
}

}  // namespace

bool is_on_manifold(const ManifoldSpec& m, const Point& p, double tol) {
  if (p.size() != m.ambient_dim() || !p.allFinite()) return false;
  switch (m.kind) {
    case ManifoldKind::Euclidean: return true;
    case ManifoldKind::Sphere: return std::abs(p.norm() - m.radius) <= tol * m.radius;
    case ManifoldKind::Hyperbolic: {
      const double q = detail::ambient_dot<double>(m, p, p);
      return p[0] > 0.0 && std::abs(q + 1.0) <= tol * std::max(1.0, p.squaredNorm());
    }
  }
  return false;
}

bool is_tangent(const ManifoldSpec& m, const Point& p, const Vector& v, double tol) {
  if (v.size() != m.ambient_dim() || !v.allFinite()) return false;
  switch (m.kind) {
    case ManifoldKind::Euclidean: return true;
    case ManifoldKind::Sphere: return std::abs(p.dot(v)) <= tol * m.radius * scale_of(v);
    case ManifoldKind::Hyperbolic:
      return std::abs(detail::ambient_dot<double>(m, p, v)) <= tol * scale_of(p) * scale_of(v);
  }
  return false;
}

Point project_point(const ManifoldSpec& m, const Point& x) {
  check_size(m, x);
  return detail::point_projection<double>(m, x);
}

Vector project_tangent(const ManifoldSpec& m, const Point& p, const Vector& v) {
  check_size(m, v);
  return detail::tangent_projection<double>(m, p, v);
}

double inner(const ManifoldSpec& m, const Point& p, const Tangent& u, const Tangent& v) {
  check_base(m, p, u, "inner");
  check_base(m, p, v, "inner");
  return detail::ambient_dot<double>(m, u.vec, v.vec);
}

double norm(const ManifoldSpec& m, const Tangent& v) {
  return std::sqrt(std::max(0.0, detail::ambient_dot<double>(m, v.vec, v.vec)));
}

Point exp(const ManifoldSpec& m, const Point& p, const Tangent& v) {
  check_base(m, p, v, "exp");
  return detail::exp_map<double>(m, p, v.vec);
}

Tangent log(const ManifoldSpec& m, const Point& p, const Point& q) {
  check_size(m, p);
  check_size(m, q);
  return {p, detail::log_map<double>(m, p, q)};
}

double distance(const ManifoldSpec& m, const Point& p, const Point& q) { return norm(m, log(m, p, q)); }

Tangent transport(const ManifoldSpec& m, const Point& p, const Point& q, const Tangent& v) {
  check_base(m, p, v, "transport");
  check_size(m, q);
  return {q, detail::transport_map<double>(m, p, q, v.vec)};
}

Tangent curvature(const ManifoldSpec& m, const Point& p, const Tangent& x, const Tangent& y,
                  const Tangent& z) {
  check_base(m, p, x, "curvature");
  check_base(m, p, y, "curvature");
  check_base(m, p, z, "curvature");
  return {p, detail::curvature_map<double>(m, x.vec, y.vec, z.vec)};
}

Eigen::MatrixXd tangent_frame(const ManifoldSpec& m, const Point& p) {
  const int n = m.ambient_dim();
  Eigen::MatrixXd frame(n, m.dim);
  std::vector<Vector> residual;
  for (int axis = 0; axis < n; ++axis) {
    Vector e = Vector::Zero(n);
    e[axis] = 1.0;
    residual.push_back(detail::tangent_projection<double>(m, p, e));
  }
  std::vector<bool> used(n, false);
  // Greedy Gram-Schmidt: always take the axis with the largest residual.
  for (int j = 0; j < m.dim; ++j) {
    int best = -1;
    double best_norm = 0.0;
    for (int axis = 0; axis < n; ++axis) {
      if (used[axis]) continue;
      const double nn = detail::ambient_dot<double>(m, residual[axis], residual[axis]);
      if (nn > best_norm) {
        best_norm = nn;
        best = axis;
      }
    }
    if (best < 0 || best_norm < 1e-12) throw Error(ErrorKind::SolverFailure, "could not build a tangent frame");
    used[best] = true;
    Vector f = residual[best] / std::sqrt(best_norm);
    frame.col(j) = f;
    for (int axis = 0; axis < n; ++axis) {
      if (!used[axis]) residual[axis] -= detail::ambient_dot<double>(m, f, residual[axis]) * f;
    }
  }
  return frame;
}

Point base_point(const ManifoldSpec& m) {
  Point p = Point::Zero(m.ambient_dim());
  if (m.kind == ManifoldKind::Sphere) p[m.ambient_dim() - 1] = m.radius;
  if (m.kind == ManifoldKind::Hyperbolic) p[0] = 1.0;
  return p;
}

}  // namespace elastica

#pragma once

#include <Eigen/Core>

#include <limits>
#include <string>
#include <string_view>

#include "elastica/error.hpp"

namespace elastica {

/// Largest ambient representation supported. Fixed so that small vectors
/// never touch the heap.
inline constexpr int kMaxAmbient = 8;

template <class T>
using VectorT = Eigen::Matrix<T, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxAmbient, 1>;
using Vector = VectorT<double>;

/// Points are stored in ambient coordinates: R^d, the radius-rho sphere in
/// R^{d+1}, or the upper hyperboloid sheet in Minkowski R^{d,1}.
using Point = Vector;

enum class ManifoldKind { Euclidean, Sphere, Hyperbolic };

std::string_view to_string(ManifoldKind kind);
ManifoldKind manifold_kind_from_string(std::string_view name);

/// Constant-curvature target manifold with closed-form geometry.
struct ManifoldSpec {
  ManifoldKind kind = ManifoldKind::Euclidean;
  int dim = 2;
  double radius = 1.0;  // sphere only

  static ManifoldSpec euclidean(int d) { return {ManifoldKind::Euclidean, d, 1.0}; }
  static ManifoldSpec sphere(int d, double rho = 1.0) { return {ManifoldKind::Sphere, d, rho}; }
  static ManifoldSpec hyperbolic(int d) { return {ManifoldKind::Hyperbolic, d, 1.0}; }

  /// Throws InvalidArgument unless dim >= 1, radius > 0 and the ambient
  /// representation fits in kMaxAmbient.
  void validate() const;

  int ambient_dim() const { return kind == ManifoldKind::Euclidean ? dim : dim + 1; }
  double sectional_curvature() const;
  double curvature_bound() const;  // K_N = |K|
  double injectivity_radius() const;

  friend bool operator==(const ManifoldSpec&, const ManifoldSpec&) = default;
};

/// A tangent vector together with the point it is attached to.
struct Tangent {
  Point base;
  Vector vec;
};

// Relative tolerance for on-manifold and tangency constraints.
inline constexpr double kConstraintTol = 1e-12;
// Below this norm exp/log switch to series expansions.
inline constexpr double kSeriesThreshold = 1e-6;
// Sphere log/transport refuse points closer than this to the cut locus.
inline constexpr double kCutLocusMargin = 1e-6;

bool is_on_manifold(const ManifoldSpec& m, const Point& p, double tol = kConstraintTol);
bool is_tangent(const ManifoldSpec& m, const Point& p, const Vector& v, double tol = kConstraintTol);

/// Closest point on the manifold (normalisation); used to snap user input.
Point project_point(const ManifoldSpec& m, const Point& x);
/// Orthogonal projection of an ambient vector onto T_p.
Vector project_tangent(const ManifoldSpec& m, const Point& p, const Vector& v);

double inner(const ManifoldSpec& m, const Point& p, const Tangent& u, const Tangent& v);
double norm(const ManifoldSpec& m, const Tangent& v);
Point exp(const ManifoldSpec& m, const Point& p, const Tangent& v);
Tangent log(const ManifoldSpec& m, const Point& p, const Point& q);
double distance(const ManifoldSpec& m, const Point& p, const Point& q);
Tangent transport(const ManifoldSpec& m, const Point& p, const Point& q, const Tangent& v);
/// R(X,Y)Z = K (g(Y,Z) X - g(X,Z) Y).
Tangent curvature(const ManifoldSpec& m, const Point& p, const Tangent& x, const Tangent& y,
                  const Tangent& z);

/// Orthonormal basis of T_p obtained by Gram-Schmidt on projected ambient
/// axes. Columns are ambient vectors.
Eigen::MatrixXd tangent_frame(const ManifoldSpec& m, const Point& p);

/// Origin of R^d, north pole (0,..,0,rho) of the sphere, vertex (1,0,..,0)
/// of the hyperboloid.
Point base_point(const ManifoldSpec& m);

}  // namespace elastica

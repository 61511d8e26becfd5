#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "elastica/detail/curve_kernel.hpp"
#include "elastica/manifold.hpp"

namespace elastica {

enum class Topology { Open, Closed };

std::string_view to_string(Topology t);
Topology topology_from_string(std::string_view name);

/// Uniform parameter grid on [0, 2pi] (open) or S^1 (closed).
struct Domain {
  Topology topology = Topology::Closed;
  int samples = 64;

  static constexpr int kMinSamples = 8;

  void validate() const;
  double spacing() const;
  double theta(int i) const { return spacing() * i; }

  friend bool operator==(const Domain&, const Domain&) = default;
};

struct CurveOptions {
  double immersion_eps = 1e-8;
  int max_derivative_order = 8;
  /// Relative tolerance for the on-manifold check of input points.
  double point_tol = 1e-10;
};

/// Immutable sampled immersion with cached speeds, ds weights and length.
/// Copies share the underlying data.
class DiscreteCurve {
 public:
  /// Validates the points and caches arc-length data. Throws
  /// ImmersionViolation / AdjacencyViolation / InvalidArgument.
  static DiscreteCurve build(const ManifoldSpec& m, const Domain& dom, std::vector<Point> pts,
                             const CurveOptions& opts = {});

  const ManifoldSpec& manifold() const { return data_->manifold; }
  const Domain& domain() const { return data_->domain; }
  const CurveOptions& options() const { return data_->options; }
  int size() const { return data_->domain.samples; }
  bool closed() const { return data_->domain.topology == Topology::Closed; }
  double dtheta() const { return data_->geometry.dtheta; }

  const std::vector<Point>& points() const { return data_->geometry.points; }
  const Point& point(int i) const { return data_->geometry.points[i]; }
  const Vector& velocity(int i) const { return data_->geometry.velocity[i]; }
  double speed(int i) const { return data_->geometry.speed[i]; }
  const std::vector<double>& speeds() const { return data_->geometry.speed; }
  const std::vector<double>& weights() const { return data_->geometry.weight; }
  double length() const { return data_->geometry.length; }
  double min_speed() const;

  /// Index modulo N (closed) - callers on open curves must stay in range.
  int wrap(int i) const { return data_->geometry.wrap(i); }

  const detail::CurveGeometry<double>& geometry() const { return data_->geometry; }

  bool same_as(const DiscreteCurve& other) const;

 private:
  struct Data {
    ManifoldSpec manifold;
    Domain domain;
    CurveOptions options;
    detail::CurveGeometry<double> geometry;
  };
  std::shared_ptr<const Data> data_;
};

/// Tangent vectors along a curve, vectors[i] based at points[i].
class VectorField {
 public:
  VectorField(DiscreteCurve curve, std::vector<Vector> vectors);
  /// Zero field along c.
  explicit VectorField(DiscreteCurve curve);

  const DiscreteCurve& curve() const { return curve_; }
  const std::vector<Vector>& vectors() const { return vectors_; }
  const Vector& operator[](int i) const { return vectors_[i]; }
  int size() const { return static_cast<int>(vectors_.size()); }
  Tangent tangent(int i) const { return {curve_.point(i), vectors_[i]}; }

  VectorField operator+(const VectorField& o) const;
  VectorField operator-(const VectorField& o) const;
  VectorField operator*(double a) const;
  friend VectorField operator*(double a, const VectorField& f) { return f * a; }

  /// Largest tangency residual over all nodes (relative).
  double tangency_residual() const;

 private:
  DiscreteCurve curve_;
  std::vector<Vector> vectors_;
};

void require_same_curve(const VectorField& a, const VectorField& b, const char* what);

enum class DerivativeVariable { Theta, Arclength };

/// v_i = c'_i / |c'_i|.
VectorField unit_tangent(const DiscreteCurve& c);

/// Discrete nabla^k along c, applied recursively.
VectorField cov_deriv(const DiscreteCurve& c, const VectorField& h, DerivativeVariable variable,
                      int order);

/// Same image, constant speed: nodes are placed at equal arc-length steps,
/// interpolated with cubics in the log chart of the segment start.
DiscreteCurve reparametrize_arclength(const DiscreteCurve& c);

/// Curve through f(theta_i) for a parametrised generator.
template <class F>
DiscreteCurve sample_curve(const ManifoldSpec& m, const Domain& dom, F&& f, const CurveOptions& opts = {}) {
  std::vector<Point> pts;
  pts.reserve(dom.samples);
  for (int i = 0; i < dom.samples; ++i) pts.push_back(f(dom.theta(i)));
  return DiscreteCurve::build(m, dom, std::move(pts), opts);
}

/// Field h(theta_i, c(theta_i)) along c.
template <class F>
VectorField sample_field(const DiscreteCurve& c, F&& f) {
  std::vector<Vector> v;
  v.reserve(c.size());
  for (int i = 0; i < c.size(); ++i) v.push_back(f(c.domain().theta(i), c.point(i)));
  return VectorField(c, std::move(v));
}

}  // namespace elastica

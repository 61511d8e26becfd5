#include "elastica/curve.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace elastica {

std::string_view to_string(Topology t) { return t == Topology::Open ? "open" : "closed"; }

Topology topology_from_string(std::string_view name) {
  if (name == "open") return Topology::Open;
  if (name == "closed") return Topology::Closed;
  throw Error(ErrorKind::InvalidArgument, "unknown topology '" + std::string(name) + "'");
}

void Domain::validate() const {
  if (samples < kMinSamples) {
    throw Error(ErrorKind::InvalidArgument,
                "domain needs at least " + std::to_string(kMinSamples) + " samples, got " + std::to_string(samples));
  }
}

double Domain::spacing() const {
  return topology == Topology::Closed ? 2.0 * M_PI / samples : 2.0 * M_PI / (samples - 1);
}

DiscreteCurve DiscreteCurve::build(const ManifoldSpec& m, const Domain& dom, std::vector<Point> pts,
                                   const CurveOptions& opts) {
  m.validate();
  dom.validate();
  if (static_cast<int>(pts.size()) != dom.samples) {
    throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(dom.samples) + " points, got " +
                                                std::to_string(pts.size()));
  }
  for (size_t i = 0; i < pts.size(); ++i) {
    if (!is_on_manifold(m, pts[i], opts.point_tol)) {
      throw Error(ErrorKind::InvalidArgument, "point " + std::to_string(i) + " is not on the " +
                                                  std::string(to_string(m.kind)));
    }
  }
  const double adj_limit = 0.5 * m.injectivity_radius();
  const int n = dom.samples;
  const int segments = dom.topology == Topology::Closed ? n : n - 1;
  for (int i = 0; i < segments; ++i) {
    const int j = (i + 1) % n;
    double d = 0.0;
    if (m.kind == ManifoldKind::Sphere) {
      const double c = std::clamp(pts[i].dot(pts[j]) / (m.radius * m.radius), -1.0, 1.0);
      d = m.radius * std::acos(c);
      if (d >= adj_limit) {
        throw Error(ErrorKind::AdjacencyViolation,
                    "nodes " + std::to_string(i) + " and " + std::to_string(j) + " are too far apart");
      }
    } else {
      d = distance(m, pts[i], pts[j]);
    }
    // A vanishing segment makes the one-sided difference quotient zero.
    if (!(d > opts.immersion_eps * dom.spacing())) {
      throw Error(ErrorKind::ImmersionViolation,
                  "nodes " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
    }
  }

  auto data = std::make_shared<Data>();
  data->manifold = m;
  data->domain = dom;
  data->options = opts;
  try {
    data->geometry = detail::make_geometry<double>(
        data->manifold, dom.topology == Topology::Closed ? detail::Topo::Closed : detail::Topo::Open,
        std::move(pts));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InjectivityViolation) {
      throw Error(ErrorKind::AdjacencyViolation, std::string("difference stencil undefined: ") + e.what());
    }
    throw;
  }
  for (int i = 0; i < n; ++i) {
    const double s = data->geometry.speed[i];
    if (!(s > opts.immersion_eps)) {
      throw Error(ErrorKind::ImmersionViolation,
                  "speed " + std::to_string(s) + " at node " + std::to_string(i) + " is below the immersion threshold");
    }
  }
  DiscreteCurve c;
  c.data_ = std::move(data);
  return c;
}

double DiscreteCurve::min_speed() const {
  return *std::min_element(data_->geometry.speed.begin(), data_->geometry.speed.end());
}

bool DiscreteCurve::same_as(const DiscreteCurve& other) const {
  if (data_ == other.data_) return true;
  return manifold() == other.manifold() && domain() == other.domain() && points() == other.points();
}

VectorField::VectorField(DiscreteCurve curve, std::vector<Vector> vectors)
    : curve_(std::move(curve)), vectors_(std::move(vectors)) {
  if (static_cast<int>(vectors_.size()) != curve_.size()) {
    throw Error(ErrorKind::InvalidArgument, "field has " + std::to_string(vectors_.size()) +
                                                " vectors for a curve with " + std::to_string(curve_.size()) +
                                                " nodes");
  }
  for (const auto& v : vectors_) {
    if (v.size() != curve_.manifold().ambient_dim()) {
      throw Error(ErrorKind::InvalidArgument, "field vector has wrong ambient size");
    }
  }
}

VectorField::VectorField(DiscreteCurve curve)
    : curve_(std::move(curve)), vectors_(curve_.size(), Vector::Zero(curve_.manifold().ambient_dim())) {}

void require_same_curve(const VectorField& a, const VectorField& b, const char* what) {
  if (!a.curve().same_as(b.curve())) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + ": fields live on different curves");
  }
}

VectorField VectorField::operator+(const VectorField& o) const {
  require_same_curve(*this, o, "field sum");
  std::vector<Vector> out(vectors_.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = vectors_[i] + o.vectors_[i];
  return {curve_, std::move(out)};
}

VectorField VectorField::operator-(const VectorField& o) const {
  require_same_curve(*this, o, "field difference");
  std::vector<Vector> out(vectors_.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = vectors_[i] - o.vectors_[i];
  return {curve_, std::move(out)};
}

VectorField VectorField::operator*(double a) const {
  std::vector<Vector> out(vectors_.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a * vectors_[i];
  return {curve_, std::move(out)};
}

double VectorField::tangency_residual() const {
  const auto& m = curve_.manifold();
  double worst = 0.0;
  for (int i = 0; i < size(); ++i) {
    const Point& p = curve_.point(i);
    const Vector& v = vectors_[i];
    double r = 0.0;
    if (m.kind == ManifoldKind::Sphere) r = std::abs(p.dot(v)) / (m.radius * std::max(1.0, v.norm()));
    if (m.kind == ManifoldKind::Hyperbolic) {
      r = std::abs(detail::ambient_dot<double>(m, p, v)) / (std::max(1.0, p.norm()) * std::max(1.0, v.norm()));
    }
    worst = std::max(worst, r);
  }
  return worst;
}

VectorField unit_tangent(const DiscreteCurve& c) {
  std::vector<Vector> v(c.size());
  for (int i = 0; i < c.size(); ++i) v[i] = c.velocity(i) / c.speed(i);
  return {c, std::move(v)};
}

VectorField cov_deriv(const DiscreteCurve& c, const VectorField& h, DerivativeVariable variable, int order) {
  if (!h.curve().same_as(c)) throw Error(ErrorKind::InvalidArgument, "cov_deriv: field is not along this curve");
  if (order < 1 || order > c.options().max_derivative_order) {
    throw Error(ErrorKind::InvalidArgument, "cov_deriv: order " + std::to_string(order) +
                                                " outside [1, " + std::to_string(c.options().max_derivative_order) +
                                                "]");
  }
  detail::Field<double> f = h.vectors();
  for (int k = 0; k < order; ++k) {
    f = variable == DerivativeVariable::Theta ? detail::theta_derivative(c.geometry(), f)
                                              : detail::arclength_derivative(c.geometry(), f);
  }
  return {c, std::move(f)};
}

namespace {

// Cubic through (offset_k, value_k), k = 0..3; returns monomial coefficients.
Eigen::Vector4d cubic_coefficients(const std::array<double, 4>& offsets, const std::array<double, 4>& values) {
  Eigen::Matrix4d v;
  Eigen::Vector4d rhs;
  for (int a = 0; a < 4; ++a) {
    double p = 1.0;
    for (int b = 0; b < 4; ++b) {
      v(a, b) = p;
      p *= offsets[a];
    }
    rhs[a] = values[a];
  }
  return v.partialPivLu().solve(rhs);
}

double cubic_integral(const Eigen::Vector4d& c, double tau) {
  return tau * (c[0] + tau * (c[1] / 2.0 + tau * (c[2] / 3.0 + tau * c[3] / 4.0)));
}

double cubic_value(const Eigen::Vector4d& c, double tau) { return c[0] + tau * (c[1] + tau * (c[2] + tau * c[3])); }

std::array<double, 4> lagrange_weights(const std::array<double, 4>& o, double t) {
  std::array<double, 4> w{};
  for (int k = 0; k < 4; ++k) {
    double num = 1.0;
    double den = 1.0;
    for (int j = 0; j < 4; ++j) {
      if (j == k) continue;
      num *= t - o[j];
      den *= o[k] - o[j];
    }
    w[k] = num / den;
  }
  return w;
}

}  // namespace

DiscreteCurve reparametrize_arclength(const DiscreteCurve& c) {
  const int n = c.size();
  const bool closed = c.closed();
  const int segments = closed ? n : n - 1;
  const double h = c.dtheta();
  const auto& m = c.manifold();

  // Four-node stencil around segment i -> i+1 (shifted inward at open ends).
  auto stencil_start = [&](int i) { return closed ? i - 1 : std::clamp(i - 1, 0, n - 4); };

  std::vector<Eigen::Vector4d> speed_poly(segments);
  std::vector<double> cumulative(segments + 1, 0.0);
  for (int i = 0; i < segments; ++i) {
    const int j0 = stencil_start(i);
    std::array<double, 4> off{};
    std::array<double, 4> val{};
    for (int k = 0; k < 4; ++k) {
      off[k] = j0 + k - i;
      val[k] = c.speed(c.wrap(j0 + k)) * h;
    }
    speed_poly[i] = cubic_coefficients(off, val);
    cumulative[i + 1] = cumulative[i] + cubic_integral(speed_poly[i], 1.0);
  }
  const double total = cumulative[segments];

  std::vector<Point> out(n);
  int seg = 0;
  for (int k = 0; k < n; ++k) {
    if (!closed && k == n - 1) {
      out[k] = c.point(n - 1);
      continue;
    }
    const double target = total * k / segments;
    while (seg < segments - 1 && cumulative[seg + 1] <= target) ++seg;
    const double rem = target - cumulative[seg];
    // Newton on the monotone cubic antiderivative.
    const double seg_len = cumulative[seg + 1] - cumulative[seg];
    double tau = seg_len > 0.0 ? std::clamp(rem / seg_len, 0.0, 1.0) : 0.0;
    for (int it = 0; it < 30; ++it) {
      const double f = cubic_integral(speed_poly[seg], tau) - rem;
      const double df = cubic_value(speed_poly[seg], tau);
      if (df <= 0.0) break;
      const double step = f / df;
      tau = std::clamp(tau - step, 0.0, 1.0);
      if (std::abs(step) < 1e-15) break;
    }
    if (tau == 0.0) {
      out[k] = c.point(seg);
      continue;
    }
    const int j0 = stencil_start(seg);
    std::array<double, 4> off{};
    for (int q = 0; q < 4; ++q) off[q] = j0 + q - seg;
    const auto w = lagrange_weights(off, tau);
    const Point& base = c.point(seg);
    Vector y = Vector::Zero(m.ambient_dim());
    for (int q = 0; q < 4; ++q) {
      const int idx = c.wrap(j0 + q);
      if (idx == seg) continue;
      y += w[q] * detail::log_map<double>(m, base, c.point(idx));
    }
    out[k] = detail::point_projection<double>(m, detail::exp_map<double>(m, base, y));
  }
  return DiscreteCurve::build(m, c.domain(), std::move(out), c.options());
}

}  // namespace elastica

#include "elastica/sobolev_metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elastica/detail/metric_kernel.hpp"

namespace elastica {

std::string_view to_string(CoefficientFamily f) {
  switch (f) {
    case CoefficientFamily::Constant: return "constant";
    case CoefficientFamily::ScaleInvariant: return "scale_invariant";
    case CoefficientFamily::Custom: return "custom";
  }
  return "constant";
}

CoefficientFamily coefficient_family_from_string(std::string_view name) {
  if (name == "constant") return CoefficientFamily::Constant;
  if (name == "scale_invariant" || name == "scale-invariant") return CoefficientFamily::ScaleInvariant;
  if (name == "custom") return CoefficientFamily::Custom;
  throw Error(ErrorKind::InvalidArgument, "unknown coefficient family '" + std::string(name) + "'");
}

MetricSpec MetricSpec::constant(std::vector<double> c) {
  MetricSpec s;
  s.order = static_cast<int>(c.size()) - 1;
  s.family = CoefficientFamily::Constant;
  s.coeffs = std::move(c);
  s.validate();
  return s;
}

MetricSpec MetricSpec::scale_invariant(std::vector<double> c) {
  MetricSpec s = constant(std::move(c));
  s.family = CoefficientFamily::ScaleInvariant;
  return s;
}

MetricSpec MetricSpec::make_custom(std::vector<std::function<double(double)>> a) {
  MetricSpec s;
  s.order = static_cast<int>(a.size()) - 1;
  s.family = CoefficientFamily::Custom;
  s.custom = std::move(a);
  s.validate();
  return s;
}

void MetricSpec::validate() const {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "metric order must be >= 1");
  const size_t need = static_cast<size_t>(order) + 1;
  if (family == CoefficientFamily::Custom) {
    if (custom.size() != need) {
      throw Error(ErrorKind::InvalidArgument, "custom metric needs " + std::to_string(need) + " coefficient functions");
    }
    if (!custom_derivative.empty() && custom_derivative.size() != need) {
      throw Error(ErrorKind::InvalidArgument, "custom metric derivative list has the wrong size");
    }
    return;
  }
  if (coeffs.size() != need) {
    throw Error(ErrorKind::InvalidArgument, "metric of order " + std::to_string(order) + " needs " +
                                                std::to_string(need) + " coefficients, got " +
                                                std::to_string(coeffs.size()));
  }
  for (double c : coeffs) {
    if (!std::isfinite(c) || c < 0.0) throw Error(ErrorKind::InvalidArgument, "metric coefficients must be >= 0");
  }
  if (!(coeffs.front() > 0.0) || !(coeffs.back() > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "first and last metric coefficients must be positive");
  }
}

std::vector<double> coefficients(const MetricSpec& spec, double length) {
  spec.validate();
  if (!(length > 0.0)) throw Error(ErrorKind::InvalidArgument, "curve length must be positive");
  std::vector<double> a(spec.order + 1);
  for (int i = 0; i <= spec.order; ++i) {
    switch (spec.family) {
      case CoefficientFamily::Constant: a[i] = spec.coeffs[i]; break;
      case CoefficientFamily::ScaleInvariant: a[i] = spec.coeffs[i] * std::pow(length, 2 * i - 3); break;
      case CoefficientFamily::Custom: a[i] = spec.custom[i](length); break;
    }
  }
  if (spec.family == CoefficientFamily::Custom) {
    for (double v : a) {
      if (!std::isfinite(v) || v < 0.0) throw Error(ErrorKind::InvalidArgument, "custom coefficient is negative");
    }
    if (!(a.front() > 0.0) || !(a.back() > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "custom a_0 and a_n must be positive");
    }
  }
  return a;
}

std::vector<double> coefficient_derivatives(const MetricSpec& spec, double length) {
  spec.validate();
  std::vector<double> d(spec.order + 1, 0.0);
  for (int i = 0; i <= spec.order; ++i) {
    switch (spec.family) {
      case CoefficientFamily::Constant: break;
      case CoefficientFamily::ScaleInvariant:
        d[i] = spec.coeffs[i] * (2 * i - 3) * std::pow(length, 2 * i - 4);
        break;
      case CoefficientFamily::Custom:
        if (!spec.custom_derivative.empty()) {
          d[i] = spec.custom_derivative[i](length);
        } else {
          const double h = 1e-6 * length;
          d[i] = (spec.custom[i](length + h) - spec.custom[i](length - h)) / (2.0 * h);
        }
        break;
    }
  }
  return d;
}

namespace {

void check_order(const MetricSpec& spec, const DiscreteCurve& c) {
  spec.validate();
  if (spec.order > c.options().max_derivative_order) {
    throw Error(ErrorKind::InvalidArgument, "metric order exceeds the curve's derivative limit");
  }
}

void check_field(const DiscreteCurve& c, const VectorField& h) {
  if (!h.curve().same_as(c)) throw Error(ErrorKind::InvalidArgument, "field is not along this curve");
}

}  // namespace

double inner_G(const MetricSpec& spec, const DiscreteCurve& c, const VectorField& h, const VectorField& k) {
  check_order(spec, c);
  check_field(c, h);
  check_field(c, k);
  const auto a = coefficients(spec, c.length());
  const auto& g = c.geometry();
  detail::Field<double> dh = h.vectors();
  detail::Field<double> dk = k.vectors();
  double total = 0.0;
  for (int i = 0; i <= spec.order; ++i) {
    if (i > 0) {
      dh = detail::arclength_derivative(g, dh);
      dk = detail::arclength_derivative(g, dk);
    }
    if (a[i] != 0.0) total += a[i] * detail::integrate_ds(g, dh, dk);
  }
  return total;
}

double norm_G(const MetricSpec& spec, const DiscreteCurve& c, const VectorField& h) {
  return std::sqrt(std::max(0.0, inner_G(spec, c, h, h)));
}

double inner_H(const DiscreteCurve& c, const VectorField& h, const VectorField& k, int order) {
  check_field(c, h);
  check_field(c, k);
  if (order < 1 || order > c.options().max_derivative_order) {
    throw Error(ErrorKind::InvalidArgument, "inner_H: unsupported order " + std::to_string(order));
  }
  const auto& g = c.geometry();
  double total = detail::integrate_dtheta(g, h.vectors(), k.vectors());
  detail::Field<double> dh = h.vectors();
  detail::Field<double> dk = k.vectors();
  for (int i = 0; i < order; ++i) {
    dh = detail::theta_derivative(g, dh);
    dk = detail::theta_derivative(g, dk);
  }
  return total + detail::integrate_dtheta(g, dh, dk);
}

std::vector<double> arclength_seminorms(const DiscreteCurve& c, const VectorField& h, int max_order) {
  check_field(c, h);
  if (max_order < 0 || max_order > c.options().max_derivative_order) {
    throw Error(ErrorKind::InvalidArgument, "arclength_seminorms: unsupported order");
  }
  const auto& g = c.geometry();
  std::vector<double> out;
  detail::Field<double> d = h.vectors();
  for (int i = 0; i <= max_order; ++i) {
    if (i > 0) d = detail::arclength_derivative(g, d);
    out.push_back(detail::integrate_ds(g, d, d));
  }
  return out;
}

double field_norm(const DiscreteCurve& c, const VectorField& h, FieldNorm which) {
  check_field(c, h);
  const auto& g = c.geometry();
  switch (which) {
    case FieldNorm::L2_ds: return std::sqrt(std::max(0.0, detail::integrate_ds(g, h.vectors(), h.vectors())));
    case FieldNorm::L2_dtheta:
      return std::sqrt(std::max(0.0, detail::integrate_dtheta(g, h.vectors(), h.vectors())));
    case FieldNorm::Linf: {
      double m = 0.0;
      for (int i = 0; i < h.size(); ++i) {
        m = std::max(m, std::sqrt(std::max(0.0, detail::ambient_dot<double>(c.manifold(), h[i], h[i]))));
      }
      return m;
    }
  }
  return 0.0;
}

namespace {

std::vector<double> uniform_times(size_t count) {
  if (count < 2) throw Error(ErrorKind::InvalidArgument, "a path needs at least two curves");
  std::vector<double> t(count);
  for (size_t j = 0; j < count; ++j) t[j] = static_cast<double>(j) / static_cast<double>(count - 1);
  return t;
}

}  // namespace

CurvePath::CurvePath(std::vector<DiscreteCurve> curves) : CurvePath(uniform_times(curves.size()), curves) {}

CurvePath::CurvePath(std::vector<double> times, std::vector<DiscreteCurve> curves)
    : times_(std::move(times)), curves_(std::move(curves)) {
  if (curves_.size() < 2) throw Error(ErrorKind::InvalidArgument, "a path needs at least two curves");
  if (times_.size() != curves_.size()) throw Error(ErrorKind::InvalidArgument, "path times and curves differ in size");
  for (size_t j = 1; j < times_.size(); ++j) {
    if (!(times_[j] > times_[j - 1])) throw Error(ErrorKind::InvalidArgument, "path times must increase");
  }
  for (const auto& c : curves_) {
    if (!(c.manifold() == curves_.front().manifold()) || !(c.domain() == curves_.front().domain())) {
      throw Error(ErrorKind::InvalidArgument, "path curves must share manifold and parameter grid");
    }
  }
}

namespace {

detail::Topo topo_of(const DiscreteCurve& c) { return c.closed() ? detail::Topo::Closed : detail::Topo::Open; }

void check_time_adjacency(const DiscreteCurve& a, const DiscreteCurve& b, int j) {
  const auto& m = a.manifold();
  if (m.kind != ManifoldKind::Sphere) return;
  const double limit = 0.5 * m.injectivity_radius();
  for (int i = 0; i < a.size(); ++i) {
    if (distance(m, a.point(i), b.point(i)) >= limit) {
      throw Error(ErrorKind::TimeAdjacencyViolation,
                  "node " + std::to_string(i) + " moves too far between path steps " + std::to_string(j) + " and " +
                      std::to_string(j + 1));
    }
  }
}

}  // namespace

IntervalMidpoint interval_midpoint(const DiscreteCurve& a, const DiscreteCurve& b, double dt) {
  auto mid = detail::midpoint_data<double>(a.manifold(), a.points(), b.points(), dt);
  for (auto& p : mid.points) p = detail::point_projection<double>(a.manifold(), p);
  DiscreteCurve c = DiscreteCurve::build(a.manifold(), a.domain(), std::move(mid.points), a.options());
  for (int i = 0; i < c.size(); ++i) {
    mid.velocity[i] = detail::tangent_projection<double>(a.manifold(), c.point(i), mid.velocity[i]);
  }
  return {c, VectorField(c, std::move(mid.velocity))};
}

PathEnergy path_energy(const MetricSpec& spec, const CurvePath& path) {
  spec.validate();
  PathEnergy out;
  const auto& t = path.times();
  for (int j = 0; j < path.steps(); ++j) {
    const DiscreteCurve& a = path.curve(j);
    const DiscreteCurve& b = path.curve(j + 1);
    check_time_adjacency(a, b, j);
    const double dt = t[j + 1] - t[j];
    auto terms = detail::interval_terms<double>(a.manifold(), topo_of(a), spec.order, a.points(), b.points(), dt);
    if (!(terms.min_speed > a.options().immersion_eps)) {
      throw Error(ErrorKind::ImmersionViolation, "midpoint curve of path step " + std::to_string(j) + " is not immersed");
    }
    double ell = 0.0;
    for (double w : terms.weight) ell += w;
    coefficients(spec, ell);  // validates custom coefficients at this length
    const double e = detail::interval_energy(spec, terms, dt);
    const double speed2 = std::max(0.0, e / dt);
    out.interval_speed2.push_back(speed2);
    out.energy += e;
    out.length += dt * std::sqrt(speed2);
  }
  return out;
}

}  // namespace elastica

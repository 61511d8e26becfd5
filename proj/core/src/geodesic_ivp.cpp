#include "elastica/geodesic_ivp.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "elastica/block_tridiagonal.hpp"
#include "elastica/detail/metric_kernel.hpp"
#include "inertia_kernel.hpp"
#include "jet_support.hpp"

namespace elastica {

namespace {

using detail::Field;
using detail::Topo;

Topo topo_of(const DiscreteCurve& c) { return c.closed() ? Topo::Closed : Topo::Open; }

void require_first_order(const MetricSpec& spec) {
  spec.validate();
  if (spec.order != 1) {
    throw Error(ErrorKind::UnsupportedOrder, "the inertia operator is implemented for order 1, got " +
                                                 std::to_string(spec.order));
  }
}

void require_on(const DiscreteCurve& c, const VectorField& h) {
  if (!h.curve().same_as(c)) throw Error(ErrorKind::InvalidArgument, "field is not along this curve");
}

void check_boundary(const DiscreteCurve& c, const std::optional<BoundaryData>& bc) {
  if (!bc) return;
  if (c.closed()) throw Error(ErrorKind::InvalidArgument, "boundary data given for a closed curve");
  const auto& m = c.manifold();
  if (bc->start.size() != m.ambient_dim() || bc->end.size() != m.ambient_dim()) {
    throw Error(ErrorKind::InvalidArgument, "boundary data has the wrong dimension");
  }
}

struct Coeffs {
  double a0, a1, da0, da1;
};

Coeffs coeffs_at(const MetricSpec& spec, double ell) {
  const auto a = coefficients(spec, ell);
  const auto d = coefficient_derivatives(spec, ell);
  return {a[0], a[1], d[0], d[1]};
}

template <class T>
VectorT<T> lift(const Vector& v) {
  VectorT<T> out(v.size());
  for (int k = 0; k < v.size(); ++k) out[k] = T(v[k]);
  return out;
}

// Neumann data enter the first and last rows of K u = w f as
// (K u)_0 = w_0 f_0 - a1 F_0 / s_0 and (K u)_{N-1} = w f + a1 F_1 / s_{N-1}.
void add_boundary_flux(const DiscreteCurve& c, double a1, const BoundaryData& bc, double sign, Field<double>& rows) {
  const int n = c.size();
  rows[0] += sign * a1 / c.speed(0) * bc.start;
  rows[n - 1] -= sign * a1 / c.speed(n - 1) * bc.end;
}

Field<double> apply_weighted(const DiscreteCurve& c, double a0, double a1, const Field<double>& h) {
  return detail::apply_compact<double>(c.manifold(), topo_of(c), c.points(), c.weights(), h, a0, a1);
}

/// K u = rhs in coordinates of a parallel frame E_{i+1} = P E_i.
class CompactSolver {
 public:
  CompactSolver(const DiscreteCurve& c, double a0, double a1) : c_(c) {
    const auto& m = c.manifold();
    const int n = c.size();
    frames_.resize(n);
    frames_[0] = tangent_frame(m, c.point(0));
    const int d = static_cast<int>(frames_[0].cols());
    for (int i = 0; i + 1 < n; ++i) {
      frames_[i + 1].resize(frames_[i].rows(), d);
      for (int k = 0; k < d; ++k) {
        frames_[i + 1].col(k) = detail::transport_map<double>(m, c.point(i), c.point(i + 1), Vector(frames_[i].col(k)));
      }
    }
    const int ne = detail::edge_count(topo_of(c), n);
    std::vector<double> len(ne);
    for (int e = 0; e < ne; ++e) len[e] = distance(m, c.point(e), c.point((e + 1) % n));

    sys_ = std::make_unique<BlockTridiagonal>(n, d, c.closed());
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
    for (int i = 0; i < n; ++i) {
      double diag = a0 * c.weights()[i];
      if (c.closed() || i < n - 1) diag += a1 / len[i % ne];
      if (c.closed() || i > 0) diag += a1 / len[(i - 1 + ne) % ne];
      sys_->diag(i) = diag * id;
    }
    for (int i = 0; i + 1 < n; ++i) sys_->lower(i) = -(a1 / len[i]) * id;
    if (c.closed()) {
      // Q: coordinates of P_{N-1 -> 0} E_{N-1} in E_0.
      Eigen::MatrixXd q(d, d);
      for (int k = 0; k < d; ++k) {
        const Vector t = detail::transport_map<double>(m, c.point(n - 1), c.point(0), Vector(frames_[n - 1].col(k)));
        for (int r = 0; r < d; ++r) q(r, k) = detail::ambient_dot<double>(m, Vector(frames_[0].col(r)), t);
      }
      sys_->corner() = -(a1 / len[n - 1]) * q.transpose();
    }
    sys_->factor();
  }

  Field<double> solve(const Field<double>& rhs) const {
    const auto& m = c_.manifold();
    const int n = c_.size();
    const int d = static_cast<int>(frames_[0].cols());
    Eigen::VectorXd b(n * d);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < d; ++k) b[i * d + k] = detail::ambient_dot<double>(m, Vector(frames_[i].col(k)), rhs[i]);
    }
    const Eigen::VectorXd x = sys_->solve(b);
    Field<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = frames_[i] * x.segment(i * d, d);
    return out;
  }

  const std::vector<Eigen::MatrixXd>& frames() const { return frames_; }

 private:
  DiscreteCurve c_;
  std::vector<Eigen::MatrixXd> frames_;
  std::unique_ptr<BlockTridiagonal> sys_;
};

Field<double> project_all(const DiscreteCurve& c, Field<double> f) {
  for (int i = 0; i < c.size(); ++i) f[i] = detail::tangent_projection<double>(c.manifold(), c.point(i), f[i]);
  return f;
}

}  // namespace

VectorField apply_inertia(const MetricSpec& spec, const DiscreteCurve& c, const VectorField& h,
                          const std::optional<BoundaryData>& bc) {
  require_first_order(spec);
  require_on(c, h);
  check_boundary(c, bc);
  const Coeffs a = coeffs_at(spec, c.length());
  Field<double> rows = apply_weighted(c, a.a0, a.a1, h.vectors());
  if (bc) add_boundary_flux(c, a.a1, *bc, 1.0, rows);
  for (int i = 0; i < c.size(); ++i) rows[i] /= c.weights()[i];
  return {c, std::move(rows)};
}

VectorField solve_inertia(const MetricSpec& spec, const DiscreteCurve& c, const VectorField& f,
                          const std::optional<BoundaryData>& bc) {
  require_first_order(spec);
  require_on(c, f);
  check_boundary(c, bc);
  const Coeffs a = coeffs_at(spec, c.length());
  if (!(a.a0 > 0.0) || !(a.a1 > 0.0)) throw Error(ErrorKind::InvalidArgument, "solve_inertia needs a_0, a_1 > 0");
  Field<double> rows(c.size());
  for (int i = 0; i < c.size(); ++i) rows[i] = c.weights()[i] * f[i];
  if (bc) add_boundary_flux(c, a.a1, *bc, -1.0, rows);
  CompactSolver solver(c, a.a0, a.a1);
  return {c, solver.solve(rows)};
}

double compact_energy(const MetricSpec& spec, const DiscreteCurve& c, const VectorField& h) {
  require_first_order(spec);
  require_on(c, h);
  const auto parts = detail::compact_parts<double>(c.manifold(), topo_of(c), c.points(), h.vectors());
  const Coeffs a = coeffs_at(spec, c.length());
  double mass = 0.0, edge = 0.0;
  for (double v : parts.mass) mass += v;
  for (double v : parts.edge) edge += v;
  return a.a0 * mass + a.a1 * edge;
}

std::vector<double> psi_form(const MetricSpec& spec, const DiscreteCurve& c, const VectorField& w) {
  require_first_order(spec);
  require_on(c, w);
  const auto& m = c.manifold();
  const Coeffs a = coeffs_at(spec, c.length());
  const VectorField ws = cov_deriv(c, w, DerivativeVariable::Arclength, 1);
  const double int_w = detail::integrate_ds(c.geometry(), w.vectors(), w.vectors());
  const double int_ws = detail::integrate_ds(c.geometry(), ws.vectors(), ws.vectors());
  std::vector<double> psi(c.size());
  for (int i = 0; i < c.size(); ++i) {
    psi[i] = a.a0 * detail::ambient_dot<double>(m, w[i], w[i]) + a.da0 * int_w -
             a.a1 * detail::ambient_dot<double>(m, ws[i], ws[i]) + a.da1 * int_ws;
  }
  return psi;
}

GeodesicState::GeodesicState(DiscreteCurve c, VectorField w) : c_(std::move(c)), w_(std::move(w)) {
  require_on(c_, w_);
  if (w_.tangency_residual() > 1e-8) throw Error(ErrorKind::InvalidArgument, "initial velocity is not tangent");
}

std::string_view to_string(IvpModel m) { return m == IvpModel::Variational ? "variational" : "continuum"; }

IvpModel ivp_model_from_string(std::string_view name) {
  if (name == "variational") return IvpModel::Variational;
  if (name == "continuum") return IvpModel::Continuum;
  throw Error(ErrorKind::InvalidArgument, "unknown IVP model '" + std::string(name) + "'");
}

namespace {

// Gradient of <K_c w, w> with respect to the node positions, w carried along
// by parallel transport. Nodes of one colour are perturbed together along
// their frame directions; every local term depends on at most one of them.
template <int D>
Field<double> position_gradient(const MetricSpec& spec, const DiscreteCurve& c, const Field<double>& w,
                                const std::vector<Eigen::MatrixXd>& frames) {
  using J = ceres::Jet<double, D>;
  const auto& m = c.manifold();
  const Topo topo = topo_of(c);
  const int n = c.size();
  constexpr int kRadius = 4;

  const auto base = detail::compact_parts<double>(m, topo, c.points(), w);
  double mass = 0.0, edge = 0.0;
  for (double v : base.mass) mass += v;
  for (double v : base.edge) edge += v;
  const Coeffs a = coeffs_at(spec, base.length);
  const double length_factor = a.da0 * mass + a.da1 * edge;

  const auto coloring = detail::color_nodes(n, c.closed(), kRadius);
  std::vector<Eigen::Matrix<double, D, 1>> grad(n, Eigen::Matrix<double, D, 1>::Zero());
  Field<J> pts(n), h(n);
  for (int colour = 0; colour < coloring.count; ++colour) {
    for (int i = 0; i < n; ++i) {
      pts[i] = lift<J>(c.point(i));
      h[i] = lift<J>(w[i]);
      if (coloring.color[i] != colour) continue;
      VectorT<J> delta = VectorT<J>::Zero(c.point(i).size());
      for (int k = 0; k < D; ++k) delta += lift<J>(Vector(frames[i].col(k))) * J(0.0, k);
      pts[i] = detail::exp_map<J>(m, lift<J>(c.point(i)), delta);
      h[i] = detail::transport_map<J>(m, lift<J>(c.point(i)), pts[i], h[i]);
    }
    const auto parts = detail::compact_parts<J>(m, topo, pts, h);
    auto owner = [&](int lo, int hi) {
      for (int j = lo; j <= hi; ++j) {
        if (!c.closed() && (j < 0 || j >= n)) continue;
        const int jj = c.wrap(j);
        if (coloring.color[jj] == colour) return jj;
      }
      return -1;
    };
    for (int i = 0; i < n; ++i) {
      const int j = owner(i - kRadius, i + kRadius);
      if (j >= 0) grad[j] += a.a0 * parts.mass[i].v + length_factor * parts.weight[i].v;
    }
    for (int e = 0; e < static_cast<int>(parts.edge.size()); ++e) {
      const int j = owner(e, e + 1);
      if (j >= 0) grad[j] += a.a1 * parts.edge[e].v;
    }
  }
  Field<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = frames[i] * grad[i];
  return out;
}

Field<double> position_gradient_dispatch(const MetricSpec& spec, const DiscreteCurve& c, const Field<double>& w,
                                         const std::vector<Eigen::MatrixXd>& frames) {
  switch (c.manifold().dim) {
    case 1: return position_gradient<1>(spec, c, w, frames);
    case 2: return position_gradient<2>(spec, c, w, frames);
    case 3: return position_gradient<3>(spec, c, w, frames);
    case 4: return position_gradient<4>(spec, c, w, frames);
    case 5: return position_gradient<5>(spec, c, w, frames);
    case 6: return position_gradient<6>(spec, c, w, frames);
    case 7: return position_gradient<7>(spec, c, w, frames);
    case 8: return position_gradient<8>(spec, c, w, frames);
  }
  throw Error(ErrorKind::InvalidArgument, "unsupported manifold dimension");
}

// (D_w K) w: derivative of P_back K_{c + eps w} (P w) at eps = 0.
Field<double> inertia_derivative(const MetricSpec& spec, const DiscreteCurve& c, const Field<double>& w) {
  using J = ceres::Jet<double, 1>;
  const auto& m = c.manifold();
  const Topo topo = topo_of(c);
  const int n = c.size();
  Field<J> base(n), pts(n), h(n);
  for (int i = 0; i < n; ++i) {
    base[i] = lift<J>(c.point(i));
    pts[i] = detail::exp_map<J>(m, base[i], lift<J>(w[i]) * J(0.0, 0));
    h[i] = detail::transport_map<J>(m, base[i], pts[i], lift<J>(w[i]));
  }
  const auto g = detail::make_geometry<J>(m, topo, pts);
  const J a0 = detail::coefficient_at<J>(spec, 0, g.length);
  const J a1 = detail::coefficient_at<J>(spec, 1, g.length);
  const Field<J> kh = detail::apply_compact<J>(m, topo, pts, g.weight, h, a0, a1);
  Field<double> out(n);
  for (int i = 0; i < n; ++i) {
    const VectorT<J> back = detail::transport_map<J>(m, pts[i], base[i], kh[i]);
    out[i].resize(back.size());
    for (int k = 0; k < back.size(); ++k) out[i][k] = back[k].v[0];
  }
  return out;
}

Field<double> variational_acceleration(const MetricSpec& spec, const DiscreteCurve& c, const Field<double>& w) {
  const Coeffs a = coeffs_at(spec, c.length());
  CompactSolver solver(c, a.a0, a.a1);
  const Field<double> b = position_gradient_dispatch(spec, c, w, solver.frames());
  const Field<double> dk = inertia_derivative(spec, c, w);
  Field<double> rhs(c.size());
  for (int i = 0; i < c.size(); ++i) rhs[i] = 0.5 * b[i] - dk[i];
  return solver.solve(project_all(c, std::move(rhs)));
}

Vector curv(const ManifoldSpec& m, const Vector& x, const Vector& y, const Vector& z) {
  return detail::curvature_map<double>(m, x, y, z);
}

Field<double> continuum_acceleration(const MetricSpec& spec, const DiscreteCurve& c, const VectorField& wf) {
  const auto& m = c.manifold();
  const int n = c.size();
  const Coeffs a = coeffs_at(spec, c.length());
  const auto ds = [&](const VectorField& f) { return cov_deriv(c, f, DerivativeVariable::Arclength, 1); };
  const auto dot = [&](const Vector& x, const Vector& y) { return detail::ambient_dot<double>(m, x, y); };
  const Field<double>& w = wf.vectors();

  const VectorField v = unit_tangent(c);
  const VectorField ws = ds(wf);
  const VectorField vs = ds(v);
  const VectorField wss = ds(ws);
  std::vector<double> lambda(n);
  double ell_t = 0.0;
  for (int i = 0; i < n; ++i) {
    lambda[i] = dot(v[i], ws[i]);
    ell_t += c.weights()[i] * lambda[i];
  }
  Field<double> aw = apply_weighted(c, a.a0, a.a1, w);
  for (int i = 0; i < n; ++i) aw[i] /= c.weights()[i];
  const std::vector<double> psi = psi_form(spec, c, wf);

  // Commutators of D_t with D_s: [D_t, D_s] X = -lambda D_s X + R(w, v) X.
  Field<double> cw(n);
  for (int i = 0; i < n; ++i) cw[i] = -lambda[i] * ws[i] + curv(m, w[i], v[i], w[i]);
  const VectorField ds_cw = ds(VectorField(c, project_all(c, cw)));

  Field<double> rhs(n);
  for (int i = 0; i < n; ++i) {
    const Vector c2 = -lambda[i] * wss[i] + curv(m, w[i], v[i], ws[i]);
    const Vector dt_a = ell_t * (a.da0 * w[i] - a.da1 * wss[i]) - a.a1 * (c2 + ds_cw[i]);
    rhs[i] = -dt_a - lambda[i] * aw[i] - 0.5 * psi[i] * vs[i] - dot(ws[i], aw[i]) * v[i] -
             a.a1 * curv(m, w[i], ws[i], v[i]);
    rhs[i] *= c.weights()[i];
  }
  if (!c.closed()) {
    // Natural boundary condition D_t(a_1 D_s w) = Psi v / 2 solved for D_s D_t w.
    auto flux = [&](int i) -> Vector {
      const Vector target = (0.5 * psi[i] * v[i] - a.da1 * ell_t * ws[i]) / a.a1;
      return c.speed(i) * (target + lambda[i] * ws[i] - curv(m, w[i], v[i], w[i]));
    };
    add_boundary_flux(c, a.a1, BoundaryData{flux(0), flux(n - 1)}, -1.0, rhs);
  }
  CompactSolver solver(c, a.a0, a.a1);
  return solver.solve(project_all(c, std::move(rhs)));
}

Field<double> acceleration(const MetricSpec& spec, const DiscreteCurve& c, const Field<double>& w, IvpModel model) {
  if (model == IvpModel::Variational) return variational_acceleration(spec, c, w);
  return continuum_acceleration(spec, c, VectorField(c, w));
}

}  // namespace

VectorField geodesic_acceleration(const MetricSpec& spec, const GeodesicState& s, IvpModel model) {
  require_first_order(spec);
  const auto& c = s.curve();
  return {c, acceleration(spec, c, s.velocity().vectors(), model)};
}

namespace {

struct AmbientState {
  Field<double> x, u;
};

// Second ambient derivative of a curve on the manifold with covariant
// acceleration acc and velocity u.
Vector ambient_acceleration(const ManifoldSpec& m, const Vector& x, const Vector& u, const Vector& acc) {
  switch (m.kind) {
    case ManifoldKind::Euclidean: return acc;
    case ManifoldKind::Sphere: return acc - (u.squaredNorm() / (m.radius * m.radius)) * x;
    case ManifoldKind::Hyperbolic: return acc + detail::ambient_dot<double>(m, u, u) * x;
  }
  return acc;
}

struct Projected {
  DiscreteCurve curve;
  Field<double> u;
};

Projected project_state(const DiscreteCurve& like, const AmbientState& s) {
  const auto& m = like.manifold();
  std::vector<Point> pts(s.x.size());
  for (size_t i = 0; i < pts.size(); ++i) pts[i] = detail::point_projection<double>(m, s.x[i]);
  DiscreteCurve c = DiscreteCurve::build(m, like.domain(), std::move(pts), like.options());
  Field<double> u(s.u.size());
  for (size_t i = 0; i < u.size(); ++i) u[i] = detail::tangent_projection<double>(m, c.point(i), s.u[i]);
  return {c, std::move(u)};
}

AmbientState rhs(const MetricSpec& spec, const DiscreteCurve& like, const AmbientState& s, IvpModel model) {
  const Projected p = project_state(like, s);
  const Field<double> acc = acceleration(spec, p.curve, p.u, model);
  AmbientState out{p.u, Field<double>(acc.size())};
  for (size_t i = 0; i < acc.size(); ++i) {
    out.u[i] = ambient_acceleration(like.manifold(), p.curve.point(i), p.u[i], acc[i]);
  }
  return out;
}

AmbientState axpy(const AmbientState& s, double h, const AmbientState& k) {
  AmbientState out = s;
  for (size_t i = 0; i < s.x.size(); ++i) {
    out.x[i] += h * k.x[i];
    out.u[i] += h * k.u[i];
  }
  return out;
}

IvpSample sample(const MetricSpec& spec, int step, double t, const DiscreteCurve& c, const VectorField& w) {
  return {step, t, compact_energy(spec, c, w), c.length(), c.min_speed()};
}

}  // namespace

IvpResult ivp_integrate(const MetricSpec& spec, const GeodesicState& s0, double T, int steps, const IvpOptions& opts) {
  require_first_order(spec);
  if (!(T > 0.0) || !std::isfinite(T)) throw Error(ErrorKind::InvalidArgument, "integration time must be positive");
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "need at least one time step");
  const double h = T / steps;
  IvpResult res;
  const DiscreteCurve& c0 = s0.curve();
  res.times.push_back(0.0);
  res.curves.push_back(c0);
  res.velocities.push_back(s0.velocity());
  res.diagnostics.push_back(sample(spec, 0, 0.0, c0, s0.velocity()));
  const double e0 = res.diagnostics.front().energy;

  AmbientState s{c0.points(), s0.velocity().vectors()};
  for (int step = 1; step <= steps; ++step) {
    try {
      const AmbientState k1 = rhs(spec, c0, s, opts.model);
      const AmbientState k2 = rhs(spec, c0, axpy(s, 0.5 * h, k1), opts.model);
      const AmbientState k3 = rhs(spec, c0, axpy(s, 0.5 * h, k2), opts.model);
      const AmbientState k4 = rhs(spec, c0, axpy(s, h, k3), opts.model);
      AmbientState next = s;
      for (size_t i = 0; i < s.x.size(); ++i) {
        next.x[i] += h / 6.0 * (k1.x[i] + 2.0 * k2.x[i] + 2.0 * k3.x[i] + k4.x[i]);
        next.u[i] += h / 6.0 * (k1.u[i] + 2.0 * k2.u[i] + 2.0 * k3.u[i] + k4.u[i]);
      }
      Projected p = project_state(c0, next);
      s = {p.curve.points(), p.u};
      const double t = step * h;
      VectorField w(p.curve, std::move(p.u));
      res.times.push_back(t);
      res.curves.push_back(p.curve);
      res.velocities.push_back(w);
      res.diagnostics.push_back(sample(spec, step, t, p.curve, w));
      if (e0 > 0.0) res.energy_drift = std::max(res.energy_drift, std::abs(res.diagnostics.back().energy - e0) / e0);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ImmersionViolation && e.kind() != ErrorKind::AdjacencyViolation) throw;
      res.completed = false;
      res.abort_reason = "step " + std::to_string(step) + ": " + e.what();
      break;
    }
  }
  return res;
}

}  // namespace elastica

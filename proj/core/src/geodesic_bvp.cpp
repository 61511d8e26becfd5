#include "elastica/geodesic_bvp.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "elastica/detail/metric_kernel.hpp"
#include "jet_support.hpp"
#include "parallel.hpp"

namespace elastica {

namespace {

using detail::Field;
using detail::Topo;

Topo topo_of(const DiscreteCurve& c) { return c.closed() ? Topo::Closed : Topo::Open; }

bool is_feasibility_error(ErrorKind k) {
  return k == ErrorKind::ImmersionViolation || k == ErrorKind::AdjacencyViolation ||
         k == ErrorKind::TimeAdjacencyViolation || k == ErrorKind::InjectivityViolation;
}

template <class T>
VectorT<T> lift(const Vector& v) {
  VectorT<T> out(v.size());
  for (int k = 0; k < v.size(); ++k) out[k] = T(v[k]);
  return out;
}

double field_dot(const ManifoldSpec& m, const std::vector<Field<double>>& a, const std::vector<Field<double>>& b) {
  double s = 0.0;
  for (size_t j = 0; j < a.size(); ++j) {
    for (size_t i = 0; i < a[j].size(); ++i) s += detail::ambient_dot<double>(m, a[j][i], b[j][i]);
  }
  return s;
}

}  // namespace

std::string_view to_string(InitMode m) {
  return m == InitMode::PointwiseGeodesic ? "pointwise_geodesic" : "straight_embedding";
}

InitMode init_mode_from_string(std::string_view name) {
  if (name == "pointwise_geodesic") return InitMode::PointwiseGeodesic;
  if (name == "straight_embedding") return InitMode::StraightEmbedding;
  throw Error(ErrorKind::InvalidArgument, "unknown initialisation mode '" + std::string(name) + "'");
}

void BvpOptions::validate() const {
  if (time_steps < 2) throw Error(ErrorKind::InvalidArgument, "time_steps must be >= 2");
  if (max_iterations < 0) throw Error(ErrorKind::InvalidArgument, "max_iterations must be >= 0");
  if (!(gtol > 0.0)) throw Error(ErrorKind::InvalidArgument, "gtol must be positive");
  if (!(armijo > 0.0 && armijo < 1.0)) throw Error(ErrorKind::InvalidArgument, "armijo parameter must lie in (0,1)");
  if (!(backtrack > 0.0 && backtrack < 1.0)) throw Error(ErrorKind::InvalidArgument, "backtrack factor must lie in (0,1)");
  if (max_backtracks < 1) throw Error(ErrorKind::InvalidArgument, "max_backtracks must be >= 1");
  if (!(init_noise >= 0.0)) throw Error(ErrorKind::InvalidArgument, "init_noise must be >= 0");
  if (threads < 1) throw Error(ErrorKind::InvalidArgument, "threads must be >= 1");
}

CurvePath init_path(const DiscreteCurve& c0, const DiscreteCurve& c1, int time_steps, InitMode mode) {
  if (!(c0.manifold() == c1.manifold()) || !(c0.domain() == c1.domain())) {
    throw Error(ErrorKind::InvalidArgument, "end curves must share manifold and parameter grid");
  }
  if (time_steps < 2) throw Error(ErrorKind::InvalidArgument, "time_steps must be >= 2");
  const auto& m = c0.manifold();
  const int n = c0.size();
  std::vector<Vector> logs(n);
  for (int i = 0; i < n; ++i) {
    try {
      logs[i] = log(m, c0.point(i), c1.point(i)).vec;
    } catch (const Error& e) {
      throw Error(ErrorKind::InitFailure, "node " + std::to_string(i) + ": " + e.what());
    }
  }
  std::vector<DiscreteCurve> curves{c0};
  for (int j = 1; j < time_steps; ++j) {
    const double t = static_cast<double>(j) / time_steps;
    std::vector<Point> pts(n);
    for (int i = 0; i < n; ++i) {
      if (mode == InitMode::PointwiseGeodesic) {
        pts[i] = exp(m, c0.point(i), {c0.point(i), t * logs[i]});
      } else {
        const Vector x = (1.0 - t) * c0.point(i) + t * c1.point(i);
        if (m.kind == ManifoldKind::Sphere && x.norm() < 1e-8 * m.radius) {
          throw Error(ErrorKind::InitFailure, "node " + std::to_string(i) + ": straight embedding passes the centre");
        }
        pts[i] = detail::point_projection<double>(m, x);
      }
    }
    try {
      curves.push_back(DiscreteCurve::build(m, c0.domain(), std::move(pts), c0.options()));
    } catch (const Error& e) {
      throw Error(ErrorKind::InitFailure, "interior curve " + std::to_string(j) + ": " + e.what());
    }
  }
  curves.push_back(c1);
  return CurvePath(std::move(curves));
}

namespace {

struct IntervalGradient {
  Field<double> left, right;  // d E_j / d c_j and d E_j / d c_{j+1}
};

int support_radius(int order) { return 2 * order + 4; }

// Gradient of dt G_m(u,u) for one interval. Nodes of one colour on both
// curves are perturbed at once (2D dual components): every per-node term of
// the midpoint curve depends on at most one seeded node index.
template <int D>
IntervalGradient interval_gradient(const MetricSpec& spec, const DiscreteCurve& a, const DiscreteCurve& b, double dt) {
  using J = ceres::Jet<double, 2 * D>;
  const auto& m = a.manifold();
  const Topo topo = topo_of(a);
  const int n = a.size();
  const int radius = support_radius(spec.order);

  const auto base = detail::interval_terms<double>(m, topo, spec.order, a.points(), b.points(), dt);
  double ell = 0.0;
  for (double w : base.weight) ell += w;
  const auto coef = coefficients(spec, ell);
  const auto dcoef = coefficient_derivatives(spec, ell);
  double length_factor = 0.0;
  for (int k = 0; k <= spec.order; ++k) {
    double q = 0.0;
    for (double v : base.density[k]) q += v;
    length_factor += dcoef[k] * q;
  }

  std::vector<Eigen::MatrixXd> fa(n), fb(n);
  for (int i = 0; i < n; ++i) {
    fa[i] = tangent_frame(m, a.point(i));
    fb[i] = tangent_frame(m, b.point(i));
  }
  const auto coloring = detail::color_nodes(n, a.closed(), radius);
  using Grad = Eigen::Matrix<double, 2 * D, 1>;
  std::vector<Grad> grad(n, Grad::Zero());
  Field<J> pa(n), pb(n);
  for (int colour = 0; colour < coloring.count; ++colour) {
    for (int i = 0; i < n; ++i) {
      pa[i] = lift<J>(a.point(i));
      pb[i] = lift<J>(b.point(i));
      if (coloring.color[i] != colour) continue;
      VectorT<J> da = VectorT<J>::Zero(a.point(i).size());
      VectorT<J> db = VectorT<J>::Zero(a.point(i).size());
      for (int k = 0; k < D; ++k) {
        da += lift<J>(Vector(fa[i].col(k))) * J(0.0, k);
        db += lift<J>(Vector(fb[i].col(k))) * J(0.0, D + k);
      }
      pa[i] = detail::exp_map<J>(m, pa[i], da);
      pb[i] = detail::exp_map<J>(m, pb[i], db);
    }
    const auto terms = detail::interval_terms<J>(m, topo, spec.order, pa, pb, dt);
    for (int i = 0; i < n; ++i) {
      int owner = -1;
      for (int j = i - radius; j <= i + radius && owner < 0; ++j) {
        if (!a.closed() && (j < 0 || j >= n)) continue;
        const int jj = a.wrap(j);
        if (coloring.color[jj] == colour) owner = jj;
      }
      if (owner < 0) continue;
      Grad g = length_factor * terms.weight[i].v;
      for (int k = 0; k <= spec.order; ++k) g += coef[k] * terms.density[k][i].v;
      grad[owner] += dt * g;
    }
  }
  IntervalGradient out;
  out.left.resize(n);
  out.right.resize(n);
  for (int i = 0; i < n; ++i) {
    out.left[i] = fa[i] * grad[i].template head<D>();
    out.right[i] = fb[i] * grad[i].template tail<D>();
  }
  return out;
}

IntervalGradient interval_gradient_dispatch(const MetricSpec& spec, const DiscreteCurve& a, const DiscreteCurve& b,
                                            double dt) {
  switch (a.manifold().dim) {
    case 1: return interval_gradient<1>(spec, a, b, dt);
    case 2: return interval_gradient<2>(spec, a, b, dt);
    case 3: return interval_gradient<3>(spec, a, b, dt);
    case 4: return interval_gradient<4>(spec, a, b, dt);
    case 5: return interval_gradient<5>(spec, a, b, dt);
    case 6: return interval_gradient<6>(spec, a, b, dt);
    case 7: return interval_gradient<7>(spec, a, b, dt);
    case 8: return interval_gradient<8>(spec, a, b, dt);
  }
  throw Error(ErrorKind::InvalidArgument, "unsupported manifold dimension");
}

std::vector<Field<double>> path_gradient(const MetricSpec& spec, const std::vector<DiscreteCurve>& curves,
                                         const std::vector<double>& times, int threads) {
  const int steps = static_cast<int>(curves.size()) - 1;
  std::vector<IntervalGradient> parts(steps);
  detail::parallel_for(steps, threads, [&](int j) {
    parts[j] = interval_gradient_dispatch(spec, curves[j], curves[j + 1], times[j + 1] - times[j]);
  });
  std::vector<Field<double>> g(steps - 1);
  for (int j = 1; j < steps; ++j) {
    g[j - 1] = parts[j - 1].right;
    for (size_t i = 0; i < g[j - 1].size(); ++i) g[j - 1][i] += parts[j].left[i];
  }
  return g;
}

using SparseMatrix = Eigen::SparseMatrix<double>;

// Scalar theta-derivative with the stencils of the energy, divided by speed.
SparseMatrix arclength_difference(const detail::CurveGeometry<double>& g) {
  const int n = g.size();
  std::vector<Eigen::Triplet<double>> t;
  const double inv2h = 1.0 / (2.0 * g.dtheta);
  for (int i = 0; i < n; ++i) {
    const double s = inv2h / g.speed[i];
    if (g.topo == Topo::Closed || (i > 0 && i < n - 1)) {
      t.emplace_back(i, g.wrap(i + 1), s);
      t.emplace_back(i, g.wrap(i - 1), -s);
    } else if (i == 0) {
      t.emplace_back(0, 0, -3.0 * s);
      t.emplace_back(0, 1, 4.0 * s);
      t.emplace_back(0, 2, -s);
    } else {
      t.emplace_back(i, i, 3.0 * s);
      t.emplace_back(i, i - 1, -4.0 * s);
      t.emplace_back(i, i - 2, s);
    }
  }
  SparseMatrix d(n, n);
  d.setFromTriplets(t.begin(), t.end());
  return d;
}

/// Flat model of the energy Hessian: sum_j (2/dt_j) (e_{j+1}-e_j)(e_{j+1}-e_j)^T
/// (x) K_j with K_j = sum_k a_k (D^k)^T W D^k on the midpoint curve, applied
/// to each ambient coordinate and projected to the tangent spaces.
class PathPreconditioner {
 public:
  PathPreconditioner(const MetricSpec& spec, const std::vector<DiscreteCurve>& curves, const std::vector<double>& times)
      : curves_(curves) {
    const auto& m = curves.front().manifold();
    const Topo topo = topo_of(curves.front());
    const int steps = static_cast<int>(curves.size()) - 1;
    n_ = curves.front().size();
    const int unknowns = (steps - 1) * n_;
    std::vector<Eigen::Triplet<double>> trip;
    for (int j = 0; j < steps; ++j) {
      const double dt = times[j + 1] - times[j];
      auto mid = detail::midpoint_data<double>(m, curves[j].points(), curves[j + 1].points(), dt);
      const auto g = detail::make_geometry<double>(m, topo, std::move(mid.points));
      const auto a = coefficients(spec, g.length);
      const SparseMatrix d = arclength_difference(g);
      SparseMatrix w(n_, n_);
      for (int i = 0; i < n_; ++i) w.insert(i, i) = g.weight[i];
      SparseMatrix k = a[0] * w;
      SparseMatrix dk = d;
      for (int ord = 1; ord <= spec.order; ++ord) {
        if (ord > 1) dk = SparseMatrix(d * dk);
        if (a[ord] != 0.0) k += a[ord] * SparseMatrix(SparseMatrix(dk.transpose()) * w * dk);
      }
      const double s = 2.0 / dt;
      const int bl = j - 1, br = j;  // block indices of curves j and j+1
      const bool left = j >= 1, right = j + 1 <= steps - 1;
      for (int outer = 0; outer < k.outerSize(); ++outer) {
        for (SparseMatrix::InnerIterator it(k, outer); it; ++it) {
          const int r = static_cast<int>(it.row()), c = static_cast<int>(it.col());
          const double v = s * it.value();
          if (left) trip.emplace_back(bl * n_ + r, bl * n_ + c, v);
          if (right) trip.emplace_back(br * n_ + r, br * n_ + c, v);
          if (left && right) {
            trip.emplace_back(bl * n_ + r, br * n_ + c, -v);
            trip.emplace_back(br * n_ + r, bl * n_ + c, -v);
          }
        }
      }
    }
    SparseMatrix h(unknowns, unknowns);
    h.setFromTriplets(trip.begin(), trip.end());
    solver_.compute(h);
    if (solver_.info() != Eigen::Success) throw Error(ErrorKind::SolverFailure, "path preconditioner is singular");
  }

  std::vector<Field<double>> apply(const std::vector<Field<double>>& g) const {
    const auto& m = curves_.front().manifold();
    const int amb = m.ambient_dim();
    const int blocks = static_cast<int>(g.size());
    std::vector<Field<double>> out(blocks, Field<double>(n_, Vector::Zero(amb)));
    Eigen::VectorXd rhs(blocks * n_);
    for (int a = 0; a < amb; ++a) {
      for (int j = 0; j < blocks; ++j)
        for (int i = 0; i < n_; ++i) rhs[j * n_ + i] = g[j][i][a];
      const Eigen::VectorXd x = solver_.solve(rhs);
      for (int j = 0; j < blocks; ++j)
        for (int i = 0; i < n_; ++i) out[j][i][a] = x[j * n_ + i];
    }
    // The Minkowski form flips the sign of the time coordinate; applying the
    // scalar operator to ambient components is only an approximation there,
    // so re-project onto the tangent spaces either way.
    for (int j = 0; j < blocks; ++j) {
      for (int i = 0; i < n_; ++i) {
        out[j][i] = detail::tangent_projection<double>(m, curves_[j + 1].point(i), out[j][i]);
      }
    }
    return out;
  }

 private:
  std::vector<DiscreteCurve> curves_;
  int n_ = 0;
  Eigen::SimplicialLDLT<SparseMatrix> solver_;
};

std::vector<DiscreteCurve> step_curves(const std::vector<DiscreteCurve>& curves, const std::vector<Field<double>>& dir,
                                       double alpha) {
  std::vector<DiscreteCurve> out = curves;
  const auto& m = curves.front().manifold();
  for (size_t j = 1; j + 1 < curves.size(); ++j) {
    const DiscreteCurve& c = curves[j];
    std::vector<Point> pts(c.size());
    for (int i = 0; i < c.size(); ++i) {
      pts[i] = detail::point_projection<double>(
          m, detail::exp_map<double>(m, c.point(i), Vector(alpha * dir[j - 1][i])));
    }
    out[j] = DiscreteCurve::build(m, c.domain(), std::move(pts), c.options());
  }
  return out;
}

std::vector<Field<double>> transport_fields(const std::vector<DiscreteCurve>& from, const std::vector<DiscreteCurve>& to,
                                            const std::vector<Field<double>>& f) {
  const auto& m = from.front().manifold();
  std::vector<Field<double>> out = f;
  for (size_t j = 0; j < f.size(); ++j) {
    for (size_t i = 0; i < f[j].size(); ++i) {
      const Point& p = from[j + 1].point(static_cast<int>(i));
      const Point& q = to[j + 1].point(static_cast<int>(i));
      out[j][i] = detail::tangent_projection<double>(m, q, detail::transport_map<double>(m, p, q, f[j][i]));
    }
  }
  return out;
}

double energy_of(const MetricSpec& spec, const std::vector<double>& times, const std::vector<DiscreteCurve>& curves) {
  return path_energy(spec, CurvePath(times, curves)).energy;
}

std::vector<DiscreteCurve> add_noise(const std::vector<DiscreteCurve>& curves, const std::vector<double>& times,
                                     double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const auto& m = curves.front().manifold();
  const int amb = m.ambient_dim();
  const int modes = 3;
  std::vector<DiscreteCurve> out = curves;
  for (size_t j = 1; j + 1 < curves.size(); ++j) {
    std::vector<Vector> ca(modes + 1), cb(modes + 1);
    for (int k = 0; k <= modes; ++k) {
      ca[k].resize(amb);
      cb[k].resize(amb);
      for (int r = 0; r < amb; ++r) {
        ca[k][r] = nd(rng) / (1.0 + k * k);
        cb[k][r] = nd(rng) / (1.0 + k * k);
      }
    }
    const DiscreteCurve& c = curves[j];
    const double bump = std::sin(M_PI * (times[j] - times.front()) / (times.back() - times.front()));
    std::vector<Point> pts(c.size());
    for (int i = 0; i < c.size(); ++i) {
      const double th = c.domain().theta(i);
      Vector v = Vector::Zero(amb);
      for (int k = 0; k <= modes; ++k) {
        const double arg = c.closed() ? k * th : 0.5 * k * th;
        v += ca[k] * std::cos(arg) + cb[k] * std::sin(arg);
      }
      v = project_tangent(m, c.point(i), v);
      pts[i] = exp(m, c.point(i), {c.point(i), amplitude * bump * v});
    }
    out[j] = DiscreteCurve::build(m, c.domain(), std::move(pts), c.options());
  }
  return out;
}

}  // namespace

std::vector<VectorField> energy_gradient(const MetricSpec& spec, const CurvePath& path, int threads) {
  spec.validate();
  const auto g = path_gradient(spec, path.curves(), path.times(), threads);
  std::vector<VectorField> out;
  for (size_t j = 0; j < g.size(); ++j) out.emplace_back(path.curve(static_cast<int>(j) + 1), g[j]);
  return out;
}

CurvePath constant_speed(const MetricSpec& spec, const CurvePath& path) {
  const auto& m = path.front().manifold();
  std::vector<DiscreteCurve> curves = path.curves();
  const std::vector<double>& times = path.times();
  const int steps = path.steps();
  for (int pass = 0; pass < 50; ++pass) {
    const auto pe = path_energy(spec, CurvePath(times, curves));
    if (pe.length <= 0.0 || pe.energy - pe.length * pe.length <= 1e-12 * pe.energy) break;
    std::vector<double> cum(steps + 1, 0.0);
    for (int j = 0; j < steps; ++j) cum[j + 1] = cum[j] + (times[j + 1] - times[j]) * std::sqrt(pe.interval_speed2[j]);
    std::vector<DiscreteCurve> next{curves.front()};
    int j = 0;
    for (int k = 1; k < steps; ++k) {
      const double target = cum[steps] * (times[k] - times.front()) / (times.back() - times.front());
      while (j + 1 < steps && cum[j + 1] < target) ++j;
      const double span = cum[j + 1] - cum[j];
      const double tau = span > 0.0 ? std::clamp((target - cum[j]) / span, 0.0, 1.0) : 0.0;
      const DiscreteCurve& a = curves[j];
      const DiscreteCurve& b = curves[j + 1];
      std::vector<Point> pts(a.size());
      for (int i = 0; i < a.size(); ++i) {
        const Vector l = detail::log_map<double>(m, a.point(i), b.point(i));
        pts[i] = detail::point_projection<double>(m, detail::exp_map<double>(m, a.point(i), Vector(tau * l)));
      }
      next.push_back(DiscreteCurve::build(m, a.domain(), std::move(pts), a.options()));
    }
    next.push_back(curves.back());
    curves = std::move(next);
  }
  return CurvePath(times, std::move(curves));
}

GeodesicResult minimize_path(const MetricSpec& spec, const CurvePath& initial, const BvpOptions& opts) {
  spec.validate();
  opts.validate();
  const auto& m = initial.front().manifold();
  const std::vector<double> times = initial.times();
  std::vector<DiscreteCurve> curves = initial.curves();
  GeodesicResult res{.path = initial, .energy_history = {}};

  double energy = energy_of(spec, times, curves);
  res.energy_history.push_back(energy);
  const bool has_interior = curves.size() > 2;
  std::vector<Field<double>> grad, pgrad, dir;
  double gnorm = 0.0;
  auto refresh = [&] {
    grad = path_gradient(spec, curves, times, opts.threads);
    pgrad = PathPreconditioner(spec, curves, times).apply(grad);
    gnorm = std::sqrt(std::max(0.0, field_dot(m, grad, pgrad)));
  };
  auto steepest = [&] {
    dir = pgrad;
    for (auto& f : dir) {
      for (auto& v : f) v = -v;
    }
  };
  if (has_interior) {
    refresh();
    steepest();
  }

  while (has_interior && res.iterations < opts.max_iterations) {
    if (gnorm <= opts.gtol) break;
    double slope = field_dot(m, grad, dir);
    if (!(slope < 0.0)) {
      steepest();
      slope = -gnorm * gnorm;
    }
    double alpha = 1.0;
    bool accepted = false;
    std::vector<DiscreteCurve> trial;
    double trial_energy = energy;
    for (int bt = 0; bt < opts.max_backtracks; ++bt, alpha *= opts.backtrack) {
      try {
        trial = step_curves(curves, dir, alpha);
        trial_energy = energy_of(spec, times, trial);
      } catch (const Error& e) {
        if (!is_feasibility_error(e.kind())) throw;
        continue;
      }
      if (trial_energy <= energy + opts.armijo * alpha * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    const std::vector<Field<double>> old_grad = grad, old_pgrad = pgrad, old_dir = dir;
    const std::vector<DiscreteCurve> old_curves = curves;
    curves = std::move(trial);
    energy = trial_energy;
    res.energy_history.push_back(energy);
    ++res.iterations;
    refresh();
    double beta = 0.0;
    if (opts.conjugate_gradient) {
      const auto moved_pgrad = transport_fields(old_curves, curves, old_pgrad);
      std::vector<Field<double>> diff = pgrad;
      for (size_t j = 0; j < diff.size(); ++j)
        for (size_t i = 0; i < diff[j].size(); ++i) diff[j][i] -= moved_pgrad[j][i];
      const double denom = field_dot(m, old_grad, old_pgrad);
      if (denom > 0.0) beta = std::max(0.0, field_dot(m, grad, diff) / denom);
    }
    const auto moved_dir = transport_fields(old_curves, curves, old_dir);
    dir = pgrad;
    for (size_t j = 0; j < dir.size(); ++j)
      for (size_t i = 0; i < dir[j].size(); ++i) dir[j][i] = -pgrad[j][i] + beta * moved_dir[j][i];
  }
  res.converged = !has_interior || gnorm <= opts.gtol;
  res.gradient_norm = gnorm;
  res.path = constant_speed(spec, CurvePath(times, curves));
  const auto pe = path_energy(spec, res.path);
  res.energy = pe.energy;
  res.length = pe.length;
  res.distance = std::sqrt(std::max(0.0, pe.energy));
  return res;
}

GeodesicResult minimize(const MetricSpec& spec, const DiscreteCurve& c0, const DiscreteCurve& c1, const BvpOptions& opts) {
  opts.validate();
  CurvePath init = init_path(c0, c1, opts.time_steps, opts.init);
  if (opts.init_noise > 0.0) {
    try {
      init = CurvePath(init.times(), add_noise(init.curves(), init.times(), opts.init_noise, opts.seed));
    } catch (const Error& e) {
      throw Error(ErrorKind::InitFailure, std::string("noisy initial path: ") + e.what());
    }
  }
  return minimize_path(spec, init, opts);
}

DistanceEstimate distance(const MetricSpec& spec, const DiscreteCurve& c0, const DiscreteCurve& c1,
                          const BvpOptions& opts, double radius_constant) {
  const GeodesicResult r = minimize(spec, c0, c1, opts);
  DistanceEstimate d;
  d.distance = r.distance;
  d.energy = r.energy;
  d.iterations = r.iterations;
  d.converged = r.converged;
  d.gradient_norm = r.gradient_norm;
  const double l32 = std::pow(c0.length(), 1.5);
  d.radius = radius_constant * l32 / (1.0 + l32);
  return d;
}

}  // namespace elastica

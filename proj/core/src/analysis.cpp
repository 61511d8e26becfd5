#include "elastica/analysis.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "parallel.hpp"

namespace elastica {

namespace {

double param(const CurvePreset& p, const char* key, double fallback) {
  const auto it = p.params.find(key);
  return it == p.params.end() ? fallback : it->second;
}

// Radius-like parameter of a circle preset and its default per backend.
const char* size_key(const ManifoldSpec& m) { return m.kind == ManifoldKind::Sphere ? "phi" : "r"; }
double size_default(const ManifoldSpec& m) { return m.kind == ManifoldKind::Euclidean ? 1.0 : 0.5; }

// Point at "radius" r and angle u on the circle preset of each backend.
Point circle_point(const ManifoldSpec& m, double r, double u) {
  Point p = Vector::Zero(m.ambient_dim());
  switch (m.kind) {
    case ManifoldKind::Euclidean:
      p[0] = r * std::cos(u);
      p[1] = r * std::sin(u);
      break;
    case ManifoldKind::Sphere:
      p[0] = m.radius * std::sin(r) * std::cos(u);
      p[1] = m.radius * std::sin(r) * std::sin(u);
      p[m.dim] = m.radius * std::cos(r);
      break;
    case ManifoldKind::Hyperbolic:
      p[0] = std::cosh(r);
      p[1] = std::sinh(r) * std::cos(u);
      p[2] = std::sinh(r) * std::sin(u);
      break;
  }
  return p;
}

}  // namespace

DiscreteCurve make_preset_curve(const ManifoldSpec& m, Topology topo, const CurvePreset& preset, int samples,
                                double scale) {
  m.validate();
  if (m.dim < 2) throw Error(ErrorKind::InvalidArgument, "curve presets need dim >= 2");
  if (!(scale > 0.0)) throw Error(ErrorKind::InvalidArgument, "preset scale must be positive");
  const Domain dom{topo, samples};
  dom.validate();
  const bool closed = topo == Topology::Closed;
  const double span = closed ? 2.0 * M_PI : param(preset, "span", 3.0);
  auto angle = [&](double t) { return closed ? t : span * t / (2.0 * M_PI); };
  const double euclid = m.kind == ManifoldKind::Euclidean ? scale : 1.0;
  const double radial = m.kind == ManifoldKind::Euclidean ? 1.0 : scale;

  if (preset.name == "circle" || preset.name == "arc") {
    const double r = param(preset, size_key(m), size_default(m)) * radial;
    return sample_curve(m, dom, [&](double t) -> Point { return euclid * circle_point(m, r, angle(t)); });
  }
  if (preset.name == "wavy") {
    const double r = param(preset, size_key(m), size_default(m)) * radial;
    const double amp = param(preset, "amp", 0.1);
    const double freq = param(preset, "freq", 3.0);
    return sample_curve(m, dom, [&](double t) -> Point {
      const double u = angle(t);
      return euclid * circle_point(m, r * (1.0 + amp * std::cos(freq * u)), u);
    });
  }
  if (preset.name == "ellipse") {
    if (m.kind != ManifoldKind::Euclidean) throw Error(ErrorKind::InvalidArgument, "ellipse preset is Euclidean only");
    const double a = param(preset, "a", 1.0) * scale;
    const double b = param(preset, "b", 0.6) * scale;
    return sample_curve(m, dom, [&](double t) -> Point {
      Point p = Vector::Zero(m.dim);
      p[0] = a * std::cos(angle(t));
      p[1] = b * std::sin(angle(t));
      return p;
    });
  }
  throw Error(ErrorKind::InvalidArgument, "unknown curve preset '" + preset.name + "'");
}

std::vector<Eigen::MatrixXd> transported_frame(const DiscreteCurve& c) {
  const auto& m = c.manifold();
  const int n = c.size();
  std::vector<Eigen::MatrixXd> frames(n);
  frames[0] = tangent_frame(m, c.point(0));
  const int d = static_cast<int>(frames[0].cols());
  auto carry = [&](const Eigen::MatrixXd& f, const Point& a, const Point& b) {
    Eigen::MatrixXd out(f.rows(), d);
    for (int k = 0; k < d; ++k) out.col(k) = transport(m, a, b, {a, f.col(k)}).vec;
    return out;
  };
  for (int i = 1; i < n; ++i) frames[i] = carry(frames[i - 1], c.point(i - 1), c.point(i));
  if (!c.closed()) return frames;

  const Eigen::MatrixXd back = carry(frames[n - 1], c.point(n - 1), c.point(0));
  Eigen::MatrixXd hol(d, d);
  for (int r = 0; r < d; ++r) {
    for (int k = 0; k < d; ++k) {
      hol(r, k) = inner(m, c.point(0), {c.point(0), frames[0].col(r)}, {c.point(0), back.col(k)});
    }
  }
  // back = frames[0] * hol; undo a fraction i/n of the loop rotation at node i.
  const Eigen::MatrixXd gen = hol.log();
  for (int i = 1; i < n; ++i) {
    const Eigen::MatrixXd undo = (-(static_cast<double>(i) / n) * gen).exp();
    frames[i] = frames[i] * undo;
  }
  return frames;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ a) ^ b);
}

VectorField random_fourier_field(const DiscreteCurve& c, std::uint64_t seed, int modes) {
  const auto frames = transported_frame(c);
  const int d = static_cast<int>(frames[0].cols());
  const int top = std::clamp(modes, 0, std::max(1, c.size() / 8));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::MatrixXd ca(d, top + 1), cb(d, top + 1);
  for (int j = 0; j <= top; ++j) {
    const double sd = 1.0 / std::sqrt(1.0 + j * j);
    for (int a = 0; a < d; ++a) {
      ca(a, j) = sd * nd(rng);
      cb(a, j) = sd * nd(rng);
    }
  }
  const double freq = c.closed() ? 1.0 : 0.5;
  std::vector<Vector> v(c.size());
  for (int i = 0; i < c.size(); ++i) {
    const double t = c.domain().theta(i);
    Eigen::VectorXd coef = Eigen::VectorXd::Zero(d);
    for (int j = 0; j <= top; ++j) coef += ca.col(j) * std::cos(freq * j * t) + cb.col(j) * std::sin(freq * j * t);
    v[i] = frames[i] * coef;
  }
  return VectorField(c, std::move(v));
}

void ScanConfig::validate() const {
  manifold.validate();
  if (k < 0 || k >= n) throw Error(ErrorKind::InvalidArgument, "scan needs 0 <= k < n");
  if (fields < 1) throw Error(ErrorKind::InvalidArgument, "scan needs at least one field per curve");
  if (a_grid < 1) throw Error(ErrorKind::InvalidArgument, "a-grid needs at least one point");
  if (!(a_min_fraction > 0.0 && a_min_fraction <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "a_min_fraction must lie in (0, 1]");
  }
  if (scales.empty()) throw Error(ErrorKind::InvalidArgument, "scan needs at least one scale");
  for (double s : scales) {
    if (!(s > 0.0)) throw Error(ErrorKind::InvalidArgument, "scales must be positive");
  }
  if (threads < 1) throw Error(ErrorKind::InvalidArgument, "threads must be >= 1");
  Domain{topology, samples}.validate();
}

namespace {

struct Seminorms {
  std::vector<double> l2;  // ||D_s^j h||^2, j = 0..n
  double sup_k = 0.0;      // ||D_s^k h||_inf^2
};

Seminorms seminorms(const DiscreteCurve& c, const VectorField& h, int k, int n) {
  const auto& g = c.geometry();
  Seminorms out;
  detail::Field<double> d = h.vectors();
  for (int j = 0; j <= n; ++j) {
    if (j > 0) d = detail::arclength_derivative(g, d);
    out.l2.push_back(std::max(0.0, detail::integrate_ds(g, d, d)));
    if (j == k) {
      for (const auto& v : d) out.sup_k = std::max(out.sup_k, detail::ambient_dot<double>(c.manifold(), v, v));
    }
  }
  return out;
}

double safe_ratio(double lhs, double rhs) { return lhs == 0.0 ? 0.0 : lhs / rhs; }

}  // namespace

double scan_ratio(const DiscreteCurve& c, const VectorField& h, int k, int n, double a) {
  const auto s = seminorms(c, h, k, n);
  return safe_ratio(std::pow(a, 2 * k) * s.l2[k], s.l2[0] + std::pow(a, 2 * n) * s.l2[n]);
}

ScanReport ineq_scan_general(const ScanConfig& cfg) {
  cfg.validate();
  struct Trial {
    std::vector<ScanSample> rows;
    bool skipped = false;
  };
  const int nscale = static_cast<int>(cfg.scales.size());
  std::vector<Trial> trials(static_cast<size_t>(nscale) * cfg.fields);
  detail::parallel_for(static_cast<int>(trials.size()), cfg.threads, [&](int idx) {
    const int si = idx / cfg.fields;
    const int fi = idx % cfg.fields;
    Trial& tr = trials[idx];
    std::optional<DiscreteCurve> c;
    try {
      c = make_preset_curve(cfg.manifold, cfg.topology, cfg.family, cfg.samples, cfg.scales[si]);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ImmersionViolation && e.kind() != ErrorKind::AdjacencyViolation) throw;
      tr.skipped = true;
      return;
    }
    // Same seed at every scale: the scaled copies carry the same field.
    const auto h = random_fourier_field(*c, derive_seed(cfg.seed, fi), cfg.modes);
    const auto s = seminorms(*c, h, cfg.k, cfg.n);
    const double len = c->length();
    for (int q = 0; q < cfg.a_grid; ++q) {
      const double frac = cfg.a_grid == 1 ? 1.0 : std::pow(cfg.a_min_fraction, static_cast<double>(q) / (cfg.a_grid - 1));
      const double a = len * frac;
      ScanSample r;
      r.curve = si;
      r.scale = cfg.scales[si];
      r.length = len;
      r.field = fi;
      r.a = a;
      r.lhs = std::pow(a, 2 * cfg.k) * s.l2[cfg.k];
      r.rhs = s.l2[0] + std::pow(a, 2 * cfg.n) * s.l2[cfg.n];
      r.ratio = safe_ratio(r.lhs, r.rhs);
      r.lhs_inf = std::pow(a, 2 * cfg.k) * s.sup_k;
      r.rhs_inf = s.l2[0] / a + std::pow(a, 2 * cfg.n - 1) * s.l2[cfg.n];
      r.ratio_inf = safe_ratio(r.lhs_inf, r.rhs_inf);
      tr.rows.push_back(r);
    }
  });

  ScanReport rep;
  rep.max_ratio_inf = 0.0;
  rep.scale_max_ratio.assign(nscale, 0.0);
  for (size_t idx = 0; idx < trials.size(); ++idx) {
    if (trials[idx].skipped) {
      ++rep.skipped;
      continue;
    }
    for (const auto& r : trials[idx].rows) {
      rep.max_ratio = std::max(rep.max_ratio, r.ratio);
      rep.max_ratio_inf = std::max(rep.max_ratio_inf, r.ratio_inf);
      rep.scale_max_ratio[r.curve] = std::max(rep.scale_max_ratio[r.curve], r.ratio);
      rep.samples.push_back(r);
    }
  }
  return rep;
}

double worst_periodic_ratio(const DiscreteCurve& c, int k, int n) {
  if (k < 0 || k >= n) throw Error(ErrorKind::InvalidArgument, "needs 0 <= k < n");
  const auto& m = c.manifold();
  const auto& g = c.geometry();
  const auto frames = transported_frame(c);
  const int nodes = c.size();
  const int d = static_cast<int>(frames[0].cols());
  const int dim = nodes * d;
  const auto& w = c.weights();

  // Columns: sqrt(w)-weighted frame coordinates of D_s^k e_p and D_s^n e_p.
  Eigen::MatrixXd dk(dim, dim), dn(dim, dim);
  auto coords = [&](const detail::Field<double>& f, Eigen::MatrixXd& out, int col) {
    for (int i = 0; i < nodes; ++i) {
      const double sw = std::sqrt(w[i]);
      for (int a = 0; a < d; ++a) {
        out(i * d + a, col) = sw * inner(m, c.point(i), {c.point(i), frames[i].col(a)}, {c.point(i), f[i]});
      }
    }
  };
  for (int p = 0; p < dim; ++p) {
    detail::Field<double> e(nodes, Vector::Zero(m.ambient_dim()));
    e[p / d] = frames[p / d].col(p % d);
    for (int j = 1; j <= n; ++j) {
      e = detail::arclength_derivative(g, e);
      if (j == k) coords(e, dk, p);
    }
    if (k == 0) {
      detail::Field<double> e0(nodes, Vector::Zero(m.ambient_dim()));
      e0[p / d] = frames[p / d].col(p % d);
      coords(e0, dk, p);
    }
    coords(e, dn, p);
  }
  const Eigen::MatrixXd a = dk.transpose() * dk;
  Eigen::MatrixXd b = dn.transpose() * dn;
  for (int p = 0; p < dim; ++p) b(p, p) += w[p / d];
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, b, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::SolverFailure, "generalised eigenproblem failed");
  return std::max(0.0, es.eigenvalues().maxCoeff());
}

ScanReport ineq_scan_periodic(const ScanConfig& cfg) {
  cfg.validate();
  if (cfg.topology != Topology::Closed) throw Error(ErrorKind::InvalidArgument, "periodic scan needs closed curves");
  if (cfg.k < 1) throw Error(ErrorKind::InvalidArgument, "periodic scan needs 0 < k < n");
  if (cfg.sizes.empty()) throw Error(ErrorKind::InvalidArgument, "periodic scan needs a list of sizes");
  struct Trial {
    std::vector<ScanSample> rows;
    ShrinkPoint point;
    bool skipped = false;
  };
  const int ncurves = static_cast<int>(cfg.sizes.size());
  std::vector<Trial> trials(ncurves);
  detail::parallel_for(ncurves, cfg.threads, [&](int ci) {
    Trial& tr = trials[ci];
    CurvePreset preset = cfg.family;
    preset.params[size_key(cfg.manifold)] = cfg.sizes[ci];
    std::optional<DiscreteCurve> c;
    try {
      c = make_preset_curve(cfg.manifold, cfg.topology, preset, cfg.samples);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ImmersionViolation && e.kind() != ErrorKind::AdjacencyViolation) throw;
      tr.skipped = true;
      return;
    }
    const double len = c->length();
    auto row = [&](int field, double lhs, double rhs) {
      ScanSample r;
      r.curve = ci;
      r.length = len;
      r.field = field;
      r.a = len;
      r.lhs = lhs;
      r.rhs = rhs;
      r.ratio = safe_ratio(lhs, rhs);
      return r;
    };
    for (int fi = 0; fi < cfg.fields; ++fi) {
      const auto h = random_fourier_field(*c, derive_seed(cfg.seed, ci, fi), cfg.modes);
      const auto s = seminorms(*c, h, cfg.k, cfg.n);
      tr.rows.push_back(row(fi, s.l2[cfg.k], s.l2[0] + s.l2[cfg.n]));
    }
    const double worst = worst_periodic_ratio(*c, cfg.k, cfg.n);
    tr.rows.push_back(row(-1, worst, 1.0));
    tr.point = {len, worst};
  });

  ScanReport rep;
  std::vector<double> xs, ys;
  for (const auto& tr : trials) {
    if (tr.skipped) {
      ++rep.skipped;
      continue;
    }
    for (const auto& r : tr.rows) {
      rep.max_ratio = std::max(rep.max_ratio, r.ratio);
      rep.samples.push_back(r);
    }
    rep.shrink.push_back(tr.point);
    const double l = tr.point.length;
    rep.fitted_constant = std::max(rep.fitted_constant, tr.point.max_ratio / std::min(1.0, l * l));
    if (l < cfg.fit_below && tr.point.max_ratio > 0.0) {
      xs.push_back(l);
      ys.push_back(tr.point.max_ratio);
    }
  }
  rep.slope = loglog_slope(xs, ys);
  return rep;
}

std::string_view to_string(CompletenessCase c) {
  switch (c) {
    case CompletenessCase::LengthWeighted: return "length-weighted";
    case CompletenessCase::ConstantClosed: return "constant-closed";
    case CompletenessCase::None: return "none";
  }
  return "none";
}

CompletenessCase completeness_case(const MetricSpec& spec, Topology topo) {
  spec.validate();
  const int n = spec.order;
  if (n < 2) return CompletenessCase::None;
  const auto& c = spec.coeffs;
  if (spec.family == CoefficientFamily::ScaleInvariant) {
    // a_i = C_i l^{2i-3}: a_1 >= C_1/l, or a_0 >= C_0/l^3 with some a_k, k > 1.
    if (c[1] > 0.0) return CompletenessCase::LengthWeighted;
    if (c[0] > 0.0) {
      for (int k = 2; k <= n; ++k) {
        if (c[k] > 0.0) return CompletenessCase::LengthWeighted;
      }
    }
    return CompletenessCase::None;
  }
  if (spec.family == CoefficientFamily::Constant && topo == Topology::Closed && c[0] > 0.0 && c[n] > 0.0) {
    return CompletenessCase::ConstantClosed;
  }
  return CompletenessCase::None;
}

EquivalenceReport equivalence_probe(const MetricSpec& spec, const DiscreteCurve& c, int samples, std::uint64_t seed,
                                    int modes) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "equivalence probe needs samples >= 1");
  EquivalenceReport rep;
  rep.covered = completeness_case(spec, c.domain().topology);
  rep.min_ratio = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const auto h = random_fourier_field(c, derive_seed(seed, s), modes);
    const double hn = inner_H(c, h, h, spec.order);
    const double r = std::sqrt(inner_G(spec, c, h, h) / hn);
    rep.ratios.push_back(r);
    rep.min_ratio = std::min(rep.min_ratio, r);
    rep.max_ratio = std::max(rep.max_ratio, r);
  }
  rep.condition = rep.max_ratio / rep.min_ratio;
  return rep;
}

EscapePreset EscapePreset::parse(std::string_view text) {
  EscapePreset p;
  if (text == "f0g0") return p;
  if (text == "log_escape") {
    p.kind = EscapeKind::LogEscape;
    return p;
  }
  if (text == "oscillate") {
    p.kind = EscapeKind::Oscillate;
    return p;
  }
  if (text == "translate") {
    p.kind = EscapeKind::Translate;
    p.x0 = 1.0;
    return p;
  }
  constexpr std::string_view head = "translate(";
  if (text.substr(0, head.size()) == head && text.back() == ')') {
    const std::string body(text.substr(head.size(), text.size() - head.size() - 1));
    const auto comma = body.find(',');
    if (comma != std::string::npos) {
      try {
        size_t used_x = 0, used_y = 0;
        const std::string xs = body.substr(0, comma), ys = body.substr(comma + 1);
        p.x0 = std::stod(xs, &used_x);
        p.y0 = std::stod(ys, &used_y);
        if (used_x == xs.size() && used_y == ys.size()) {
          p.kind = EscapeKind::Translate;
          return p;
        }
      } catch (const std::exception&) {
      }
    }
  }
  throw Error(ErrorKind::InvalidArgument,
              "unknown escape preset '" + std::string(text) + "' (f0g0, translate(x,y), log_escape, oscillate)");
}

std::string EscapePreset::name() const {
  switch (kind) {
    case EscapeKind::F0G0: return "f0g0";
    case EscapeKind::LogEscape: return "log_escape";
    case EscapeKind::Oscillate: return "oscillate";
    case EscapeKind::Translate: {
      char buf[96];
      std::snprintf(buf, sizeof buf, "translate(%.17g,%.17g)", x0, y0);
      return buf;
    }
  }
  return "f0g0";
}

double EscapePreset::f(double t) const {
  switch (kind) {
    case EscapeKind::F0G0: return 0.0;
    case EscapeKind::Translate: return t * x0;
    case EscapeKind::LogEscape: return -std::log1p(-t);
    case EscapeKind::Oscillate: return std::sin(-std::log1p(-t));
  }
  return 0.0;
}

double EscapePreset::g(double t) const { return kind == EscapeKind::Translate ? t * y0 : 0.0; }

double EscapePreset::df(double t) const {
  switch (kind) {
    case EscapeKind::F0G0: return 0.0;
    case EscapeKind::Translate: return x0;
    case EscapeKind::LogEscape: return 1.0 / (1.0 - t);
    case EscapeKind::Oscillate: return std::cos(-std::log1p(-t)) / (1.0 - t);
  }
  return 0.0;
}

double EscapePreset::dg(double) const { return kind == EscapeKind::Translate ? y0 : 0.0; }

DiscreteCurve escape_curve(const EscapePreset& p, double t, int samples) {
  if (!(t >= 0.0 && t < 1.0)) throw Error(ErrorKind::InvalidArgument, "escape path is defined for t in [0, 1)");
  const double f = p.f(t), g = p.g(t);
  return sample_curve(ManifoldSpec::euclidean(2), Domain{Topology::Open, samples}, [&](double th) {
    Vector v(2);
    v << (1.0 - t) * (th - M_PI) + f, g;
    return v;
  });
}

namespace {

// G-speed of the escape path at time t from the closed-form integrals
// int |c_t|^2 ds = 2pi(1-t)(pi^2/3 + f'^2 + g'^2) and
// int |D_s c_t|^2 ds = 2pi/(1-t); higher derivatives vanish.
double escape_speed(const MetricSpec& spec, const EscapePreset& p, double t) {
  const double len = 2.0 * M_PI * (1.0 - t);
  const auto a = coefficients(spec, len);
  const double df = p.df(t), dg = p.dg(t);
  double g2 = a[0] * len * (M_PI * M_PI / 3.0 + df * df + dg * dg);
  if (a.size() > 1) g2 += a[1] * 2.0 * M_PI / (1.0 - t);
  return std::sqrt(g2);
}

double escape_quadrature(const MetricSpec& spec, const EscapePreset& p, double upper) {
  boost::math::quadrature::tanh_sinh<double> q;
  return q.integrate([&](double t) { return escape_speed(spec, p, t); }, 0.0, upper);
}

}  // namespace

IncompletenessReport incompleteness_demo(const IncompletenessConfig& cfg) {
  cfg.spec.validate();
  if (cfg.steps < 2) throw Error(ErrorKind::InvalidArgument, "incompleteness demo needs at least two time steps");
  const int m = cfg.steps;
  const double tmax = 1.0 - 1.0 / m;

  IncompletenessReport rep;
  std::vector<DiscreteCurve> curves;
  for (int j = 0; j <= m; ++j) {
    const double t = tmax * j / m;
    rep.times.push_back(t);
    curves.push_back(escape_curve(cfg.preset, t, cfg.samples));
    rep.curve_length.push_back(curves.back().length());
    rep.max_length_error =
        std::max(rep.max_length_error, std::abs(curves.back().length() / (2.0 * M_PI * (1.0 - t)) - 1.0));
  }
  rep.final_min_speed = curves.back().min_speed();
  const auto pe = path_energy(cfg.spec, CurvePath(rep.times, curves));
  rep.cumulative.push_back(0.0);
  for (int j = 0; j < m; ++j) {
    rep.cumulative.push_back(rep.cumulative.back() + (rep.times[j + 1] - rep.times[j]) * std::sqrt(pe.interval_speed2[j]));
  }
  rep.path_length = rep.cumulative.back();
  rep.quadrature_truncated = escape_quadrature(cfg.spec, cfg.preset, tmax);
  rep.quadrature_limit = escape_quadrature(cfg.spec, cfg.preset, 1.0);

  if (cfg.partner) {
    // 1 - t log-spaced from 1/2 down to 1/M.
    const int k = std::max(2, cfg.partner_times);
    std::vector<double> xs, ys;
    for (int q = 0; q < k; ++q) {
      const double gap = 0.5 * std::pow(2.0 / m, static_cast<double>(q) / (k - 1));
      const double t = 1.0 - gap;
      const auto a = escape_curve(cfg.preset, t, cfg.samples);
      const auto b = escape_curve(*cfg.partner, t, cfg.samples);
      const double len = path_energy(cfg.spec, CurvePath({a, b})).length;
      rep.affine.push_back({t, len});
      if (len > 0.0) {
        xs.push_back(gap);
        ys.push_back(len);
      }
    }
    rep.affine_slope = loglog_slope(xs, ys);
  }
  return rep;
}

ShrinkageReport shrinkage_probe(const MetricSpec& spec, const CurvePath& path, const ShrinkageConfig& cfg) {
  const auto pe = path_energy(spec, path);
  ShrinkageReport rep;
  rep.times = path.times();
  rep.cumulative.push_back(0.0);
  for (int j = 0; j <= path.steps(); ++j) {
    rep.curve_length.push_back(path.curve(j).length());
    if (rep.curve_length.back() < cfg.length_threshold) rep.flagged.push_back(j);
    if (j < path.steps()) {
      const double dt = rep.times[j + 1] - rep.times[j];
      rep.cumulative.push_back(rep.cumulative.back() + dt * std::sqrt(pe.interval_speed2[j]));
    }
  }
  const int n = path.steps() + 1;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const double diff = std::abs(std::pow(rep.curve_length[a], 1.5) - std::pow(rep.curve_length[b], 1.5));
      if (diff == 0.0) continue;
      const double dist = rep.cumulative[b] - rep.cumulative[a];
      rep.lipschitz = std::max(rep.lipschitz, dist > 0.0 ? diff / dist : std::numeric_limits<double>::infinity());
    }
  }
  return rep;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::InvalidArgument, "slope fit needs equal-length inputs");
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace elastica

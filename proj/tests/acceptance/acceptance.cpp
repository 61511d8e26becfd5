// Acceptance suite: one PASS/FAIL line per criterion, followed by the
// individual measurements. Exit status is non-zero if any selected criterion
// fails.

#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "elastica/analysis.hpp"
#include "elastica/geodesic_bvp.hpp"
#include "elastica/geodesic_ivp.hpp"
#include "elastica/holonomy.hpp"
#include "fixtures.hpp"
#include "io.hpp"

using namespace elastica;
using fixtures::vec;

namespace {

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

using Checks = std::vector<Check>;

std::string fmt(const char* f, auto... xs) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, xs...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Check runtime_check(double secs, double limit) {
  return {"runtime", secs < limit, fmt("%.2f s (limit %.0f s)", secs, limit)};
}

Check slope_check(const std::string& name, const std::vector<double>& errors, double target, double tol) {
  std::string orders;
  bool ok = errors.size() >= 2;
  for (size_t i = 1; i < errors.size(); ++i) {
    const double p = std::log2(errors[i - 1] / errors[i]);
    ok = ok && std::abs(p - target) <= tol;
    orders += fmt(i == 1 ? "%.3f" : ", %.3f", p);
  }
  return {name, ok, "observed orders " + orders + fmt(" (target %.1f +- %.1f)", target, tol)};
}

double max_node_gap(const DiscreteCurve& a, const DiscreteCurve& b) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, (a.point(i) - b.point(i)).norm());
  return m;
}

double max_diff(const VectorField& a, const VectorField& b) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, (a[i] - b[i]).norm());
  return m;
}

double max_norm(const VectorField& a) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, a[i].norm());
  return m;
}

VectorField constant_field(const DiscreteCurve& c, const Vector& v) {
  return sample_field(c, [&](double, const Point&) { return v; });
}

int default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---------------------------------------------------------------------------
// 1. Vanishing-length path of open curves.

Checks criterion_incompleteness() {
  const auto t0 = std::chrono::steady_clock::now();
  IncompletenessConfig cfg;
  cfg.preset = EscapePreset::parse("f0g0");
  cfg.samples = 512;
  cfg.steps = 200;
  cfg.spec = MetricSpec::constant({1.0, 0.0, 1.0});
  const auto rep = incompleteness_demo(cfg);
  const double secs = seconds_since(t0);
  // sqrt(2 pi) (pi / sqrt 3) int_0^1 (1-t)^{1/2} dt
  const double quad = std::sqrt(2 * M_PI) * M_PI / std::sqrt(3.0) * 2.0 / 3.0;
  const double rel = rep.path_length / quad - 1.0;
  return {
      {"path length", std::abs(rel) < 0.01, fmt("%.6f vs quadrature %.6f (%+.3f%%, tol 1%%)", rep.path_length, quad, 100 * rel)},
      {"curve length 2pi(1-t)", rep.max_length_error < 1e-6, fmt("max relative error %.2e (tol 1e-6)", rep.max_length_error)},
      runtime_check(secs, 30),
  };
}

// ---------------------------------------------------------------------------
// 2. Holonomy of spherical loops.

Checks criterion_holonomy() {
  const auto t0 = std::chrono::steady_clock::now();
  Checks out;
  const double phi = 0.2;
  const double alpha = 2 * M_PI * (1 - std::cos(phi));
  const auto c = fixtures::sphere_circle(phi, 2048);
  const double angle = std::abs(holonomy_angle(loop_holonomy(c)));
  out.push_back({"rotation angle", std::abs(angle - alpha) < 1e-4, fmt("%.8f vs %.8f (tol 1e-4)", angle, alpha)});
  const double defect = holonomy_defect(c);
  const double expect = 2 * std::sqrt(2.0) * std::sin(alpha / 2);
  out.push_back({"defect", std::abs(defect - expect) < 1e-3, fmt("%.8f vs %.8f (tol 1e-3)", defect, expect)});

  std::vector<DiscreteCurve> fam;
  for (double p : {0.4, 0.2, 0.1, 0.05}) fam.push_back(fixtures::sphere_circle(p, 2048));
  const auto probe = bound_probe(fam);
  out.push_back({"defect vs length slope", std::abs(probe.slope - 2.0) <= 0.1, fmt("%.4f (target 2 +- 0.1)", probe.slope)});

  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) worst = std::max(worst, holonomy_defect(fixtures::random_sphere_loop(rng, 256)));
  const double cap = 2 * std::sqrt(2.0);
  out.push_back({"cap on 100 random loops", worst <= cap + 1e-12, fmt("max defect %.6f <= %.6f", worst, cap)});
  out.push_back(runtime_check(seconds_since(t0), 60));
  return out;
}

// ---------------------------------------------------------------------------
// 3. Reparametrization and scale invariance of G.

using CurveFn = std::function<Vector(double)>;

struct ReparamCase {
  std::string name;
  ManifoldSpec manifold;
  Topology topology;
  MetricSpec spec;
  CurveFn curve;
  CurveFn field;  // ambient; projected onto the tangent space
};

double reparam_error(const ReparamCase& rc, int n) {
  // phi fixes 0 and 2 pi and has phi' in [0.75, 1.25].
  auto phi = [](double t) { return t + 0.25 * std::sin(t); };
  const Domain dom{rc.topology, n};
  const auto c = sample_curve(rc.manifold, dom, rc.curve);
  const auto cp = sample_curve(rc.manifold, dom, [&](double t) { return rc.curve(phi(t)); });
  const auto h = sample_field(c, [&](double t, const Point& p) { return project_tangent(rc.manifold, p, rc.field(t)); });
  const auto hp =
      sample_field(cp, [&](double t, const Point& p) { return project_tangent(rc.manifold, p, rc.field(phi(t))); });
  return std::abs(inner_G(rc.spec, cp, hp, hp) - inner_G(rc.spec, c, h, h));
}

Checks criterion_metric() {
  const std::vector<ReparamCase> cases{
      {"R^2 closed ellipse, constant (1, 0.5, 0.25)", ManifoldSpec::euclidean(2), Topology::Closed,
       MetricSpec::constant({1.0, 0.5, 0.25}), [](double t) { return vec({2 * std::cos(t), std::sin(t)}); },
       [](double t) { return vec({std::cos(2 * t), 0.5 * std::sin(t)}); }},
      {"S^2 closed wavy loop, scale-invariant (1, 0.5, 0.25)", ManifoldSpec::sphere(2), Topology::Closed,
       MetricSpec::scale_invariant({1.0, 0.5, 0.25}),
       [](double t) {
         const double p = 0.6 + 0.15 * std::sin(2 * t);
         return vec({std::sin(p) * std::cos(t), std::sin(p) * std::sin(t), std::cos(p)});
       },
       [](double t) { return vec({std::cos(t), 0.3 * std::sin(2 * t), 0.5}); }},
      {"H^2 open arc, constant (1, 1)", ManifoldSpec::hyperbolic(2), Topology::Open, MetricSpec::constant({1.0, 1.0}),
       [](double t) {
         const double r = 0.4 + 0.05 * t, a = 0.3 * t;
         return vec({std::cosh(r), std::sinh(r) * std::cos(a), std::sinh(r) * std::sin(a)});
       },
       [](double t) { return vec({0.0, std::cos(0.5 * t), 1.0 + 0.2 * t}); }},
  };
  Checks out;
  for (const auto& rc : cases) {
    std::vector<double> err;
    for (int n : {256, 512, 1024}) err.push_back(reparam_error(rc, n));
    out.push_back(slope_check("reparametrization, " + rc.name, err, 2.0, 0.3));
  }

  std::mt19937_64 rng(33);
  double worst = 0.0;
  for (int d : {2, 3}) {
    const auto spec = MetricSpec::scale_invariant({1.0, 0.5, 2.0});
    const auto c = sample_curve(ManifoldSpec::euclidean(d), Domain{Topology::Closed, 128}, [&](double t) {
      Vector x = Vector::Zero(d);
      x[0] = 1.3 * std::cos(t);
      x[1] = 0.7 * std::sin(t) + 0.1 * std::cos(3 * t);
      if (d == 3) x[2] = 0.2 * std::sin(2 * t);
      return x;
    });
    const auto h = fixtures::smooth_field(c, rng);
    const auto k = fixtures::smooth_field(c, rng);
    const double ref = inner_G(spec, c, h, k);
    for (double a : {0.1, 0.5, 2.0, 10.0}) {
      const auto ca = fixtures::scaled(c, a);
      const VectorField ha(ca, (h * a).vectors()), ka(ca, (k * a).vectors());
      worst = std::max(worst, std::abs(inner_G(spec, ca, ha, ka) / ref - 1.0));
    }
  }
  out.push_back({"scale invariance in R^2 and R^3", worst < 1e-6, fmt("max relative error %.2e (tol 1e-6)", worst)});
  return out;
}

// ---------------------------------------------------------------------------
// 4. Order-1 geodesic initial value problem.

Checks criterion_ivp() {
  const auto h1 = MetricSpec::constant({1.0, 1.0});
  Checks out;
  {
    const auto c = fixtures::segment(128);
    const auto w = vec({0.0, 1.0});
    const auto r = ivp_integrate(h1, GeodesicState(c, constant_field(c, w)), 1.0, 100);
    const double gap = r.completed ? max_node_gap(r.curves.back(), fixtures::shifted(c, w)) : INFINITY;
    out.push_back({"translating segment at T = 1", gap < 1e-8,
                   fmt("max node error %.3e (tol 1e-8)%s", gap, r.completed ? "" : ", integration aborted")});
  }
  {
    const auto c = fixtures::circle(128);
    const auto r = ivp_integrate(h1, GeodesicState(c, constant_field(c, vec({1.0, 0.0}))), 0.5, 200);
    out.push_back({"closed-circle energy drift", r.completed && r.energy_drift < 1e-6,
                   fmt("%.3e over T = 0.5, 200 steps (tol 1e-6)", r.energy_drift)});
  }
  {
    const auto c = sample_curve(ManifoldSpec::sphere(2), Domain{Topology::Closed, 48}, [](double t) {
      const double p = 0.6 + 0.15 * std::sin(2 * t);
      return vec({std::sin(p) * std::cos(t), std::sin(p) * std::sin(t), std::cos(p)});
    });
    const auto w = sample_field(c, [&](double t, const Point& p) {
      Vector k = vec({0.0, -p[2], p[1]});
      Vector r = vec({0.2 * std::cos(t), 0.1, -0.3 * std::sin(t)});
      return project_tangent(c.manifold(), p, Vector(k + r));
    });
    const GeodesicState s(c, w);
    std::vector<DiscreteCurve> finals;
    for (int steps : {10, 20, 40, 80}) finals.push_back(ivp_integrate(h1, s, 0.4, steps).curves.back());
    std::vector<double> gaps;
    for (size_t i = 1; i < finals.size(); ++i) gaps.push_back(max_node_gap(finals[i - 1], finals[i]));
    out.push_back(slope_check("time-step convergence", gaps, 4.0, 0.3));
  }
  return out;
}

// ---------------------------------------------------------------------------
// 5. Inertia operator.

Checks criterion_inertia() {
  const auto h1 = MetricSpec::constant({1.0, 1.0});
  Checks out;
  std::mt19937_64 rng(6);
  const std::vector<DiscreteCurve> curves{
      fixtures::circle(128), fixtures::sphere_circle(0.7, 128), fixtures::hyperbolic_circle(0.7, 128),
      fixtures::segment(100, 0.5),
      sample_curve(ManifoldSpec::sphere(3, 2.5), Domain{Topology::Open, 96}, [](double t) {
        return Vector(2.5 * Vector(vec({std::cos(0.3 * t), std::sin(0.3 * t), 0.2, 0.5})).normalized());
      })};
  double worst = 0.0;
  for (const auto& c : curves) {
    const auto h = fixtures::smooth_field(c, rng);
    worst = std::max(worst, max_diff(solve_inertia(h1, c, apply_inertia(h1, c, h)), h) / max_norm(h));
  }
  out.push_back({"solve(apply(h)) = h", worst < 1e-8, fmt("max relative error %.2e on 5 curves (tol 1e-8)", worst)});

  std::vector<double> defects;
  for (int n : {64, 128, 256}) {
    const auto c = fixtures::ellipse(n, 1.5, 0.8);
    const auto h = sample_field(c, [](double t, const Point&) { return vec({std::cos(2 * t) + 0.3 * std::sin(t), std::sin(t)}); });
    const auto k = sample_field(c, [](double t, const Point&) { return vec({std::sin(3 * t) + std::cos(t), 1.0 + 0.5 * std::cos(2 * t)}); });
    const auto ah = apply_inertia(h1, c, h);
    double pairing = 0.0;
    for (int i = 0; i < c.size(); ++i) pairing += c.weights()[i] * ah[i].dot(k[i]);
    defects.push_back(std::abs(pairing - inner_G(h1, c, h, k)));
  }
  out.push_back(slope_check("self-adjointness defect", defects, 2.0, 0.3));
  return out;
}

// ---------------------------------------------------------------------------
// 6. Geodesic boundary value problem.

double pairing(const std::vector<VectorField>& g, const std::vector<VectorField>& d) {
  double s = 0.0;
  for (size_t j = 0; j < g.size(); ++j) {
    for (int i = 0; i < g[j].size(); ++i) s += g[j][i].dot(d[j][i]);
  }
  return s;
}

Checks criterion_bvp() {
  const auto h2 = MetricSpec::constant({1.0, 0.0, 1.0});
  const int threads = default_threads();
  Checks out;
  {
    const auto a = fixtures::segment(256);
    BvpOptions o;
    o.time_steps = 16;
    o.threads = threads;
    const auto r = minimize(h2, a, fixtures::shifted(a, vec({0.0, 1.0})), o);
    const double rel = r.distance / std::sqrt(2 * M_PI) - 1.0;
    out.push_back({"translated segment distance", std::abs(rel) < 0.005,
                   fmt("%.6f vs sqrt(2 pi) = %.6f (%+.3f%%, tol 0.5%%), %d iterations", r.distance, std::sqrt(2 * M_PI),
                       100 * rel, r.iterations)});
    int increases = 0;
    for (size_t k = 1; k < r.energy_history.size(); ++k) increases += r.energy_history[k] > r.energy_history[k - 1];
    out.push_back({"energy non-increasing", increases == 0,
                   fmt("%d increases over %zu accepted steps", increases, r.energy_history.size() - 1)});
  }
  {
    std::mt19937_64 rng(12);
    const auto a = fixtures::ellipse(64, 1.2, 0.7);
    auto base = init_path(a, fixtures::shifted(a, vec({0.4, -0.2})), 6);
    std::vector<DiscreteCurve> cs = base.curves();
    for (int j = 1; j < 6; ++j) cs[j] = fixtures::moved_along(cs[j], fixtures::smooth_field(cs[j], rng), 0.05);
    const CurvePath path(cs);
    const auto g = energy_gradient(h2, path, threads);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<VectorField> dir;
      for (int j = 1; j < path.steps(); ++j) dir.push_back(fixtures::smooth_field(path.curve(j), rng, 4));
      auto energy_at = [&](double s) {
        std::vector<DiscreteCurve> moved = path.curves();
        for (size_t j = 1; j + 1 < moved.size(); ++j) moved[j] = fixtures::moved_along(moved[j], dir[j - 1], s);
        return path_energy(h2, CurvePath(path.times(), moved)).energy;
      };
      const double eps = 1e-6;
      const double fd = (energy_at(eps) - energy_at(-eps)) / (2 * eps);
      const double an = pairing(g, dir);
      worst = std::max(worst, std::abs(an - fd) / std::abs(an));
    }
    out.push_back({"gradient vs central differences", worst < 1e-5,
                   fmt("max relative error %.2e over 20 directions (tol 1e-5)", worst)});
  }
  {
    std::mt19937_64 rng(21);
    auto random_curve = [&] {
      const auto base = fixtures::ellipse(48, 1.0, 0.7);
      return fixtures::moved_along(base, fixtures::smooth_field(base, rng, 2), 0.15);
    };
    BvpOptions o;
    o.time_steps = 6;
    o.threads = threads;
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_curve(), b = random_curve(), c = random_curve();
      const double ab = distance(h2, a, b, o).distance;
      const double bc = distance(h2, b, c, o).distance;
      const double ac = distance(h2, a, c, o).distance;
      for (const auto& [side, others] : {std::pair{ac, ab + bc}, std::pair{ab, ac + bc}, std::pair{bc, ab + ac}}) {
        worst = std::max(worst, side / others);
      }
    }
    out.push_back({"triangle inequality", worst <= 1.02,
                   fmt("max d(x,z) / (d(x,y) + d(y,z)) = %.4f over 10 triples (slack 1.02)", worst)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// 7. Interpolation inequality scans.

Checks criterion_scans() {
  const auto t0 = std::chrono::steady_clock::now();
  const int threads = default_threads();
  Checks out;
  auto general = [&](const std::string& name, ScanConfig cfg) {
    cfg.a_grid = 16;
    cfg.threads = threads;
    const auto rep = ineq_scan_general(cfg);
    bool finite = rep.skipped == 0;
    for (const auto& s : rep.samples) finite = finite && std::isfinite(s.ratio) && s.ratio >= 0.0;
    const auto [lo, hi] = std::minmax_element(rep.scale_max_ratio.begin(), rep.scale_max_ratio.end());
    const double spread = *hi / *lo;
    out.push_back({"general scan, " + name, finite && *lo > 0.0 && spread < 2.0,
                   fmt("%zu samples finite, max/min C(scale) = %.4f over %zu scales (limit 2)", rep.samples.size(), spread,
                       rep.scale_max_ratio.size())});
  };
  {
    ScanConfig cfg;
    cfg.family = {"ellipse", {{"a", 1.0}, {"b", 0.6}}};
    cfg.fields = 8;
    cfg.scales = {0.25, 0.5, 1.0, 2.0, 4.0};
    cfg.seed = 5;
    general("R^2 ellipses", cfg);
  }
  {
    ScanConfig cfg;
    cfg.manifold = ManifoldSpec::sphere(2);
    cfg.family = {"wavy", {{"phi", 0.5}}};
    cfg.scales = {0.25, 0.5, 1.0, 2.0, 3.0};
    cfg.k = 2;
    cfg.n = 3;
    cfg.seed = 6;
    general("S^2 wavy loops", cfg);
  }
  {
    ScanConfig cfg;
    cfg.family = {"circle", {}};
    cfg.samples = 96;
    cfg.fields = 4;
    cfg.sizes = {0.005, 0.01, 0.02, 0.04, 0.08};
    cfg.threads = threads;
    const auto rep = ineq_scan_periodic(cfg);
    out.push_back({"periodic scan, R^2 circles", std::abs(rep.slope - 2.0) <= 0.1,
                   fmt("log-log slope %.4f (target 2 +- 0.1)", rep.slope)});
  }
  {
    ScanConfig cfg;
    cfg.manifold = ManifoldSpec::sphere(2);
    cfg.family = {"circle", {}};
    cfg.samples = 96;
    cfg.sizes = {0.01, 0.02, 0.04, 0.08, 0.16};
    cfg.threads = threads;
    const auto rep = ineq_scan_periodic(cfg);
    bool bounded = std::isfinite(rep.fitted_constant) && rep.fitted_constant > 0.0;
    for (const auto& p : rep.shrink) bounded = bounded && p.max_ratio <= rep.fitted_constant * p.length * p.length * (1 + 1e-12);
    out.push_back({"periodic scan, S^2 circles", bounded,
                   fmt("ratio <= C l^2 with fitted C = %.5f, slope %.4f", rep.fitted_constant, rep.slope)});
  }
  out.push_back(runtime_check(seconds_since(t0), 300));
  return out;
}

// ---------------------------------------------------------------------------
// 8. CLI determinism across thread counts.

class Workspace {
 public:
  Workspace() : dir_(std::filesystem::temp_directory_path() / ("elastica_acceptance_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(dir_);
  }
  ~Workspace() { std::filesystem::remove_all(dir_); }
  std::string put(const std::string& name, const io::Json& j) const {
    std::ofstream(dir_ / name) << j.dump(1);
    return file(name);
  }
  std::string file(const std::string& name) const { return (dir_ / name).string(); }
  std::string slurp(const std::string& name) const {
    std::ifstream in(dir_ / name, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

 private:
  std::filesystem::path dir_;
};

int run_cli(std::vector<std::string> args, std::ostream& err) {
  args.insert(args.begin(), "elastica");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run(static_cast<int>(argv.size()), argv.data(), err);
}

Checks criterion_determinism() {
  Workspace ws;
  std::mt19937_64 rng(8);
  const auto h2 = ws.put("h2.json", io::to_json(MetricSpec::constant({1.0, 0.0, 1.0})));
  const auto h1 = ws.put("h1.json", io::to_json(MetricSpec::constant({1.0, 1.0})));
  const auto a = ws.put("a.json", io::to_json(fixtures::ellipse(48, 1.0, 0.6)));
  const auto b = ws.put("b.json", io::to_json(fixtures::moved_along(fixtures::circle(48, 0.9), fixtures::smooth_field(fixtures::circle(48, 0.9), rng, 2), 0.1)));
  const auto circle = fixtures::circle(64);
  const auto c = ws.put("circle.json", io::to_json(circle));
  const auto v = ws.put("velocity.json", io::to_json(fixtures::smooth_field(circle, rng)));
  std::vector<std::string> loops;
  for (int i = 0; i < 3; ++i) loops.push_back(ws.put("loop" + std::to_string(i) + ".json", io::to_json(fixtures::random_sphere_loop(rng, 128))));
  const auto general = ws.put("general.json", {{"kind", "general"},
                                               {"family", {{"name", "wavy"}, {"params", {{"r", 1.0}}}}},
                                               {"samples", 64},
                                               {"fields", 5},
                                               {"scales", {0.5, 1.0, 2.0}}});
  const auto periodic = ws.put("periodic.json", {{"kind", "periodic"},
                                                 {"manifold", {{"kind", "sphere"}, {"dim", 2}}},
                                                 {"family", {{"name", "circle"}}},
                                                 {"samples", 64},
                                                 {"fields", 3},
                                                 {"sizes", {0.02, 0.04, 0.08}}});
  // geodesic-bvp output written once and reused by the shrinkage probe.
  std::ostringstream sink;
  const std::string path_file = ws.file("path.json");
  run_cli({"geodesic-bvp", "--metric", h2, a, b, "--time-steps", "4", "--out", path_file}, sink);

  const std::map<std::string, std::vector<std::string>> commands{
      {"manifold-info", {"manifold-info", loops[0]}},
      {"distance", {"distance", "--metric", h2, a, b, "--time-steps", "4", "--init-noise", "0.02"}},
      {"geodesic-bvp", {"geodesic-bvp", "--metric", h2, a, b, "--time-steps", "4", "--init-noise", "0.02"}},
      {"geodesic-ivp", {"geodesic-ivp", "--metric", h1, "--curve", c, "--velocity", v, "--T", "0.1", "--steps", "10"}},
      {"holonomy", {"holonomy", loops[0], loops[1], loops[2]}},
      {"ineq-scan general", {"ineq-scan", "--config", general}},
      {"ineq-scan periodic", {"ineq-scan", "--config", periodic}},
      {"incompleteness", {"incompleteness", "--grid", "128x40", "--partner", "translate(0,1)"}},
      {"equivalence", {"equivalence", "--metric", h2, a, "--samples", "12"}},
      {"shrinkage", {"shrinkage", path_file}},
  };
  int runs = 0;
  std::vector<std::string> mismatched;
  for (const auto& [name, args] : commands) {
    for (const char* format : {"json", "csv"}) {
      std::string reference;
      for (const char* threads : {"1", "2", "3", "8"}) {
        std::vector<std::string> full = args;
        const std::string out = std::string("out_") + threads;
        for (const char* extra : {"--seed", "11", "--threads", threads, "--format", format, "--out"}) full.push_back(extra);
        full.push_back(ws.file(out));
        std::ostringstream err;
        const int code = run_cli(full, err);
        ++runs;
        const std::string body = ws.slurp(out);
        if (code != 0 || body.empty()) {
          mismatched.push_back(name + " (" + format + ") exit " + std::to_string(code) + ": " + err.str());
          break;
        }
        if (reference.empty()) {
          reference = body;
        } else if (body != reference) {
          mismatched.push_back(name + " (" + format + ", threads " + threads + ")");
        }
      }
    }
  }
  std::string detail = fmt("%d runs over %zu commands x {json, csv} x threads {1, 2, 3, 8}", runs, commands.size());
  for (const auto& m : mismatched) detail += "; differs: " + m;
  return {{"byte-identical outputs", mismatched.empty(), detail}};
}

struct Criterion {
  int id;
  const char* title;
  Checks (*run)();
};

const std::vector<Criterion> kCriteria{
    {1, "incompleteness path of open curves", criterion_incompleteness},
    {2, "holonomy of spherical loops", criterion_holonomy},
    {3, "metric invariances", criterion_metric},
    {4, "geodesic initial value problem", criterion_ivp},
    {5, "inertia operator", criterion_inertia},
    {6, "geodesic boundary value problem", criterion_bvp},
    {7, "interpolation inequality scans", criterion_scans},
    {8, "CLI determinism across thread counts", criterion_determinism},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elastica acceptance suite"};
  std::vector<int> selected;
  app.add_option("criteria", selected, "Criteria to run (default: all)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);
  if (selected.empty()) {
    for (const auto& c : kCriteria) selected.push_back(c.id);
  }

  int failed = 0;
  for (const auto& c : kCriteria) {
    if (std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Checks checks;
    try {
      checks = c.run();
    } catch (const std::exception& e) {
      checks.push_back({"exception", false, e.what()});
    }
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const Check& k) { return k.ok; });
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " " << c.id << " " << c.title << fmt(" (%.1f s)", seconds_since(t0)) << "\n";
    for (const auto& k : checks) std::cout << "    [" << (k.ok ? "ok" : "FAIL") << "] " << k.name << ": " << k.detail << "\n";
    std::cout.flush();
  }
  return failed == 0 ? 0 : 1;
}

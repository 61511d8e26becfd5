#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

#include "elastica/analysis.hpp"
#include "elastica/geodesic_bvp.hpp"
#include "elastica/geodesic_ivp.hpp"
#include "elastica/holonomy.hpp"
#include "output.hpp"

namespace elastica::cli {

namespace {

using io::Json;

struct Globals {
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
  std::string format = "json";
};

std::string num(double x) { return format_number(x); }

// JSON has no infinity; null marks it.
Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

MetricSpec load_metric(const std::string& path) { return io::parse_metric(io::read_json(path), path); }
DiscreteCurve load_curve(const std::string& path) { return io::parse_curve(io::read_json(path), path); }

// ---- manifold-info -------------------------------------------------------

struct ManifoldInfoArgs {
  std::string file;
};

Report manifold_info(const ManifoldInfoArgs& a) {
  const Json j = io::read_json(a.file);
  // Either a manifold fragment or any document with a "manifold" member.
  const ManifoldSpec m = j.is_object() && j.contains("manifold") && !j.contains("kind")
                             ? io::parse_manifold(j.at("manifold"), a.file + ".manifold")
                             : io::parse_manifold(j, a.file);
  Report r;
  r.command = "manifold-info";
  r.inputs = {{"manifold", a.file}};
  r.payload = io::to_json(m);
  r.payload["ambient_dim"] = m.ambient_dim();
  r.payload["sectional_curvature"] = m.sectional_curvature();
  r.payload["curvature_bound"] = m.curvature_bound();
  r.payload["injectivity_radius"] = finite_or_null(m.injectivity_radius());
  r.table.columns = {"kind", "dim", "radius", "ambient_dim", "sectional_curvature", "curvature_bound",
                     "injectivity_radius"};
  r.table.add({std::string(to_string(m.kind)), std::to_string(m.dim), num(m.radius), std::to_string(m.ambient_dim()),
               num(m.sectional_curvature()), num(m.curvature_bound()), num(m.injectivity_radius())});
  return r;
}

// ---- distance / geodesic-bvp ---------------------------------------------

struct BvpArgs {
  std::string metric;
  std::string a;
  std::string b;
  int time_steps = 16;
  int max_iters = 500;
  double gtol = 1e-6;
  std::string init = "pointwise_geodesic";
  double init_noise = 0.0;
  double radius_constant = 1.0;
  bool steepest = false;
};

BvpOptions bvp_options(const BvpArgs& a, const Globals& g) {
  BvpOptions o;
  o.time_steps = a.time_steps;
  o.max_iterations = a.max_iters;
  o.gtol = a.gtol;
  o.init = init_mode_from_string(a.init);
  o.init_noise = a.init_noise;
  o.conjugate_gradient = !a.steepest;
  o.seed = g.seed;
  o.threads = g.threads;
  o.validate();
  return o;
}

Json bvp_inputs(const BvpArgs& a) {
  return {{"metric", a.metric},     {"curves", {a.a, a.b}},       {"time_steps", a.time_steps},
          {"max_iters", a.max_iters}, {"gtol", a.gtol},             {"init", a.init},
          {"init_noise", a.init_noise}, {"steepest_descent", a.steepest}};
}

Report distance_cmd(const BvpArgs& a, const Globals& g) {
  const auto spec = load_metric(a.metric);
  const auto c0 = load_curve(a.a);
  const auto c1 = load_curve(a.b);
  const auto d = distance(spec, c0, c1, bvp_options(a, g), a.radius_constant);
  Report r;
  r.command = "distance";
  r.inputs = bvp_inputs(a);
  r.inputs["radius_constant"] = a.radius_constant;
  r.payload = {{"distance", d.distance},   {"energy", d.energy},
               {"iterations", d.iterations}, {"converged", d.converged},
               {"gradient_norm", d.gradient_norm}, {"radius", d.radius}};
  r.table.columns = {"distance", "energy", "iterations", "converged", "gradient_norm", "radius"};
  r.table.add({num(d.distance), num(d.energy), std::to_string(d.iterations), d.converged ? "true" : "false",
               num(d.gradient_norm), num(d.radius)});
  return r;
}

// Path nodes as rows: curve, t, node, x0..x{D-1}.
Table path_table(const CurvePath& p) {
  Table t;
  t.columns = {"curve", "t", "node"};
  const int dim = p.front().manifold().ambient_dim();
  for (int k = 0; k < dim; ++k) t.columns.push_back("x" + std::to_string(k));
  for (int j = 0; j <= p.steps(); ++j) {
    const auto& c = p.curve(j);
    for (int i = 0; i < c.size(); ++i) {
      std::vector<std::string> row = {std::to_string(j), num(p.times()[j]), std::to_string(i)};
      for (int k = 0; k < dim; ++k) row.push_back(num(c.point(i)[k]));
      t.add(std::move(row));
    }
  }
  return t;
}

Report geodesic_bvp_cmd(const BvpArgs& a, const Globals& g) {
  const auto spec = load_metric(a.metric);
  const auto res = minimize(spec, load_curve(a.a), load_curve(a.b), bvp_options(a, g));
  Report r;
  r.command = "geodesic-bvp";
  r.inputs = bvp_inputs(a);
  r.payload = io::to_json(res.path, &spec);
  Json result = {{"distance", res.distance},     {"energy", res.energy},
                 {"length", res.length},         {"iterations", res.iterations},
                 {"converged", res.converged},   {"gradient_norm", res.gradient_norm},
                 {"energy_history", res.energy_history}};
  r.payload["result"] = result;
  result.erase("energy_history");
  r.summary = result;
  r.table = path_table(res.path);
  return r;
}

// ---- geodesic-ivp ----------------------------------------------------------

struct IvpArgs {
  std::string metric;
  std::string curve;
  std::string velocity;
  double T = 1.0;
  int steps = 200;
  std::string model = "variational";
};

Report geodesic_ivp_cmd(const IvpArgs& a) {
  const auto spec = load_metric(a.metric);
  const auto c = load_curve(a.curve);
  const auto w = io::parse_field(io::read_json(a.velocity), c, a.velocity);
  IvpOptions opts;
  opts.model = ivp_model_from_string(a.model);
  const auto res = ivp_integrate(spec, GeodesicState(c, w), a.T, a.steps, opts);
  Report r;
  r.command = "geodesic-ivp";
  r.inputs = {{"metric", a.metric}, {"curve", a.curve}, {"velocity", a.velocity},
              {"T", a.T},           {"steps", a.steps}, {"model", a.model}};
  if (res.curves.size() >= 2) {
    r.payload = io::to_json(res.path(), &spec);
  } else {
    r.payload = {{"metric", io::to_json(spec)}, {"times", res.times}, {"curves", {io::to_json(res.curves.front())}}};
  }
  Json vel = Json::array();
  for (const auto& v : res.velocities) vel.push_back(io::to_json(v)["vectors"]);
  r.payload["velocities"] = std::move(vel);
  Json diag = Json::array();
  r.table.columns = {"step", "t", "energy", "length", "min_speed"};
  for (const auto& s : res.diagnostics) {
    diag.push_back({{"step", s.step}, {"t", s.t}, {"energy", s.energy}, {"length", s.length}, {"min_speed", s.min_speed}});
    r.table.add({std::to_string(s.step), num(s.t), num(s.energy), num(s.length), num(s.min_speed)});
  }
  r.summary = {{"completed", res.completed}, {"abort_reason", res.abort_reason}, {"energy_drift", res.energy_drift}};
  r.payload["result"] = r.summary;
  r.payload["result"]["diagnostics"] = std::move(diag);
  return r;
}

// ---- holonomy ---------------------------------------------------------------

struct HolonomyArgs {
  std::vector<std::string> loops;
  double slack = 1.1;
};

Report holonomy_cmd(const HolonomyArgs& a) {
  std::vector<DiscreteCurve> family;
  for (const auto& f : a.loops) family.push_back(load_curve(f));
  const auto probe = bound_probe(family, a.slack);
  Report r;
  r.command = "holonomy";
  r.inputs = {{"loops", a.loops}, {"slack", a.slack}};
  r.table.columns = {"curve_id", "length", "defect", "defect_over_length2", "cap", "pass"};
  Json rows = Json::array();
  for (const auto& h : probe.reports) {
    Json row = {{"curve_id", h.curve_id}, {"file", a.loops[h.curve_id]}, {"length", h.length},
                {"defect", h.defect},     {"defect_over_length2", h.ratio}, {"cap", h.cap},
                {"pass", h.pass}};
    if (family[h.curve_id].manifold().dim == 2) row["angle"] = holonomy_angle(loop_holonomy(family[h.curve_id]));
    rows.push_back(std::move(row));
    r.table.add({std::to_string(h.curve_id), num(h.length), num(h.defect), num(h.ratio), num(h.cap),
                 h.pass ? "true" : "false"});
  }
  r.summary = {{"bound_constant", probe.bound_constant},
               {"max_ratio", probe.max_ratio},
               {"slope", finite_or_null(probe.slope)},
               {"all_pass", probe.all_pass}};
  r.payload = r.summary;
  r.payload["loops"] = std::move(rows);
  return r;
}

// ---- ineq-scan ---------------------------------------------------------------

struct ScanArgs {
  std::string config;
};

Report ineq_scan_cmd(const ScanArgs& a, const Globals& g) {
  const Json j = io::read_json(a.config);
  ScanConfig cfg = io::parse_scan_config(j, a.config);
  const std::string kind = j.contains("kind") ? j.at("kind").get<std::string>() : "general";
  if (kind != "general" && kind != "periodic") {
    throw Error(ErrorKind::ParseError, a.config + ".kind: expected \"general\" or \"periodic\"");
  }
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  const auto rep = kind == "general" ? ineq_scan_general(cfg) : ineq_scan_periodic(cfg);

  Report r;
  r.command = "ineq-scan";
  r.inputs = {{"config", a.config}, {"kind", kind}, {"scan", io::to_json(cfg)}};
  r.summary = {{"kind", kind}, {"max_ratio", rep.max_ratio}, {"skipped", rep.skipped}};
  if (kind == "general") {
    r.summary["max_ratio_inf"] = rep.max_ratio_inf;
    r.summary["scale_max_ratio"] = rep.scale_max_ratio;
  } else {
    r.summary["slope"] = finite_or_null(rep.slope);
    r.summary["fitted_constant"] = rep.fitted_constant;
  }
  r.payload = r.summary;
  if (kind == "periodic") {
    Json shrink = Json::array();
    for (const auto& p : rep.shrink) shrink.push_back({{"length", p.length}, {"max_ratio", p.max_ratio}});
    r.payload["shrink"] = std::move(shrink);
  }
  r.table.columns = {"curve", "scale", "length", "field", "a", "lhs", "rhs", "ratio", "lhs_inf", "rhs_inf", "ratio_inf"};
  Json samples = Json::array();
  for (const auto& s : rep.samples) {
    r.table.add({std::to_string(s.curve), num(s.scale), num(s.length), std::to_string(s.field), num(s.a), num(s.lhs),
                 num(s.rhs), num(s.ratio), num(s.lhs_inf), num(s.rhs_inf), num(s.ratio_inf)});
    samples.push_back({{"curve", s.curve}, {"scale", s.scale}, {"length", s.length}, {"field", s.field},
                       {"a", s.a},         {"lhs", s.lhs},     {"rhs", s.rhs},       {"ratio", s.ratio},
                       {"lhs_inf", s.lhs_inf}, {"rhs_inf", s.rhs_inf}, {"ratio_inf", s.ratio_inf}});
  }
  r.payload["samples"] = std::move(samples);
  return r;
}

// ---- incompleteness --------------------------------------------------------------

struct IncompletenessArgs {
  std::string preset = "f0g0";
  std::string grid = "512x200";
  std::string metric;
  std::string partner;
  int partner_times = 16;
};

std::pair<int, int> parse_grid(const std::string& g) {
  const auto x = g.find('x');
  try {
    if (x != std::string::npos) {
      size_t u1 = 0, u2 = 0;
      const int n = std::stoi(g.substr(0, x), &u1);
      const int m = std::stoi(g.substr(x + 1), &u2);
      if (u1 == x && u2 == g.size() - x - 1) return {n, m};
    }
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("--grid", "expected NxM, e.g. 512x200");
}

Report incompleteness_cmd(const IncompletenessArgs& a) {
  IncompletenessConfig cfg;
  cfg.preset = EscapePreset::parse(a.preset);
  std::tie(cfg.samples, cfg.steps) = parse_grid(a.grid);
  if (!a.metric.empty()) cfg.spec = load_metric(a.metric);
  if (!a.partner.empty()) cfg.partner = EscapePreset::parse(a.partner);
  cfg.partner_times = a.partner_times;
  const auto rep = incompleteness_demo(cfg);

  Report r;
  r.command = "incompleteness";
  r.inputs = {{"preset", cfg.preset.name()}, {"grid", a.grid}, {"metric", io::to_json(cfg.spec)}};
  if (cfg.partner) {
    r.inputs["partner"] = cfg.partner->name();
    r.inputs["partner_times"] = a.partner_times;
  }
  r.summary = {{"path_length", rep.path_length},
               {"quadrature_truncated", rep.quadrature_truncated},
               {"quadrature_limit", rep.quadrature_limit},
               {"max_length_error", rep.max_length_error},
               {"final_min_speed", rep.final_min_speed}};
  if (cfg.partner) r.summary["affine_slope"] = finite_or_null(rep.affine_slope);
  r.payload = r.summary;
  r.payload["times"] = rep.times;
  r.payload["curve_length"] = rep.curve_length;
  r.payload["cumulative_length"] = rep.cumulative;
  if (cfg.partner) {
    Json aff = Json::array();
    for (const auto& b : rep.affine) aff.push_back({{"t", b.t}, {"length", b.length}});
    r.payload["affine"] = std::move(aff);
  }
  r.table.columns = {"step", "t", "curve_length", "cumulative_length"};
  for (size_t j = 0; j < rep.times.size(); ++j) {
    r.table.add({std::to_string(j), num(rep.times[j]), num(rep.curve_length[j]), num(rep.cumulative[j])});
  }
  return r;
}

// ---- equivalence ----------------------------------------------------------------

struct EquivalenceArgs {
  std::string metric;
  std::string curve;
  int samples = 32;
  int modes = 4;
};

Report equivalence_cmd(const EquivalenceArgs& a, const Globals& g) {
  const auto spec = load_metric(a.metric);
  const auto c = load_curve(a.curve);
  const auto rep = equivalence_probe(spec, c, a.samples, g.seed, a.modes);
  Report r;
  r.command = "equivalence";
  r.inputs = {{"metric", a.metric}, {"curve", a.curve}, {"samples", a.samples}, {"modes", a.modes}};
  r.summary = {{"covered_case", std::string(to_string(rep.covered))},
               {"min_ratio", rep.min_ratio},
               {"max_ratio", rep.max_ratio},
               {"condition", rep.condition}};
  r.payload = r.summary;
  r.payload["ratios"] = rep.ratios;
  r.table.columns = {"sample", "ratio"};
  for (size_t s = 0; s < rep.ratios.size(); ++s) r.table.add({std::to_string(s), num(rep.ratios[s])});
  return r;
}

// ---- shrinkage ------------------------------------------------------------------

struct ShrinkageArgs {
  std::string path;
  std::string metric;
  double threshold = 1e-2;
};

Report shrinkage_cmd(const ShrinkageArgs& a) {
  std::optional<MetricSpec> spec;
  const auto path = io::parse_path(io::read_json(a.path), a.path, &spec);
  if (!a.metric.empty()) spec = load_metric(a.metric);
  if (!spec) throw Error(ErrorKind::InvalidArgument, "no metric: pass --metric or include one in the path file");
  ShrinkageConfig cfg;
  cfg.length_threshold = a.threshold;
  const auto rep = shrinkage_probe(*spec, path, cfg);
  Report r;
  r.command = "shrinkage";
  r.inputs = {{"path", a.path}, {"metric", io::to_json(*spec)}, {"threshold", a.threshold}};
  r.summary = {{"lipschitz", finite_or_null(rep.lipschitz)}, {"flagged", rep.flagged}};
  r.payload = r.summary;
  r.payload["times"] = rep.times;
  r.payload["curve_length"] = rep.curve_length;
  r.payload["cumulative_length"] = rep.cumulative;
  r.table.columns = {"step", "t", "curve_length", "cumulative_length", "flagged"};
  for (size_t j = 0; j < rep.times.size(); ++j) {
    const bool flagged = std::find(rep.flagged.begin(), rep.flagged.end(), static_cast<int>(j)) != rep.flagged.end();
    r.table.add({std::to_string(j), num(rep.times[j]), num(rep.curve_length[j]), num(rep.cumulative[j]),
                 flagged ? "true" : "false"});
  }
  return r;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& err) {
  CLI::App app{"Sobolev metrics, geodesics and completeness probes for manifold-valued curves", "elastica"};
  app.set_version_flag("--version", ELASTICA_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads; results do not depend on it")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  std::function<Report()> job;

  ManifoldInfoArgs mi;
  auto* s_mi = app.add_subcommand("manifold-info", "Curvature and injectivity data of a manifold");
  s_mi->add_option("manifold", mi.file, "Manifold JSON (or any file with a \"manifold\" member)")->required();
  s_mi->callback([&] { job = [&] { return manifold_info(mi); }; });

  BvpArgs da, ga;
  auto bvp_flags = [](CLI::App* s, BvpArgs& a) {
    s->add_option("--metric", a.metric, "Metric JSON")->required();
    s->add_option("a", a.a, "Start curve JSON")->required();
    s->add_option("b", a.b, "End curve JSON")->required();
    s->add_option("--time-steps", a.time_steps, "Time steps M")->capture_default_str();
    s->add_option("--max-iters", a.max_iters, "Optimiser iteration limit")->capture_default_str();
    s->add_option("--gtol", a.gtol, "Preconditioned gradient-norm tolerance")->capture_default_str();
    s->add_option("--init", a.init, "Initial path")
        ->check(CLI::IsMember({"pointwise_geodesic", "straight_embedding"}))
        ->capture_default_str();
    s->add_option("--init-noise", a.init_noise, "Smooth random perturbation of the initial path")
        ->capture_default_str();
    s->add_flag("--steepest-descent", a.steepest, "Disable conjugate directions");
  };
  auto* s_d = app.add_subcommand("distance", "Geodesic distance between two curves");
  bvp_flags(s_d, da);
  s_d->add_option("--radius-constant", da.radius_constant, "C in the existence radius C l^{3/2}/(1+l^{3/2})")
      ->capture_default_str();
  s_d->callback([&] { job = [&] { return distance_cmd(da, g); }; });
  auto* s_b = app.add_subcommand("geodesic-bvp", "Minimising path between two curves");
  bvp_flags(s_b, ga);
  s_b->callback([&] { job = [&] { return geodesic_bvp_cmd(ga, g); }; });

  IvpArgs ia;
  auto* s_i = app.add_subcommand("geodesic-ivp", "Integrate the order-1 geodesic equation");
  s_i->add_option("--metric", ia.metric, "Metric JSON (order 1)")->required();
  s_i->add_option("--curve", ia.curve, "Initial curve JSON")->required();
  s_i->add_option("--velocity", ia.velocity, "Initial velocity JSON {\"vectors\": [...]}")->required();
  s_i->add_option("--T", ia.T, "Final time")->capture_default_str();
  s_i->add_option("--steps", ia.steps, "RK4 steps")->check(CLI::PositiveNumber)->capture_default_str();
  s_i->add_option("--model", ia.model, "Right-hand side")
      ->check(CLI::IsMember({"variational", "continuum"}))
      ->capture_default_str();
  s_i->callback([&] { job = [&] { return geodesic_ivp_cmd(ia); }; });

  HolonomyArgs ha;
  auto* s_h = app.add_subcommand("holonomy", "Loop holonomy and the curvature-times-length^2 bound");
  s_h->add_option("loops", ha.loops, "Closed curve JSON files")->required();
  s_h->add_option("--slack", ha.slack, "Multiplier on K_N sqrt(d)")->capture_default_str();
  s_h->callback([&] { job = [&] { return holonomy_cmd(ha); }; });

  ScanArgs sa;
  auto* s_s = app.add_subcommand("ineq-scan", "Interpolation inequality scan");
  s_s->add_option("--config", sa.config, "Scan config JSON")->required();
  s_s->callback([&] { job = [&] { return ineq_scan_cmd(sa, g); }; });

  IncompletenessArgs na;
  auto* s_n = app.add_subcommand("incompleteness", "Vanishing-length path of open curves");
  s_n->add_option("--preset", na.preset, "f0g0 | translate(x,y) | log_escape | oscillate")->capture_default_str();
  s_n->add_option("--grid", na.grid, "NxM nodes x time steps")->capture_default_str();
  s_n->add_option("--metric", na.metric, "Metric JSON (default constant [1,0,1])");
  s_n->add_option("--partner", na.partner, "Second preset for the affine-homotopy distance bound");
  s_n->add_option("--partner-times", na.partner_times, "Times at which the bound is evaluated")->capture_default_str();
  s_n->callback([&] { job = [&] { return incompleteness_cmd(na); }; });

  EquivalenceArgs ea;
  auto* s_e = app.add_subcommand("equivalence", "Ratios ||h||_G / ||h||_H over random fields");
  s_e->add_option("--metric", ea.metric, "Metric JSON")->required();
  s_e->add_option("curve", ea.curve, "Curve JSON")->required();
  s_e->add_option("--samples", ea.samples, "Random fields")->check(CLI::PositiveNumber)->capture_default_str();
  s_e->add_option("--modes", ea.modes, "Fourier modes per field")->capture_default_str();
  s_e->callback([&] { job = [&] { return equivalence_cmd(ea, g); }; });

  ShrinkageArgs ka;
  auto* s_k = app.add_subcommand("shrinkage", "Lipschitz probe of l^{3/2} along a path");
  s_k->add_option("path", ka.path, "Path JSON")->required();
  s_k->add_option("--metric", ka.metric, "Metric JSON (overrides the path's)");
  s_k->add_option("--threshold", ka.threshold, "Flag curves shorter than this")->capture_default_str();
  s_k->callback([&] { job = [&] { return shrinkage_cmd(ka); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    std::cout << ELASTICA_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "elastica: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    Report r = job();
    r.seed = g.seed;
    emit(r, g.format == "csv" ? Format::Csv : Format::Json, g.out);
  } catch (const CLI::ParseError& e) {
    err << "elastica: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "elastica: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace elastica::cli

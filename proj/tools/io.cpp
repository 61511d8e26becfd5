#include "io.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace elastica::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
  throw Error(ErrorKind::ParseError, where + ": " + msg);
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      fail(where, "unknown field '" + key + "'");
    }
  }
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) fail(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Vector vector_of(const Json& j, int size, const std::string& where) {
  const auto xs = numbers(j, where);
  if (static_cast<int>(xs.size()) != size) {
    fail(where, "expected " + std::to_string(size) + " coordinates, got " + std::to_string(xs.size()));
  }
  Vector v(size);
  for (int i = 0; i < size; ++i) v[i] = xs[i];
  return v;
}

// Rethrows domain errors from validation with the location prefixed.
template <class F>
auto located(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    throw Error(e.kind(), where + ": " + std::string(e.what()));
  }
}

Json vec_json(const Vector& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, path.string() + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string body = ss.str();
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    const size_t at = std::min(e.byte == 0 ? 0 : e.byte - 1, body.size());
    const long line = 1 + std::count(body.begin(), body.begin() + static_cast<long>(at), '\n');
    const size_t nl = body.rfind('\n', at == 0 ? 0 : at - 1);
    const size_t col = nl == std::string::npos ? at + 1 : at - nl;
    throw Error(ErrorKind::ParseError,
                path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
}

ManifoldSpec parse_manifold(const Json& j, const std::string& where) {
  check_keys(j, {"kind", "dim", "radius"}, where);
  ManifoldSpec m;
  const std::string kind = text(member(j, "kind", where), where + ".kind");
  m.kind = located(where + ".kind", [&] { return manifold_kind_from_string(kind); });
  m.dim = integer(member(j, "dim", where), where + ".dim");
  if (j.contains("radius")) {
    if (m.kind != ManifoldKind::Sphere) fail(where + ".radius", "radius applies to spheres only");
    m.radius = number(j.at("radius"), where + ".radius");
  }
  located(where, [&] { m.validate(); });
  return m;
}

MetricSpec parse_metric(const Json& j, const std::string& where) {
  check_keys(j, {"order", "family", "coeffs"}, where);
  const std::string family = text(member(j, "family", where), where + ".family");
  const auto coeffs = numbers(member(j, "coeffs", where), where + ".coeffs");
  MetricSpec m;
  if (family == "constant") {
    m = located(where, [&] { return MetricSpec::constant(coeffs); });
  } else if (family == "scale_invariant") {
    m = located(where, [&] { return MetricSpec::scale_invariant(coeffs); });
  } else {
    fail(where + ".family", "expected \"constant\" or \"scale_invariant\"");
  }
  if (j.contains("order")) {
    const int order = integer(j.at("order"), where + ".order");
    if (order != m.order) {
      fail(where + ".order", "order " + std::to_string(order) + " does not match " + std::to_string(coeffs.size()) +
                                 " coefficients");
    }
  }
  return m;
}

DiscreteCurve parse_curve(const Json& j, const std::string& where) {
  check_keys(j, {"header", "manifold", "domain", "points"}, where);
  const ManifoldSpec m = parse_manifold(member(j, "manifold", where), where + ".manifold");
  const Json& dj = member(j, "domain", where);
  check_keys(dj, {"topology", "samples"}, where + ".domain");
  Domain dom;
  const std::string topo = text(member(dj, "topology", where + ".domain"), where + ".domain.topology");
  dom.topology = located(where + ".domain.topology", [&] { return topology_from_string(topo); });
  dom.samples = integer(member(dj, "samples", where + ".domain"), where + ".domain.samples");
  located(where + ".domain", [&] { dom.validate(); });
  const Json& pj = member(j, "points", where);
  if (!pj.is_array()) fail(where + ".points", "expected an array of points");
  if (static_cast<int>(pj.size()) != dom.samples) {
    fail(where + ".points", "expected " + std::to_string(dom.samples) + " points, got " + std::to_string(pj.size()));
  }
  std::vector<Point> pts;
  for (size_t i = 0; i < pj.size(); ++i) {
    pts.push_back(vector_of(pj[i], m.ambient_dim(), where + ".points[" + std::to_string(i) + "]"));
  }
  return located(where, [&] { return DiscreteCurve::build(m, dom, std::move(pts)); });
}

VectorField parse_field(const Json& j, const DiscreteCurve& c, const std::string& where) {
  check_keys(j, {"vectors"}, where);
  const Json& vj = member(j, "vectors", where);
  if (!vj.is_array() || static_cast<int>(vj.size()) != c.size()) {
    fail(where + ".vectors", "expected " + std::to_string(c.size()) + " vectors");
  }
  std::vector<Vector> vs;
  for (size_t i = 0; i < vj.size(); ++i) {
    vs.push_back(vector_of(vj[i], c.manifold().ambient_dim(), where + ".vectors[" + std::to_string(i) + "]"));
  }
  return located(where, [&] { return VectorField(c, std::move(vs)); });
}

CurvePath parse_path(const Json& j, const std::string& where, std::optional<MetricSpec>* metric) {
  check_keys(j, {"header", "metric", "times", "curves", "velocities", "result"}, where);
  if (metric && j.contains("metric")) *metric = parse_metric(j.at("metric"), where + ".metric");
  const Json& cj = member(j, "curves", where);
  if (!cj.is_array()) fail(where + ".curves", "expected an array of curves");
  std::vector<DiscreteCurve> curves;
  for (size_t i = 0; i < cj.size(); ++i) curves.push_back(parse_curve(cj[i], where + ".curves[" + std::to_string(i) + "]"));
  if (j.contains("times")) {
    auto times = numbers(j.at("times"), where + ".times");
    return located(where, [&] { return CurvePath(std::move(times), std::move(curves)); });
  }
  return located(where, [&] { return CurvePath(std::move(curves)); });
}

ScanConfig parse_scan_config(const Json& j, const std::string& where) {
  check_keys(j,
             {"kind", "manifold", "topology", "family", "samples", "k", "n", "fields", "modes", "a_grid",
              "a_min_fraction", "scales", "sizes", "fit_below"},
             where);
  ScanConfig cfg;
  if (j.contains("manifold")) cfg.manifold = parse_manifold(j.at("manifold"), where + ".manifold");
  if (j.contains("topology")) {
    const std::string t = text(j.at("topology"), where + ".topology");
    cfg.topology = located(where + ".topology", [&] { return topology_from_string(t); });
  }
  if (j.contains("family")) {
    const Json& fj = j.at("family");
    check_keys(fj, {"name", "params"}, where + ".family");
    cfg.family.name = text(member(fj, "name", where + ".family"), where + ".family.name");
    if (fj.contains("params")) {
      const Json& pj = fj.at("params");
      if (!pj.is_object()) fail(where + ".family.params", "expected an object");
      for (const auto& [key, value] : pj.items()) {
        cfg.family.params[key] = number(value, where + ".family.params." + key);
      }
    }
  }
  auto get_int = [&](const char* key, int& out) {
    if (j.contains(key)) out = integer(j.at(key), where + "." + key);
  };
  auto get_num = [&](const char* key, double& out) {
    if (j.contains(key)) out = number(j.at(key), where + "." + key);
  };
  get_int("samples", cfg.samples);
  get_int("k", cfg.k);
  get_int("n", cfg.n);
  get_int("fields", cfg.fields);
  get_int("modes", cfg.modes);
  get_int("a_grid", cfg.a_grid);
  get_num("a_min_fraction", cfg.a_min_fraction);
  get_num("fit_below", cfg.fit_below);
  if (j.contains("scales")) cfg.scales = numbers(j.at("scales"), where + ".scales");
  if (j.contains("sizes")) cfg.sizes = numbers(j.at("sizes"), where + ".sizes");
  located(where, [&] { cfg.validate(); });
  return cfg;
}

Json to_json(const ManifoldSpec& m) {
  Json j;
  j["kind"] = std::string(to_string(m.kind));
  j["dim"] = m.dim;
  if (m.kind == ManifoldKind::Sphere) j["radius"] = m.radius;
  return j;
}

Json to_json(const MetricSpec& m) {
  if (m.family == CoefficientFamily::Custom) {
    throw Error(ErrorKind::InvalidArgument, "custom coefficient functions have no JSON form");
  }
  Json j;
  j["order"] = m.order;
  j["family"] = m.family == CoefficientFamily::Constant ? "constant" : "scale_invariant";
  j["coeffs"] = m.coeffs;
  return j;
}

Json to_json(const DiscreteCurve& c) {
  Json j;
  j["manifold"] = to_json(c.manifold());
  j["domain"] = {{"topology", std::string(to_string(c.domain().topology))}, {"samples", c.size()}};
  Json pts = Json::array();
  for (const auto& p : c.points()) pts.push_back(vec_json(p));
  j["points"] = std::move(pts);
  return j;
}

Json to_json(const VectorField& f) {
  Json vs = Json::array();
  for (const auto& v : f.vectors()) vs.push_back(vec_json(v));
  return {{"vectors", std::move(vs)}};
}

Json to_json(const CurvePath& p, const MetricSpec* metric) {
  Json j;
  if (metric) j["metric"] = to_json(*metric);
  j["times"] = p.times();
  Json cs = Json::array();
  for (const auto& c : p.curves()) cs.push_back(to_json(c));
  j["curves"] = std::move(cs);
  return j;
}

Json to_json(const ScanConfig& cfg) {
  Json j;
  j["manifold"] = to_json(cfg.manifold);
  j["topology"] = std::string(to_string(cfg.topology));
  Json params = Json::object();
  for (const auto& [k, v] : cfg.family.params) params[k] = v;
  j["family"] = {{"name", cfg.family.name}, {"params", params}};
  j["samples"] = cfg.samples;
  j["k"] = cfg.k;
  j["n"] = cfg.n;
  j["fields"] = cfg.fields;
  j["modes"] = cfg.modes;
  j["a_grid"] = cfg.a_grid;
  j["a_min_fraction"] = cfg.a_min_fraction;
  j["scales"] = cfg.scales;
  j["sizes"] = cfg.sizes;
  j["fit_below"] = cfg.fit_below;
  return j;
}

}  // namespace elastica::io

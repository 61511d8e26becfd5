#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elastica/sobolev_metric.hpp"

namespace elastica {

/// Named curve generator. Parameters default per preset:
///   circle   Euclidean radius r (1), sphere colatitude phi (0.5),
///            hyperbolic geodesic radius r (0.5)
///   ellipse  Euclidean semi-axes a (1), b (0.6)
///   wavy     circle/colatitude base r or phi plus amplitude amp (0.1) and
///            frequency freq (3)
///   arc      open curve: an arc of the preset circle over angle span (3)
/// `scale` multiplies the Euclidean coordinates (Euclidean) or the radius
/// parameter (sphere / hyperbolic).
struct CurvePreset {
  std::string name = "circle";
  std::map<std::string, double> params;
};

DiscreteCurve make_preset_curve(const ManifoldSpec& m, Topology topo, const CurvePreset& preset, int samples,
                                double scale = 1.0);

/// Orthonormal tangent frame along c obtained by transporting a frame from
/// c(0) node to node. On closed curves the holonomy is spread uniformly over
/// the nodes so that the frame closes up. Entry i has the frame at c_i in its
/// columns.
std::vector<Eigen::MatrixXd> transported_frame(const DiscreteCurve& c);

/// Random smooth field: Fourier coefficients up to `modes` (clamped to
/// N/8) with variance 1/(1+j^2) in the transported frame.
VectorField random_fourier_field(const DiscreteCurve& c, std::uint64_t seed, int modes = 4);

/// splitmix64 of (seed, a, b); used to derive per-trial seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

struct ScanConfig {
  ManifoldSpec manifold = ManifoldSpec::euclidean(2);
  Topology topology = Topology::Closed;
  CurvePreset family;
  int samples = 128;     // nodes per curve
  int k = 1;
  int n = 2;
  int fields = 8;        // random fields per curve
  int modes = 4;
  int a_grid = 16;       // general scan: a in [a_min_fraction * l, l], log-spaced
  double a_min_fraction = 1e-2;
  std::vector<double> scales = {1.0};
  /// Periodic scan: values of the preset's size parameter (r or phi).
  std::vector<double> sizes;
  /// Periodic scan: slope is fitted over curves with length below this.
  double fit_below = 1.0;
  std::uint64_t seed = 0;
  int threads = 1;

  void validate() const;
};

struct ScanSample {
  int curve = 0;
  double scale = 1.0;
  double length = 0.0;
  /// Field index; -1 marks the worst field (generalised eigenvector).
  int field = 0;
  double a = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  /// L-infinity variant; NaN in the periodic scan, which does not compute it.
  double lhs_inf = std::numeric_limits<double>::quiet_NaN();
  double rhs_inf = std::numeric_limits<double>::quiet_NaN();
  double ratio_inf = std::numeric_limits<double>::quiet_NaN();
};

struct ShrinkPoint {
  double length = 0.0;
  double max_ratio = 0.0;
};

struct ScanReport {
  std::vector<ScanSample> samples;
  double max_ratio = 0.0;      // empirical C
  double max_ratio_inf = std::numeric_limits<double>::quiet_NaN();  // general scan only
  /// General scan: max ratio per entry of cfg.scales.
  std::vector<double> scale_max_ratio;
  /// Periodic scan: (l, sup over h) per curve, slope of the log-log fit over
  /// l < fit_below, and C = max ratio / min(1, l^2).
  std::vector<ShrinkPoint> shrink;
  double slope = 0.0;
  double fitted_constant = 0.0;
  int skipped = 0;
};

/// a^{2k}||D_s^k h||^2 <= C(||h||^2 + a^{2n}||D_s^n h||^2) and the L-infinity
/// form, over cfg.scales x fields x a-grid.
ScanReport ineq_scan_general(const ScanConfig& cfg);

/// ||D_s^k h||^2 <= C min(1, l^2)(||h||^2 + ||D_s^n h||^2) on a family of
/// closed curves indexed by cfg.sizes. For each curve the random fields are
/// scanned and the sup over all discrete fields is taken from the
/// generalised eigenproblem.
ScanReport ineq_scan_periodic(const ScanConfig& cfg);

/// Single-sample quantities, exposed for tests.
double scan_ratio(const DiscreteCurve& c, const VectorField& h, int k, int n, double a);
double worst_periodic_ratio(const DiscreteCurve& c, int k, int n);

/// Which completeness case a metric falls into, judged from its coefficient
/// family and constants.
enum class CompletenessCase { LengthWeighted, ConstantClosed, None };
std::string_view to_string(CompletenessCase c);
CompletenessCase completeness_case(const MetricSpec& spec, Topology topo);

struct EquivalenceReport {
  CompletenessCase covered = CompletenessCase::None;
  double min_ratio = 0.0;  // ||h||_G / ||h||_H
  double max_ratio = 0.0;
  double condition = 0.0;  // max / min
  std::vector<double> ratios;
};

EquivalenceReport equivalence_probe(const MetricSpec& spec, const DiscreteCurve& c, int samples,
                                    std::uint64_t seed = 0, int modes = 4);

/// Vanishing paths c(t, theta) = ((1-t)(theta-pi) + f(t), g(t)) in R^2.
enum class EscapeKind { F0G0, Translate, LogEscape, Oscillate };

struct EscapePreset {
  EscapeKind kind = EscapeKind::F0G0;
  double x0 = 0.0;  // translate only
  double y0 = 0.0;

  static EscapePreset parse(std::string_view text);  // "f0g0", "translate(1,0)", ...
  std::string name() const;
  double f(double t) const;
  double g(double t) const;
  double df(double t) const;
  double dg(double t) const;
};

DiscreteCurve escape_curve(const EscapePreset& p, double t, int samples);

struct IncompletenessConfig {
  EscapePreset preset;
  int samples = 512;  // N
  int steps = 200;    // M; the path runs over [0, 1 - 1/M]
  MetricSpec spec = MetricSpec::constant({1.0, 0.0, 1.0});
  /// Optional partner for the affine-homotopy distance bound.
  std::optional<EscapePreset> partner;
  /// Times at which the affine-homotopy bound is evaluated.
  int partner_times = 16;
};

struct AffineBound {
  double t = 0.0;
  double length = 0.0;  // discrete G-length of the affine homotopy
};

struct IncompletenessReport {
  std::vector<double> times;
  std::vector<double> curve_length;   // l(t_j)
  std::vector<double> cumulative;     // discrete path length up to t_j
  double path_length = 0.0;
  /// sqrt(2 pi a0) int_0^T (1-t)^{1/2} (pi^2/3 + f'^2 + g'^2)^{1/2} dt,
  /// T = 1 - 1/M and T = 1.
  double quadrature_truncated = 0.0;
  double quadrature_limit = 0.0;
  double max_length_error = 0.0;  // max_j |l(t_j) / (2pi(1-t_j)) - 1|
  double final_min_speed = 0.0;
  std::vector<AffineBound> affine;
  /// Least-squares slope of log(length) against log(1-t) over `affine`.
  double affine_slope = 0.0;
};

IncompletenessReport incompleteness_demo(const IncompletenessConfig& cfg);

struct ShrinkageConfig {
  /// Curves shorter than this are flagged.
  double length_threshold = 1e-2;
};

struct ShrinkageReport {
  std::vector<double> times;
  std::vector<double> curve_length;
  std::vector<double> cumulative;  // path length from t_0
  /// Smallest L with |l_a^{3/2} - l_b^{3/2}| <= L * length(t_a, t_b).
  double lipschitz = 0.0;
  std::vector<int> flagged;  // curve indices with l below the threshold
};

ShrinkageReport shrinkage_probe(const MetricSpec& spec, const CurvePath& path, const ShrinkageConfig& cfg = {});

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace elastica

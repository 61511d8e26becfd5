#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "elastica/sobolev_metric.hpp"

namespace elastica {

enum class InitMode {
  /// c(t, theta_i) = exp_{c0_i}(t log_{c0_i} c1_i).
  PointwiseGeodesic,
  /// Straight line in the ambient space, projected back to the manifold.
  StraightEmbedding,
};

std::string_view to_string(InitMode m);
InitMode init_mode_from_string(std::string_view name);

struct BvpOptions {
  int time_steps = 16;
  int max_iterations = 500;
  /// Stop when the preconditioned gradient norm falls below gtol.
  double gtol = 1e-6;
  double armijo = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 40;
  bool conjugate_gradient = true;
  InitMode init = InitMode::PointwiseGeodesic;
  /// Amplitude of a smooth random perturbation of the interior curves of the
  /// initial path (0: none).
  double init_noise = 0.0;
  std::uint64_t seed = 0;
  /// Worker threads for per-interval gradient assembly. Results do not
  /// depend on this value.
  int threads = 1;

  void validate() const;
};

/// Node-wise geodesic (or embedded straight-line) homotopy with M steps.
/// Throws InitFailure naming the offending node or curve.
CurvePath init_path(const DiscreteCurve& c0, const DiscreteCurve& c1, int time_steps,
                    InitMode mode = InitMode::PointwiseGeodesic);

/// Riemannian gradient of the discrete path energy with respect to the nodes
/// of the interior curves 1..M-1 (endpoints fixed). Entry j-1 belongs to
/// curve j.
std::vector<VectorField> energy_gradient(const MetricSpec& spec, const CurvePath& path, int threads = 1);

struct GeodesicResult {
  CurvePath path;
  double energy = 0.0;
  double length = 0.0;
  /// sqrt(E) after constant-speed reparametrisation in t.
  double distance = 0.0;
  int iterations = 0;
  bool converged = false;
  /// sqrt(g^T P^{-1} g) with P the banded preconditioner, at the best path.
  double gradient_norm = 0.0;
  /// Energy of every accepted iterate, starting with the initial path.
  std::vector<double> energy_history;
};

/// Minimises the discrete path energy between c0 and c1 starting from
/// init_path (plus optional noise).
GeodesicResult minimize(const MetricSpec& spec, const DiscreteCurve& c0, const DiscreteCurve& c1,
                        const BvpOptions& opts = {});
/// Same, from a caller-supplied initial path.
GeodesicResult minimize_path(const MetricSpec& spec, const CurvePath& initial, const BvpOptions& opts = {});

/// Rescales time so that every interval has the same G-speed (L^2 = E).
CurvePath constant_speed(const MetricSpec& spec, const CurvePath& path);

struct DistanceEstimate {
  double distance = 0.0;
  double energy = 0.0;
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
  /// C l^{3/2} / (1 + l^{3/2}) with l the length of c0; informational.
  double radius = 0.0;
};

DistanceEstimate distance(const MetricSpec& spec, const DiscreteCurve& c0, const DiscreteCurve& c1,
                          const BvpOptions& opts = {}, double radius_constant = 1.0);

}  // namespace elastica

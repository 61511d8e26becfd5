#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elastica/sobolev_metric.hpp"

namespace elastica {

// First-order (n = 1) metrics only: A_c h = a_0 h - a_1 D_s^2 h.

/// Neumann data D_theta u at theta = 0 and theta = 2pi for open curves.
/// Absent data means zero flux.
struct BoundaryData {
  Vector start;
  Vector end;
};

/// A_c h at every node. Uses the compact three-point form of D_s^2 whose
/// pairing <A_c h, k>_{L^2(ds)} is an O(dtheta^2) approximation of G_c(h, k).
/// Throws UnsupportedOrder unless spec.order == 1.
VectorField apply_inertia(const MetricSpec& spec, const DiscreteCurve& c, const VectorField& h,
                          const std::optional<BoundaryData>& bc = std::nullopt);

/// Solves A_c u = f (periodic for closed curves, Neumann data bc for open
/// ones) in a frame parallel-transported along c. Throws SolverFailure if the
/// assembled system is not positive definite.
VectorField solve_inertia(const MetricSpec& spec, const DiscreteCurve& c, const VectorField& f,
                          const std::optional<BoundaryData>& bc = std::nullopt);

/// a_0 sum w_i |h_i|^2 + a_1 sum_e |P h_{e+1} - h_e|^2 / d_e, the energy that
/// the compact inertia operator represents. Conserved by the variational
/// integrator.
double compact_energy(const MetricSpec& spec, const DiscreteCurve& c, const VectorField& h);

/// Psi_c(w,w) = a_0|w|^2 + a_0' int|w|^2 ds - a_1|D_s w|^2 + a_1' int|D_s w|^2 ds
/// at every node.
std::vector<double> psi_form(const MetricSpec& spec, const DiscreteCurve& c, const VectorField& w);

class GeodesicState {
 public:
  /// Throws InvalidArgument if w is not a tangent field along c.
  GeodesicState(DiscreteCurve c, VectorField w);

  const DiscreteCurve& curve() const { return c_; }
  const VectorField& velocity() const { return w_; }

 private:
  DiscreteCurve c_;
  VectorField w_;
};

enum class IvpModel {
  /// Euler-Lagrange equations of the compact discrete energy. Conserves
  /// compact_energy exactly in continuous time.
  Variational,
  /// The continuum geodesic equation with every operator replaced by its
  /// finite-difference counterpart and Neumann data from the natural
  /// boundary conditions.
  Continuum,
};

std::string_view to_string(IvpModel m);
IvpModel ivp_model_from_string(std::string_view name);

/// D_t c_t for the given state.
VectorField geodesic_acceleration(const MetricSpec& spec, const GeodesicState& s, IvpModel model = IvpModel::Variational);

struct IvpOptions {
  IvpModel model = IvpModel::Variational;
};

struct IvpSample {
  int step = 0;
  double t = 0.0;
  double energy = 0.0;
  double length = 0.0;
  double min_speed = 0.0;
};

struct IvpResult {
  std::vector<double> times;
  std::vector<DiscreteCurve> curves;
  std::vector<VectorField> velocities;
  std::vector<IvpSample> diagnostics;
  bool completed = true;
  std::string abort_reason;
  /// max_j |E_j - E_0| / E_0 over the accepted steps.
  double energy_drift = 0.0;

  GeodesicState final_state() const { return {curves.back(), velocities.back()}; }
  /// Requires at least one accepted step.
  CurvePath path() const { return {times, curves}; }
};

/// Classical RK4 on (c, c_t). An immersion or adjacency violation at some
/// stage stops the integration and returns the accepted prefix.
IvpResult ivp_integrate(const MetricSpec& spec, const GeodesicState& s0, double T, int steps,
                        const IvpOptions& opts = {});

}  // namespace elastica

#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "elastica/curve.hpp"

namespace elastica {

enum class CoefficientFamily { Constant, ScaleInvariant, Custom };

std::string_view to_string(CoefficientFamily f);
CoefficientFamily coefficient_family_from_string(std::string_view name);

/// Order-n reparametrisation invariant Sobolev metric
///   G_c(h,k) = sum_i a_i(l_c) int g(D_s^i h, D_s^i k) ds.
/// ScaleInvariant uses the graded rule a_i(l) = C_i l^(2i-3).
struct MetricSpec {
  int order = 1;
  CoefficientFamily family = CoefficientFamily::Constant;
  std::vector<double> coeffs;  // C_0..C_n for Constant / ScaleInvariant
  std::vector<std::function<double(double)>> custom;  // a_0..a_n for Custom
  /// Optional analytic derivatives a_i'; central differences otherwise.
  std::vector<std::function<double(double)>> custom_derivative;

  static MetricSpec constant(std::vector<double> c);
  static MetricSpec scale_invariant(std::vector<double> c);
  static MetricSpec make_custom(std::vector<std::function<double(double)>> a);

  void validate() const;
};

/// [a_0(l) .. a_n(l)].
std::vector<double> coefficients(const MetricSpec& spec, double length);
/// [a_0'(l) .. a_n'(l)] (analytic for Constant / ScaleInvariant).
std::vector<double> coefficient_derivatives(const MetricSpec& spec, double length);

double inner_G(const MetricSpec& spec, const DiscreteCurve& c, const VectorField& h, const VectorField& k);
double norm_G(const MetricSpec& spec, const DiscreteCurve& c, const VectorField& h);

/// int g(h,k) + g(D_theta^n h, D_theta^n k) dtheta.
double inner_H(const DiscreteCurve& c, const VectorField& h, const VectorField& k, int order);

/// ||D_s^k h||^2_{L^2(ds)} for k = 0..max_order.
std::vector<double> arclength_seminorms(const DiscreteCurve& c, const VectorField& h, int max_order);

enum class FieldNorm { L2_ds, L2_dtheta, Linf };
double field_norm(const DiscreteCurve& c, const VectorField& h, FieldNorm which);

/// Time-discretised path of curves on a common manifold and grid.
class CurvePath {
 public:
  /// Uniform times t_j = j / (curves.size() - 1).
  explicit CurvePath(std::vector<DiscreteCurve> curves);
  CurvePath(std::vector<double> times, std::vector<DiscreteCurve> curves);

  const std::vector<double>& times() const { return times_; }
  const std::vector<DiscreteCurve>& curves() const { return curves_; }
  const DiscreteCurve& curve(int j) const { return curves_[j]; }
  const DiscreteCurve& front() const { return curves_.front(); }
  const DiscreteCurve& back() const { return curves_.back(); }
  int steps() const { return static_cast<int>(curves_.size()) - 1; }

 private:
  std::vector<double> times_;
  std::vector<DiscreteCurve> curves_;
};

struct PathEnergy {
  double energy = 0.0;
  double length = 0.0;
  /// G(u_j, u_j) of the midpoint velocity of every interval.
  std::vector<double> interval_speed2;
};

/// E = sum_j dt_j G_{m_j}(u_j, u_j) and L = sum_j dt_j sqrt(G_{m_j}(u_j,u_j)),
/// with m_j the node-wise geodesic midpoint of c_j, c_{j+1} and u_j the
/// geodesic velocity there.
PathEnergy path_energy(const MetricSpec& spec, const CurvePath& path);

/// Node-wise geodesic midpoint curve and velocity of one interval.
struct IntervalMidpoint {
  DiscreteCurve curve;
  VectorField velocity;
};
IntervalMidpoint interval_midpoint(const DiscreteCurve& a, const DiscreteCurve& b, double dt);

}  // namespace elastica

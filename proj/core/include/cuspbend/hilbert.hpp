#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

#include "cuspbend/cusp_models.hpp"
#include "cuspbend/projlin.hpp"

namespace cuspbend {

/// A properly convex domain known only through a membership test on
/// homogeneous coordinates. Chords are searched in the affine chart
/// x_{n+1} = 1; convexity is the caller's contract.
struct ConvexDomainOracle {
  std::size_t dimension = 0;
  std::function<Location(const Eigen::VectorXd&)> classify;
};

/// The open unit ball in the chart x_{n+1} = 1 (the Klein model).
ConvexDomainOracle unit_ball_oracle(std::size_t n);

/// Omega(psi) as a membership oracle (strict leaf test, no tolerance band).
ConvexDomainOracle model_domain_oracle(const ModelDomain& dom);

/// g . Omega: a point q is classified as g^-1 q would be in Omega.
ConvexDomainOracle transformed_oracle(const ConvexDomainOracle& dom, const ProjMap& g);

/// The two boundary points of the chord through x and y, ordered
/// z1, x, y, z2 along the line. A boundary point that lies at infinity of
/// the chart is returned as the direction vector with last coordinate 0.
struct ChordIntersection {
  Eigen::VectorXd z1;
  Eigen::VectorXd z2;
  /// Width of the final bisection bracket in chart coordinates (0 for a
  /// point at infinity).
  double residual = 0.0;
  bool z1_at_infinity = false;
  bool z2_at_infinity = false;
};

/// Locates the chord endpoints by marching outward along the chart line
/// until a non-interior point is found, then bisecting. Throws DomainError
/// if x or y is not interior, or x == y.
ChordIntersection chord_boundary(const ConvexDomainOracle& dom, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// [z1 : x : y : z2] = |z1 - y||x - z2| / (|z1 - x||y - z2|), computed from
/// 2x2 determinants in the plane spanned by the four homogeneous vectors, so
/// the value is chart independent and accepts points at infinity. Throws
/// DomainError for non-collinear input or a vanishing denominator.
double cross_ratio(const Eigen::VectorXd& z1, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                   const Eigen::VectorXd& z2, double collinear_tol = kDefaultTolerance);

struct HilbertDistance {
  double value = 0.0;
  bool finite = true;
  /// Empty unless something noteworthy happened (an endpoint at infinity of
  /// the chart, or a chord that never leaves the domain).
  std::string diagnostic;
};

/// d(x, y) = 1/2 log [z1 : x : y : z2] with the diagnostic record.
HilbertDistance hilbert_distance_report(const ConvexDomainOracle& dom, const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& y);

/// The Hilbert distance alone; +inf when the chord is unbounded in both
/// directions.
double hilbert_distance(const ConvexDomainOracle& dom, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Closed-form hyperbolic distance in the Klein model on chart points of the
/// unit ball: arccosh((1 - x.y) / sqrt((1 - |x|^2)(1 - |y|^2))).
double klein_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Homogeneous vector (x, 1) for a chart point x.
Eigen::VectorXd homogenize(const Eigen::VectorXd& chart_point);

}  // namespace cuspbend

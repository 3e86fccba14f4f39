#pragma once

#include <optional>
#include <vector>

#include "cuspbend/projlin.hpp"

namespace cuspbend {

/// Where a point sits relative to a domain.
enum class Location { interior, boundary, exterior, outside_chart };

const char* to_string(Location loc);

/// A point psi of the positive closed dual Weyl chamber: a non-increasing
/// vector of n nonnegative Scalars.
class CuspParameter {
 public:
  /// Throws DomainError unless psi_1 >= psi_2 >= ... >= psi_n >= 0.
  explicit CuspParameter(std::vector<Scalar> psi);

  static CuspParameter zero(std::size_t n);

  std::size_t dimension() const { return psi_.size(); }
  const std::vector<Scalar>& values() const { return psi_; }
  const Scalar& operator[](std::size_t i) const { return psi_[i]; }

  /// Greatest (1-based) index with psi_i > 0, or 0.
  std::size_t type() const;
  bool is_exact() const;

 private:
  std::vector<Scalar> psi_;
};

std::size_t cusp_type(const CuspParameter& psi);

/// An element of the translation group H(psi).
///
/// In block form (sizes 1, t, n-1-t, 1):
///
///     | 1  0  v^T  sigma |
///     | 0  D  0    0     |
///     | 0  0  I    v     |
///     | 0  0  0    1     |
///
/// with sigma = 1/2 |v|^2 - sum_j psi_j log d_j. `log_d` holds the values of
/// log d_j actually used, so products stay exact when they can.
struct CuspGroupElement {
  CuspParameter psi;
  std::vector<Scalar> d;
  std::vector<Scalar> log_d;
  std::vector<Scalar> v;
  Scalar sigma;
  ProjMap matrix;
};

/// Builds an element of H(psi). |d| must equal t(psi) with every d_j > 0, and
/// |v| must equal n-1-t. log d_j is evaluated exactly when d_j is exactly 1
/// or psi_j is exactly 0; otherwise the caller-supplied `log_d` is used, and
/// failing that the float natural log.
CuspGroupElement h_element(const CuspParameter& psi, std::vector<Scalar> d, std::vector<Scalar> v,
                           std::optional<std::vector<Scalar>> log_d = std::nullopt);

/// Parameter-level product (d d', v + v', sigma + sigma' + v.v').
CuspGroupElement h_product(const CuspGroupElement& a, const CuspGroupElement& b);
CuspGroupElement h_inverse(const CuspGroupElement& a);

/// sigma recomputed from (psi, log d, v); equals element.sigma by construction.
Scalar h_sigma(const CuspParameter& psi, std::span<const Scalar> log_d, std::span<const Scalar> v);

/// The model domain Omega(psi) for a parameter of type t < n. Points live in
/// the affine chart x_{n+1} = 1 and the leaf coordinate is
///
///     c = x_1 + sum_{k=1..t} psi_k log x_{k+1} - 1/2 sum_{j=t+2..n} x_j^2
///
/// so that psi_k pairs with coordinate x_{k+1}.
class ModelDomain {
 public:
  explicit ModelDomain(CuspParameter psi);

  const CuspParameter& psi() const { return psi_; }
  std::size_t dimension() const { return psi_.dimension(); }
  std::size_t type() const { return type_; }

 private:
  CuspParameter psi_;
  std::size_t type_;
};

struct LeafReading {
  Scalar c;
  Location location = Location::outside_chart;
};

/// Leaf coordinate of p. Points with x_{n+1} = 0 are tagged outside_chart
/// (c is then meaningless). Throws DomainError when a log coordinate
/// x_2..x_{t+1} is nonpositive.
LeafReading leaf_coordinate(const ModelDomain& dom, const ProjPoint& p, double tol = kDefaultTolerance);

/// Non-throwing classification for use as a membership oracle: nonpositive
/// log coordinates are exterior.
Location classify(const ModelDomain& dom, const ProjPoint& p, double tol = kDefaultTolerance);

/// The point of leaf c with coordinates x = (x_2, ..., x_n).
ProjPoint leaf_point(const ModelDomain& dom, const Scalar& c, std::span<const Scalar> x);

/// Hyperbolic n-space as the negative cone of
///
///     Q_n = | 0  0  -1 |
///           | 0  I   0 |
///           |-1  0   0 |
class ParaboloidModel {
 public:
  explicit ParaboloidModel(std::size_t n);

  std::size_t dimension() const { return n_; }
  const Matrix& form() const { return q_; }

 private:
  std::size_t n_;
  Matrix q_;
};

struct FormReading {
  Scalar value;
  Location location = Location::exterior;
};

/// x^T Q_n x and its sign class. Float points are scaled so the largest
/// coordinate has magnitude 1 before evaluation.
FormReading paraboloid_eval(const ParaboloidModel& m, const ProjPoint& p, double tol = kDefaultTolerance);

/// The parabolic translation by v = (v_2, ..., v_n) fixing [e_1]; the same
/// matrix as h_element with psi = 0.
ProjMap parabolic_element(const ParaboloidModel& m, std::span<const Scalar> v);

/// diag(1, ..., factor, ..., 1) with `factor` in (1-based) position i,
/// 2 <= i <= n. Passing an exact factor keeps the matrix exact.
ProjMap hyperplane_centralizer(std::size_t i, const Scalar& factor, std::size_t n);

/// diag(1, ..., e^tparam, ..., 1); exact identity when tparam is exactly 0.
ProjMap hyperplane_centralizer_element(std::size_t i, const Scalar& tparam, std::size_t n);

/// lambda at (1,1), k(lambda-1) at (n+1,1), identity elsewhere. Fixes the
/// hyperplane x_1 = 0 pointwise and scales e_1 + k e_{n+1} by lambda.
ProjMap zprime_element(const Scalar& lambda, const Scalar& k, std::size_t n);

}  // namespace cuspbend

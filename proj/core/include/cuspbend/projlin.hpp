#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cuspbend/scalar.hpp"

namespace cuspbend {

/// Dense row-major matrix of Scalars.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const Scalar& fill = Scalar(0));
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const Scalar> diag);
  static Matrix from_eigen(const Eigen::MatrixXd& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// True iff every entry is an exact rational.
  bool is_exact() const;
  Matrix to_float() const;
  Eigen::MatrixXd to_eigen() const;

  Matrix transpose() const;
  Scalar max_abs() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, const Matrix& m);

  std::vector<Scalar> apply(std::span<const Scalar> v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Scalar determinant(const Matrix& m);

/// Exact: entrywise equality. Float: max |a - b| <= tol.
bool entrywise_equal(const Matrix& a, const Matrix& b, double tol = kDefaultTolerance);

/// Largest |a_ij - b_ij| as a double.
double max_abs_difference(const Matrix& a, const Matrix& b);

/// A point of P(R^{n+1}): a nonzero vector of n+1 Scalars up to scale.
class ProjPoint {
 public:
  explicit ProjPoint(std::vector<Scalar> coords);
  ProjPoint(std::initializer_list<Scalar> coords);

  /// Standard basis point e_i, 1-based index as in the math.
  static ProjPoint basis(std::size_t dim, std::size_t i);
  static ProjPoint from_eigen(const Eigen::VectorXd& v);

  std::size_t size() const { return coords_.size(); }
  /// Projective dimension n (size - 1).
  std::size_t dimension() const { return coords_.size() - 1; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Scalar> coords() const { return coords_; }
  bool is_exact() const;
  Eigen::VectorXd to_eigen() const;

 private:
  std::vector<Scalar> coords_;
};

/// An invertible (n+1)x(n+1) matrix regarded up to nonzero scale.
class ProjMap {
 public:
  /// Throws SingularMatrixError if the matrix is not invertible and
  /// DimensionError if it is not square.
  explicit ProjMap(Matrix m);

  static ProjMap identity(std::size_t n);

  /// Projective dimension n; the matrix is (n+1)x(n+1).
  std::size_t dimension() const { return m_.rows() - 1; }
  std::size_t size() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  bool is_exact() const { return m_.is_exact(); }

 private:
  struct Unchecked {};
  ProjMap(Matrix m, Unchecked) : m_(std::move(m)) {}
  friend ProjMap compose(const ProjMap& a, const ProjMap& b);
  friend ProjMap inverse(const ProjMap& a);

  Matrix m_;
};

/// Matrix product a * b (apply b first).
ProjMap compose(const ProjMap& a, const ProjMap& b);
ProjMap inverse(const ProjMap& a);
/// a * b * a^-1
ProjMap conjugate(const ProjMap& a, const ProjMap& b);
ProjPoint act(const ProjMap& a, const ProjPoint& p);

/// Proportionality test. Exact values: exact proportionality. Otherwise both
/// sides are divided by the entry where `a` is largest in magnitude and
/// compared entrywise to tol.
bool proj_equiv(const ProjMap& a, const ProjMap& b, double tol = kDefaultTolerance);
bool proj_equiv(const ProjPoint& a, const ProjPoint& b, double tol = kDefaultTolerance);

/// Distance between the scale-normalized forms used by proj_equiv (0 for
/// exactly proportional exact inputs). Returns +inf when the normalizing
/// entry of b vanishes.
double proj_distance(const ProjMap& a, const ProjMap& b);

/// c * d == d * c projectively.
bool commutes(const ProjMap& c, const ProjMap& d, double tol = kDefaultTolerance);

struct EigenPair {
  std::complex<double> value;
  /// Unit-norm eigenvector.
  Eigen::VectorXcd vector;
  /// Number of computed eigenvalues in the same cluster.
  int multiplicity = 1;
  /// ||A v - lambda v||
  double residual = 0.0;
};

/// Eigenvalues (sorted by descending |lambda|), unit eigenvectors and
/// residuals of a float matrix. Exact matrices are refused with ModeError;
/// convert with to_float first. `cluster_tol` groups nearly equal
/// eigenvalues when counting multiplicities.
std::vector<EigenPair> eigen(const ProjMap& a, double cluster_tol = 1e-6);

ProjMap to_float(const ProjMap& a);

}  // namespace cuspbend

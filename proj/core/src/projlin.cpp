#include "cuspbend/projlin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cuspbend {

namespace {

constexpr double kConditionLimit = 1e15;

bool exact_zero(const Scalar& s) { return s.is_exact() && s.rational() == 0; }

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch (" + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ")");
  }
}

// Gauss-Jordan elimination. Exact input pivots on the first nonzero entry;
// float input uses partial pivoting. Returns false if a zero pivot column is
// hit.
bool gauss_jordan_inverse(Matrix a, Matrix& inv) {
  const std::size_t n = a.rows();
  const bool exact = a.is_exact();
  inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    if (exact) {
      for (std::size_t r = col; r < n; ++r) {
        if (!exact_zero(a(r, col))) {
          pivot = r;
          break;
        }
      }
    } else {
      double best = 0.0;
      for (std::size_t r = col; r < n; ++r) {
        double v = std::abs(a(r, col).to_double());
        if (v > best) {
          best = v;
          pivot = r;
        }
      }
    }
    if (pivot == n) return false;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const Scalar p = a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Scalar f = a(r, col);
      if (exact_zero(f)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (!exact_zero(a(col, c))) a(r, c) -= f * a(col, c);
        if (!exact_zero(inv(col, c))) inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return true;
}

double norm1(const Matrix& m) {
  double best = 0.0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) sum += std::abs(m(r, c).to_double());
    best = std::max(best, sum);
  }
  return best;
}

template <class GetA, class GetB>
bool proportional(std::size_t size, GetA a, GetB b, bool exact, double tol) {
  if (exact) {
    std::size_t p = size;
    for (std::size_t k = 0; k < size; ++k) {
      if (!exact_zero(a(k))) {
        p = k;
        break;
      }
    }
    if (p == size || exact_zero(b(p))) return false;
    const Rational& ap = a(p).rational();
    const Rational& bp = b(p).rational();
    for (std::size_t k = 0; k < size; ++k) {
      if (a(k).rational() * bp != b(k).rational() * ap) return false;
    }
    return true;
  }
  std::size_t p = 0;
  double best = -1.0;
  for (std::size_t k = 0; k < size; ++k) {
    double v = std::abs(a(k).to_double());
    if (v > best) {
      best = v;
      p = k;
    }
  }
  const double ap = a(p).to_double();
  const double bp = b(p).to_double();
  if (ap == 0.0 || bp == 0.0) return false;
  for (std::size_t k = 0; k < size; ++k) {
    if (!(std::abs(a(k).to_double() / ap - b(k).to_double() / bp) <= tol)) return false;
  }
  return true;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, const Scalar& fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("Matrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::diagonal(std::span<const Scalar> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::from_eigen(const Eigen::MatrixXd& e) {
  Matrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index r = 0; r < e.rows(); ++r)
    for (Eigen::Index c = 0; c < e.cols(); ++c) m(r, c) = Scalar(e(r, c));
  return m;
}

bool Matrix::is_exact() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_exact(); });
}

Matrix Matrix::to_float() const {
  Matrix m = *this;
  for (auto& s : m.data_) s = cuspbend::to_float(s);
  return m;
}

Eigen::MatrixXd Matrix::to_eigen() const {
  Eigen::MatrixXd e(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) e(r, c) = (*this)(r, c).to_double();
  return e;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Scalar Matrix::max_abs() const {
  Scalar best(0);
  bool have = false;
  for (const auto& s : data_) {
    Scalar a = abs(s);
    if (!have || a.to_double() > best.to_double() ||
        (a.is_exact() && best.is_exact() && a.rational() > best.rational())) {
      best = a;
      have = true;
    }
  }
  return best;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("Matrix multiply: inner dimension mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& aik = a(i, k);
      if (exact_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Scalar& bkj = b(k, j);
        if (exact_zero(bkj)) continue;
        out(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "Matrix add");
  Matrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) += b(r, c);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "Matrix subtract");
  Matrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) -= b(r, c);
  return out;
}

Matrix operator*(const Scalar& s, const Matrix& m) {
  Matrix out = m;
  for (auto& x : out.data_) x = s * x;
  return out;
}

std::vector<Scalar> Matrix::apply(std::span<const Scalar> v) const {
  if (v.size() != cols_) throw DimensionError("Matrix::apply: vector length mismatch");
  std::vector<Scalar> out(rows_, Scalar(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (!exact_zero((*this)(r, c)) && !exact_zero(v[c])) out[r] += (*this)(r, c) * v[c];
  return out;
}

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant: matrix not square");
  const std::size_t n = m.rows();
  Matrix a = m;
  const bool exact = a.is_exact();
  Scalar det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    double best = 0.0;
    for (std::size_t r = col; r < n; ++r) {
      if (exact) {
        if (!exact_zero(a(r, col))) {
          pivot = r;
          break;
        }
      } else if (std::abs(a(r, col).to_double()) > best) {
        best = std::abs(a(r, col).to_double());
        pivot = r;
      }
    }
    if (pivot == n) return exact ? Scalar(0) : Scalar(0.0);
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (exact_zero(a(r, col))) continue;
      Scalar f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

bool entrywise_equal(const Matrix& a, const Matrix& b, double tol) {
  require_same_shape(a, b, "entrywise_equal");
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!approx_equal(a(r, c), b(r, c), tol)) return false;
  return true;
}

double max_abs_difference(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_difference");
  double best = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      Scalar d = a(r, c) - b(r, c);
      best = std::max(best, std::abs(d.to_double()));
    }
  }
  return best;
}

ProjPoint::ProjPoint(std::vector<Scalar> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw DimensionError("ProjPoint: need at least two coordinates");
  bool all_zero = std::all_of(coords_.begin(), coords_.end(), [](const Scalar& s) {
    return s.is_exact() ? s.rational() == 0 : s.to_double() == 0.0;
  });
  if (all_zero) throw DomainError("ProjPoint: zero vector is not a projective point");
}

ProjPoint::ProjPoint(std::initializer_list<Scalar> coords)
    : ProjPoint(std::vector<Scalar>(coords)) {}

ProjPoint ProjPoint::basis(std::size_t dim, std::size_t i) {
  if (i < 1 || i > dim) throw DimensionError("ProjPoint::basis: index out of range");
  std::vector<Scalar> c(dim, Scalar(0));
  c[i - 1] = Scalar(1);
  return ProjPoint(std::move(c));
}

ProjPoint ProjPoint::from_eigen(const Eigen::VectorXd& v) {
  std::vector<Scalar> c;
  c.reserve(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) c.emplace_back(v(i));
  return ProjPoint(std::move(c));
}

bool ProjPoint::is_exact() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& s) { return s.is_exact(); });
}

Eigen::VectorXd ProjPoint::to_eigen() const {
  Eigen::VectorXd v(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) v(i) = coords_[i].to_double();
  return v;
}

ProjMap::ProjMap(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 2) throw DimensionError("ProjMap: matrix must be square, size >= 2");
  if (!m_.is_exact()) {
    for (std::size_t r = 0; r < m_.rows(); ++r)
      for (std::size_t c = 0; c < m_.cols(); ++c)
        if (!std::isfinite(m_(r, c).to_double())) throw DomainError("ProjMap: non-finite entry");
  }
  Scalar det = determinant(m_);
  if (det.is_exact() ? det.rational() == 0 : det.to_double() == 0.0)
    throw SingularMatrixError("ProjMap: matrix is singular");
}

ProjMap ProjMap::identity(std::size_t n) { return ProjMap(Matrix::identity(n + 1), Unchecked{}); }

ProjMap compose(const ProjMap& a, const ProjMap& b) {
  if (a.size() != b.size()) throw DimensionError("compose: dimension mismatch");
  return ProjMap(a.m_ * b.m_, ProjMap::Unchecked{});
}

ProjMap inverse(const ProjMap& a) {
  Matrix inv;
  if (!gauss_jordan_inverse(a.m_, inv)) throw SingularMatrixError("inverse: matrix is singular");
  if (!a.is_exact()) {
    double cond = norm1(a.m_) * norm1(inv);
    if (!std::isfinite(cond) || cond > kConditionLimit)
      throw SingularMatrixError("inverse: condition estimate " + std::to_string(cond) + " exceeds limit");
  }
  return ProjMap(std::move(inv), ProjMap::Unchecked{});
}

ProjMap conjugate(const ProjMap& a, const ProjMap& b) { return compose(compose(a, b), inverse(a)); }

ProjPoint act(const ProjMap& a, const ProjPoint& p) {
  if (a.size() != p.size()) throw DimensionError("act: dimension mismatch");
  std::vector<Scalar> v = a.matrix().apply(p.coords());
  if (!p.is_exact() || !a.is_exact()) {
    double scale = 0.0;
    for (const auto& s : v) scale = std::max(scale, std::abs(s.to_double()));
    if (scale == 0.0) throw Error("act: image is the zero vector (internal error)");
    for (auto& s : v) s = Scalar(s.to_double() / scale);
  }
  return ProjPoint(std::move(v));
}

bool proj_equiv(const ProjMap& a, const ProjMap& b, double tol) {
  if (a.size() != b.size()) throw DimensionError("proj_equiv: dimension mismatch");
  const std::size_t n = a.size();
  auto ga = [&](std::size_t k) -> const Scalar& { return a.matrix()(k / n, k % n); };
  auto gb = [&](std::size_t k) -> const Scalar& { return b.matrix()(k / n, k % n); };
  return proportional(n * n, ga, gb, a.is_exact() && b.is_exact(), tol);
}

bool proj_equiv(const ProjPoint& a, const ProjPoint& b, double tol) {
  if (a.size() != b.size()) throw DimensionError("proj_equiv: dimension mismatch");
  auto ga = [&](std::size_t k) -> const Scalar& { return a[k]; };
  auto gb = [&](std::size_t k) -> const Scalar& { return b[k]; };
  return proportional(a.size(), ga, gb, a.is_exact() && b.is_exact(), tol);
}

double proj_distance(const ProjMap& a, const ProjMap& b) {
  if (a.size() != b.size()) throw DimensionError("proj_distance: dimension mismatch");
  if (a.is_exact() && b.is_exact() && proj_equiv(a, b)) return 0.0;
  const Eigen::MatrixXd ea = a.matrix().to_eigen();
  const Eigen::MatrixXd eb = b.matrix().to_eigen();
  Eigen::Index r = 0, c = 0;
  ea.cwiseAbs().maxCoeff(&r, &c);
  if (eb(r, c) == 0.0) return std::numeric_limits<double>::infinity();
  return (ea / ea(r, c) - eb / eb(r, c)).cwiseAbs().maxCoeff();
}

bool commutes(const ProjMap& c, const ProjMap& d, double tol) {
  return proj_equiv(compose(c, d), compose(d, c), tol);
}

std::vector<EigenPair> eigen(const ProjMap& a, double cluster_tol) {
  if (a.is_exact())
    throw ModeError("eigen: exact matrices are not supported; read eigenvalues off a triangular form or convert with to_float");
  const Eigen::MatrixXd m = a.matrix().to_eigen();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, true);
  if (solver.info() != Eigen::Success) throw Error("eigen: iteration failed to converge");
  const Eigen::VectorXcd values = solver.eigenvalues();
  const Eigen::MatrixXcd vectors = solver.eigenvectors();
  const Eigen::MatrixXcd mc = m.cast<std::complex<double>>();

  std::vector<EigenPair> out;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    EigenPair p;
    p.value = values(i);
    p.vector = vectors.col(i);
    double nrm = p.vector.norm();
    if (nrm > 0) p.vector /= nrm;
    p.residual = (mc * p.vector - p.value * p.vector).norm();
    out.push_back(std::move(p));
  }
  for (auto& p : out) {
    int count = 0;
    for (Eigen::Index j = 0; j < values.size(); ++j)
      if (std::abs(values(j) - p.value) <= cluster_tol * std::max(1.0, std::abs(p.value))) ++count;
    p.multiplicity = count;
  }
  std::stable_sort(out.begin(), out.end(), [](const EigenPair& x, const EigenPair& y) {
    double ax = std::abs(x.value), ay = std::abs(y.value);
    if (ax != ay) return ax > ay;
    if (x.value.real() != y.value.real()) return x.value.real() > y.value.real();
    return x.value.imag() > y.value.imag();
  });
  return out;
}

ProjMap to_float(const ProjMap& a) { return ProjMap(a.matrix().to_float()); }

}  // namespace cuspbend

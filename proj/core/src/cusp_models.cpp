#include "cuspbend/cusp_models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cuspbend {

namespace {

bool is_exact_value(const Scalar& s, long value) { return s.is_exact() && s.rational() == value; }

bool greater_or_equal(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() >= b.rational();
  return a.to_double() >= b.to_double();
}

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b) {
  Scalar s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

ProjMap h_matrix(std::size_t n, std::size_t t, std::span<const Scalar> d, std::span<const Scalar> v,
                 const Scalar& sigma) {
  Matrix m = Matrix::identity(n + 1);
  for (std::size_t j = 0; j < t; ++j) m(1 + j, 1 + j) = d[j];
  for (std::size_t k = 0; k < v.size(); ++k) {
    m(0, 1 + t + k) = v[k];
    m(1 + t + k, n) = v[k];
  }
  m(0, n) = sigma;
  return ProjMap(std::move(m));
}

bool same_parameter(const CuspParameter& a, const CuspParameter& b) {
  if (a.dimension() != b.dimension()) return false;
  for (std::size_t i = 0; i < a.dimension(); ++i)
    if (!approx_equal(a[i], b[i], 0.0)) return false;
  return true;
}

}  // namespace

const char* to_string(Location loc) {
  switch (loc) {
    case Location::interior: return "interior";
    case Location::boundary: return "boundary";
    case Location::exterior: return "exterior";
    case Location::outside_chart: return "outside-chart";
  }
  return "unknown";
}

CuspParameter::CuspParameter(std::vector<Scalar> psi) : psi_(std::move(psi)) {
  if (psi_.empty()) throw DimensionError("CuspParameter: dimension must be positive");
  for (std::size_t i = 0; i + 1 < psi_.size(); ++i) {
    if (!greater_or_equal(psi_[i], psi_[i + 1]))
      throw DomainError("CuspParameter: entries must be non-increasing (psi_" + std::to_string(i + 1) +
                        " < psi_" + std::to_string(i + 2) + ")");
  }
  if (psi_.back().sign(0.0) < 0) throw DomainError("CuspParameter: entries must be nonnegative");
}

CuspParameter CuspParameter::zero(std::size_t n) { return CuspParameter(std::vector<Scalar>(n, Scalar(0))); }

std::size_t CuspParameter::type() const {
  std::size_t t = 0;
  for (std::size_t i = 0; i < psi_.size(); ++i)
    if (psi_[i].sign(0.0) > 0) t = i + 1;
  return t;
}

bool CuspParameter::is_exact() const {
  return std::all_of(psi_.begin(), psi_.end(), [](const Scalar& s) { return s.is_exact(); });
}

std::size_t cusp_type(const CuspParameter& psi) { return psi.type(); }

Scalar h_sigma(const CuspParameter& psi, std::span<const Scalar> log_d, std::span<const Scalar> v) {
  Scalar sigma = Scalar::exact(1, 2) * dot(v, v);
  for (std::size_t j = 0; j < log_d.size(); ++j) {
    if (is_exact_value(log_d[j], 0)) continue;
    sigma -= psi[j] * log_d[j];
  }
  return sigma;
}

CuspGroupElement h_element(const CuspParameter& psi, std::vector<Scalar> d, std::vector<Scalar> v,
                           std::optional<std::vector<Scalar>> log_d) {
  const std::size_t n = psi.dimension();
  const std::size_t t = psi.type();
  if (d.size() != t)
    throw DimensionError("h_element: expected " + std::to_string(t) + " diagonal entries, got " +
                         std::to_string(d.size()));
  if (t >= n) throw DomainError("h_element: H(psi) is modelled here only for type t < n");
  if (v.size() != n - 1 - t)
    throw DimensionError("h_element: expected " + std::to_string(n - 1 - t) + " translation entries, got " +
                         std::to_string(v.size()));
  for (const auto& dj : d)
    if (dj.sign(0.0) <= 0) throw DomainError("h_element: diagonal entries must be positive");
  if (log_d && log_d->size() != t) throw DimensionError("h_element: log_d length must equal t");

  std::vector<Scalar> logs;
  logs.reserve(t);
  for (std::size_t j = 0; j < t; ++j) {
    if (is_exact_value(d[j], 1))
      logs.emplace_back(0);
    else if (log_d)
      logs.push_back((*log_d)[j]);
    else
      logs.push_back(log(d[j]));
  }
  Scalar sigma = h_sigma(psi, logs, v);
  ProjMap m = h_matrix(n, t, d, v, sigma);
  return CuspGroupElement{psi, std::move(d), std::move(logs), std::move(v), std::move(sigma), std::move(m)};
}

CuspGroupElement h_product(const CuspGroupElement& a, const CuspGroupElement& b) {
  if (!same_parameter(a.psi, b.psi)) throw DomainError("h_product: elements belong to different H(psi)");
  const std::size_t n = a.psi.dimension();
  const std::size_t t = a.psi.type();
  std::vector<Scalar> d(t), logs(t), v(a.v.size());
  for (std::size_t j = 0; j < t; ++j) {
    d[j] = a.d[j] * b.d[j];
    logs[j] = a.log_d[j] + b.log_d[j];
  }
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.v[k] + b.v[k];
  Scalar sigma = a.sigma + b.sigma + dot(a.v, b.v);
  ProjMap m = h_matrix(n, t, d, v, sigma);
  return CuspGroupElement{a.psi, std::move(d), std::move(logs), std::move(v), std::move(sigma), std::move(m)};
}

CuspGroupElement h_inverse(const CuspGroupElement& a) {
  const std::size_t n = a.psi.dimension();
  const std::size_t t = a.psi.type();
  std::vector<Scalar> d(t), logs(t), v(a.v.size());
  for (std::size_t j = 0; j < t; ++j) {
    d[j] = Scalar(1) / a.d[j];
    logs[j] = -a.log_d[j];
  }
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = -a.v[k];
  Scalar sigma = dot(a.v, a.v) - a.sigma;
  ProjMap m = h_matrix(n, t, d, v, sigma);
  return CuspGroupElement{a.psi, std::move(d), std::move(logs), std::move(v), std::move(sigma), std::move(m)};
}

ModelDomain::ModelDomain(CuspParameter psi) : psi_(std::move(psi)), type_(psi_.type()) {
  if (type_ >= psi_.dimension()) throw DomainError("ModelDomain: requires cusp type t < n");
}

LeafReading leaf_coordinate(const ModelDomain& dom, const ProjPoint& p, double tol) {
  const std::size_t n = dom.dimension();
  const std::size_t t = dom.type();
  if (p.size() != n + 1) throw DimensionError("leaf_coordinate: point has wrong dimension");

  const Scalar& last = p[n];
  if (last.is_exact() && p.is_exact()) {
    if (last.rational() == 0) return {Scalar(0), Location::outside_chart};
  } else {
    double scale = 0.0;
    for (const auto& s : p.coords()) scale = std::max(scale, std::abs(s.to_double()));
    if (std::abs(last.to_double()) <= tol * scale) return {Scalar(0), Location::outside_chart};
  }

  auto x = [&](std::size_t i) { return p[i - 1] / last; };  // 1-based chart coordinate
  Scalar c = x(1);
  for (std::size_t k = 1; k <= t; ++k) {
    Scalar xk = x(k + 1);
    if (xk.sign(0.0) <= 0)
      throw DomainError("leaf_coordinate: nonpositive log-coordinate x_" + std::to_string(k + 1));
    Scalar lg = log(xk);
    if (!is_exact_value(lg, 0)) c += dom.psi()[k - 1] * lg;
  }
  for (std::size_t j = t + 2; j <= n; ++j) {
    Scalar xj = x(j);
    c -= Scalar::exact(1, 2) * xj * xj;
  }
  int s = c.sign(tol);
  Location loc = s > 0 ? Location::interior : (s == 0 ? Location::boundary : Location::exterior);
  return {std::move(c), loc};
}

Location classify(const ModelDomain& dom, const ProjPoint& p, double tol) {
  try {
    return leaf_coordinate(dom, p, tol).location;
  } catch (const DomainError&) {
    return Location::exterior;
  }
}

ProjPoint leaf_point(const ModelDomain& dom, const Scalar& c, std::span<const Scalar> x) {
  const std::size_t n = dom.dimension();
  const std::size_t t = dom.type();
  if (x.size() != n - 1) throw DimensionError("leaf_point: expected n-1 coordinates");
  Scalar x1 = c;
  for (std::size_t k = 1; k <= t; ++k) {
    const Scalar& xk = x[k - 1];
    if (xk.sign(0.0) <= 0)
      throw DomainError("leaf_point: nonpositive log-coordinate x_" + std::to_string(k + 1));
    Scalar lg = log(xk);
    if (!is_exact_value(lg, 0)) x1 -= dom.psi()[k - 1] * lg;
  }
  for (std::size_t j = t + 2; j <= n; ++j) x1 += Scalar::exact(1, 2) * x[j - 2] * x[j - 2];
  std::vector<Scalar> coords;
  coords.reserve(n + 1);
  coords.push_back(std::move(x1));
  coords.insert(coords.end(), x.begin(), x.end());
  coords.emplace_back(1);
  return ProjPoint(std::move(coords));
}

ParaboloidModel::ParaboloidModel(std::size_t n) : n_(n), q_(n + 1, n + 1) {
  if (n < 1) throw DimensionError("ParaboloidModel: n must be positive");
  q_(0, n) = Scalar(-1);
  q_(n, 0) = Scalar(-1);
  for (std::size_t i = 1; i < n; ++i) q_(i, i) = Scalar(1);
}

FormReading paraboloid_eval(const ParaboloidModel& m, const ProjPoint& p, double tol) {
  if (p.size() != m.dimension() + 1) throw DimensionError("paraboloid_eval: point has wrong dimension");
  std::vector<Scalar> x(p.coords().begin(), p.coords().end());
  if (!p.is_exact()) {
    double scale = 0.0;
    for (const auto& s : x) scale = std::max(scale, std::abs(s.to_double()));
    for (auto& s : x) s = Scalar(s.to_double() / scale);
  }
  std::vector<Scalar> qx = m.form().apply(x);
  Scalar value = dot(x, qx);
  int s = value.sign(tol);
  Location loc = s < 0 ? Location::interior : (s == 0 ? Location::boundary : Location::exterior);
  return {std::move(value), loc};
}

ProjMap parabolic_element(const ParaboloidModel& m, std::span<const Scalar> v) {
  if (v.size() != m.dimension() - 1) throw DimensionError("parabolic_element: expected n-1 entries");
  return h_element(CuspParameter::zero(m.dimension()), {}, std::vector<Scalar>(v.begin(), v.end())).matrix;
}

ProjMap hyperplane_centralizer(std::size_t i, const Scalar& factor, std::size_t n) {
  if (i < 2 || i > n) throw DimensionError("hyperplane_centralizer: index must satisfy 2 <= i <= n");
  if (factor.sign(0.0) == 0) throw DomainError("hyperplane_centralizer: factor must be nonzero");
  Matrix m = Matrix::identity(n + 1);
  m(i - 1, i - 1) = factor;
  return ProjMap(std::move(m));
}

ProjMap hyperplane_centralizer_element(std::size_t i, const Scalar& tparam, std::size_t n) {
  return hyperplane_centralizer(i, exp(tparam), n);
}

ProjMap zprime_element(const Scalar& lambda, const Scalar& k, std::size_t n) {
  if (lambda.sign(0.0) == 0) throw DomainError("zprime_element: lambda must be nonzero");
  Matrix m = Matrix::identity(n + 1);
  m(0, 0) = lambda;
  m(n, 0) = k * (lambda - Scalar(1));
  return ProjMap(std::move(m));
}

}  // namespace cuspbend

#include "cuspbend/cusp_classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace cuspbend {

namespace {

constexpr double kSmallS = 1e-8;

bool exact_one(const Scalar& x) { return x.is_exact() && x.identical(Scalar(1)); }

Matrix permutation_matrix(const std::vector<std::size_t>& new_index) {
  const std::size_t dim = new_index.size();
  Matrix p(dim, dim);
  for (std::size_t old = 0; old < dim; ++old) p(new_index[old], old) = Scalar(1);
  return p;
}

// Worst entry error of `got` against `want`, relative to the size of `want`.
double relative_error(const Matrix& got, const Matrix& want) {
  const double scale = std::max(1.0, want.max_abs().to_double());
  return max_abs_difference(got, want) / scale;
}

// Corner -b^2 (mu + 1) / (2 (mu - 1)) of a bent normal form.
Scalar bent_corner(const RectangularCuspData& data, std::size_t k) {
  const Scalar& b = data.b[k];
  return -(b * b * (data.factor(k) + Scalar(1))) / (Scalar(2) * data.factor_minus_one(k));
}

}  // namespace

RectangularCuspData RectangularCuspData::from_s(std::vector<Scalar> b, std::vector<Scalar> s) {
  RectangularCuspData d;
  d.n = b.size() + 1;
  d.b = std::move(b);
  d.s = std::move(s);
  d.validate();
  return d;
}

RectangularCuspData RectangularCuspData::from_mu(std::vector<Scalar> b, std::vector<Scalar> mu) {
  RectangularCuspData d;
  d.n = b.size() + 1;
  d.b = std::move(b);
  d.s.reserve(mu.size());
  for (const auto& m : mu) {
    if (m.sign(0.0) <= 0) throw DomainError("RectangularCuspData: mu must be positive");
    if (exact_one(m))
      d.s.emplace_back(0);
    else
      d.s.emplace_back(std::log1p((m - Scalar(1)).to_double()));
  }
  d.mu = std::move(mu);
  d.validate();
  return d;
}

void RectangularCuspData::validate() const {
  if (n < 2) throw DimensionError("RectangularCuspData: n must be at least 2");
  if (b.size() != n - 1 || s.size() != n - 1) throw DimensionError("RectangularCuspData: need n-1 values of b and s");
  if (mu && mu->size() != n - 1) throw DimensionError("RectangularCuspData: need n-1 values of mu");
  for (std::size_t k = 0; k < n - 1; ++k) {
    if (b[k].sign(0.0) <= 0) throw DomainError("RectangularCuspData: b must be positive");
    const double sk = s_value(k);
    if (!std::isfinite(sk) || sk < 0.0) throw DomainError("RectangularCuspData: s must be finite and >= 0");
    if (mu) {
      const Scalar& m = (*mu)[k];
      if (m.sign(0.0) <= 0) throw DomainError("RectangularCuspData: mu must be positive");
      const double md = m.to_double();
      if (std::abs(md - std::exp(sk)) > 1e-12 * std::max(1.0, md))
        throw DomainError("RectangularCuspData: mu disagrees with e^s");
    } else if (sk > 0.0 && sk < kSmallS) {
      throw DomainError("RectangularCuspData: s = " + s[k].to_string() +
                        " is too small for float classification; supply an exact mu");
    }
  }
}

bool RectangularCuspData::bent(std::size_t slot) const {
  if (mu) {
    const Scalar& m = (*mu)[slot];
    return m.is_exact() ? !exact_one(m) : m.to_double() != 1.0;
  }
  return s_value(slot) != 0.0;
}

std::vector<std::size_t> RectangularCuspData::bent_slots() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < slots(); ++k)
    if (bent(k)) out.push_back(k);
  return out;
}

Scalar RectangularCuspData::factor(std::size_t slot) const {
  if (mu) return (*mu)[slot];
  return exp(s[slot]);
}

Scalar RectangularCuspData::factor_minus_one(std::size_t slot) const {
  if (mu) return (*mu)[slot] - Scalar(1);
  if (s[slot].is_exact() && s[slot].is_exact_zero()) return Scalar(0);
  return Scalar(std::expm1(s_value(slot)));
}

bool RectangularCuspData::is_exact() const {
  if (!std::all_of(b.begin(), b.end(), [](const Scalar& x) { return x.is_exact(); })) return false;
  if (mu) return std::all_of(mu->begin(), mu->end(), [](const Scalar& x) { return x.is_exact(); });
  return std::all_of(s.begin(), s.end(), [](const Scalar& x) { return x.is_exact() && x.is_exact_zero(); });
}

double cusp_parameter_formula(double b, double s) {
  if (s == 0.0) return std::numeric_limits<double>::infinity();
  return b * b / (s * std::tanh(0.5 * s) * 2.0);
}

double inverse_cusp_parameter_formula(double b, double s) {
  if (s == 0.0) return 0.0;
  return 2.0 * s * std::tanh(0.5 * s) / (b * b);
}

std::vector<ProjMap> standard_cusp_generators(const RectangularCuspData& data) {
  data.validate();
  const std::size_t dim = data.n + 1;
  std::vector<ProjMap> out;
  out.reserve(data.slots());
  for (std::size_t k = 0; k < data.slots(); ++k) {
    const Scalar& b = data.b[k];
    Matrix m = Matrix::identity(dim);
    m(0, k + 1) = b;
    m(k + 1, dim - 1) = b;
    m(0, dim - 1) = b * b / Scalar(2);
    out.emplace_back(std::move(m));
  }
  return out;
}

std::vector<ProjMap> bent_cusp_generators(const RectangularCuspData& data) {
  std::vector<ProjMap> gens = standard_cusp_generators(data);
  for (std::size_t k = 0; k < data.slots(); ++k) {
    if (!data.bent(k)) continue;
    gens[k] = compose(hyperplane_centralizer(k + 2, data.factor(k), data.n), gens[k]);
  }
  return gens;
}

ProjMap normalizing_matrix(const RectangularCuspData& data, const std::vector<std::size_t>& declared_bent) {
  data.validate();
  const std::size_t dim = data.n + 1;
  Matrix a = Matrix::identity(dim);
  for (std::size_t k : declared_bent) {
    if (k >= data.slots()) throw DimensionError("normalizing_matrix: slot out of range");
    if (!data.bent(k)) throw DomainError("normalizing_matrix: slot " + std::to_string(k + 2) + " has zero bending parameter");
    const Scalar beta = data.b[k] / data.factor_minus_one(k);
    a(0, k + 1) = -beta;
    a(k + 1, dim - 1) = beta * data.factor(k);
  }
  return ProjMap(std::move(a));
}

ProjMap normalizing_matrix(const RectangularCuspData& data) { return normalizing_matrix(data, data.bent_slots()); }

ProjMap normalizing_matrix_inverse(const RectangularCuspData& data) {
  const ProjMap a = normalizing_matrix(data);
  const std::size_t dim = data.n + 1;
  const Matrix id = Matrix::identity(dim);
  const Matrix nil = a.matrix() - id;
  return ProjMap(id - nil + nil * nil);
}

ProjMap expected_normal_form(const RectangularCuspData& data, std::size_t slot) {
  data.validate();
  if (slot >= data.slots()) throw DimensionError("expected_normal_form: slot out of range");
  if (!data.bent(slot)) return standard_cusp_generators(data)[slot];
  const std::size_t dim = data.n + 1;
  Matrix m = Matrix::identity(dim);
  m(slot + 1, slot + 1) = data.factor(slot);
  m(0, dim - 1) = bent_corner(data, slot);
  return ProjMap(std::move(m));
}

ClassifiedCusp conjugate_and_match(const RectangularCuspData& data, double tol) {
  data.validate();
  const std::size_t n = data.n;
  const std::size_t dim = n + 1;
  const ProjMap a = normalizing_matrix(data);
  const ProjMap ainv = normalizing_matrix_inverse(data);
  const std::vector<ProjMap> bent = bent_cusp_generators(data);

  ClassifiedCusp out;
  out.residual = data.is_exact() ? Scalar(0) : Scalar(0.0);
  double worst = 0.0;
  std::vector<ProjMap> normal;
  normal.reserve(data.slots());
  for (std::size_t k = 0; k < data.slots(); ++k) {
    const ProjMap want = expected_normal_form(data, k);
    if (data.is_exact()) {
      ProjMap g = compose(compose(a, bent[k]), ainv);
      if (!entrywise_equal(g.matrix(), want.matrix(), 0.0)) {
        throw PatternMismatch("conjugate_and_match: slot " + std::to_string(k + 2) + " misses its normal form exactly",
                              relative_error(g.matrix(), want.matrix()));
      }
      normal.push_back(std::move(g));
    } else {
      // A g A^-1 = g' checked as A g = g' A: A^-1 has entries of order
      // 1/s^2 and would swamp small bends with rounding error.
      const Matrix lhs = a.matrix() * bent[k].matrix();
      const Matrix rhs = want.matrix() * a.matrix();
      const double scale = std::max({1.0, lhs.max_abs().to_double(), rhs.max_abs().to_double()});
      const double err = max_abs_difference(lhs, rhs) / scale;
      if (!(err <= tol))
        throw PatternMismatch("conjugate_and_match: slot " + std::to_string(k + 2) + " misses its normal form by " +
                                  Scalar(err).to_string(),
                              err);
      worst = std::max(worst, err);
      normal.push_back(want);
    }
    out.corners.push_back(normal.back()(0, dim - 1));
  }
  if (!out.residual.is_exact()) out.residual = Scalar(worst);

  // a_k = -corner / s_k = b^2 (mu + 1) / (2 (mu - 1) s).
  std::vector<std::size_t> bent_slots;
  std::vector<std::size_t> flat_slots;
  out.a.resize(data.slots(), std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < data.slots(); ++k) {
    if (data.bent(k)) {
      out.a[k] = -bent_corner(data, k).to_double() / data.s_value(k);
      bent_slots.push_back(k);
    } else {
      flat_slots.push_back(k);
    }
  }
  std::stable_sort(bent_slots.begin(), bent_slots.end(),
                   [&](std::size_t i, std::size_t j) { return out.a[i] > out.a[j]; });

  std::vector<Scalar> psi;
  psi.reserve(n);
  for (std::size_t k : bent_slots) psi.emplace_back(out.a[k]);
  while (psi.size() < n) psi.emplace_back(0);
  out.psi = CuspParameter(std::move(psi));
  out.type = bent_slots.size();

  out.slot_order = bent_slots;
  out.slot_order.insert(out.slot_order.end(), flat_slots.begin(), flat_slots.end());
  std::vector<std::size_t> new_index(dim);
  new_index[0] = 0;
  new_index[dim - 1] = dim - 1;
  for (std::size_t j = 0; j < out.slot_order.size(); ++j) new_index[out.slot_order[j] + 1] = j + 1;
  const ProjMap p(permutation_matrix(new_index));
  const ProjMap pinv = inverse(p);
  out.conjugator = compose(p, a);
  for (const auto& g : normal) out.generators.push_back(compose(compose(p, g), pinv));
  return out;
}

LeafInvarianceReport leaf_invariance_check(const RectangularCuspData& data, std::size_t trials, std::uint64_t seed,
                                           double tol, double noise) {
  const ClassifiedCusp cc = conjugate_and_match(data, std::max(tol, 1e-9));
  const ModelDomain dom(cc.psi);
  const std::size_t n = data.n;
  const std::size_t t = cc.type;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> cdist(0.0, 3.0);
  std::uniform_real_distribution<double> logdist(0.5, 2.0);
  std::uniform_real_distribution<double> flatdist(-2.0, 2.0);
  std::uniform_real_distribution<double> noisedist(-1.0, 1.0);

  std::vector<Eigen::MatrixXd> gens;
  for (const auto& g : cc.generators) {
    Eigen::MatrixXd m = g.matrix().to_eigen();
    if (noise > 0.0)
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) += noise * noisedist(rng);
    gens.push_back(std::move(m));
  }

  std::vector<double> psi(n);
  for (std::size_t k = 0; k < n; ++k) psi[k] = cc.psi[k].to_double();

  LeafInvarianceReport report;
  report.tol = tol;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const double c = cdist(rng);
    std::vector<Scalar> x(n - 1);
    for (std::size_t j = 0; j < n - 1; ++j) x[j] = Scalar(j < t ? logdist(rng) : flatdist(rng));
    const Eigen::VectorXd p = leaf_point(dom, Scalar(c), x).to_eigen();
    for (const auto& g : gens) {
      Eigen::VectorXd q = g * p;
      double residual = std::numeric_limits<double>::infinity();
      if (q(static_cast<Eigen::Index>(n)) > 0.0) {
        q /= q(static_cast<Eigen::Index>(n));
        bool positive = true;
        double value = q(0);
        double scale = 1.0 + std::abs(q(0));
        for (std::size_t k = 0; k < t; ++k) {
          const double xk = q(static_cast<Eigen::Index>(k + 1));
          if (!(xk > 0.0)) {
            positive = false;
            break;
          }
          value += psi[k] * std::log(xk);
          scale += std::abs(psi[k] * std::log(xk));
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          const double xj = q(static_cast<Eigen::Index>(j));
          value -= 0.5 * xj * xj;
          scale += 0.5 * xj * xj;
        }
        if (positive) residual = std::abs(value - c) / scale;
      }
      report.max_residual = std::max(report.max_residual, residual);
      if (!(residual <= tol)) ++report.failures;
    }
    ++report.trials;
  }
  return report;
}

std::optional<Scalar> scaling_ratio(const CuspParameter& psi, const CuspParameter& psi2, double tol) {
  if (psi.dimension() != psi2.dimension()) throw DimensionError("equivalent_parameters: dimension mismatch");
  const std::size_t n = psi.dimension();
  if (psi.is_exact() && psi2.is_exact()) {
    if (psi.type() != psi2.type()) return std::nullopt;
    if (psi.type() == 0) return Scalar(1);
    const Scalar r = psi2[0] / psi[0];
    for (std::size_t k = 0; k < n; ++k)
      if (!(psi2[k] - r * psi[k]).is_exact_zero()) return std::nullopt;
    return r;
  }
  const double m1 = psi[0].to_double();
  const double m2 = psi2[0].to_double();
  if (m1 == 0.0 || m2 == 0.0) {
    if (m1 == 0.0 && m2 == 0.0) return Scalar(1.0);
    return std::nullopt;
  }
  if (psi.type() != psi2.type()) return std::nullopt;
  for (std::size_t k = 0; k < n; ++k)
    if (std::abs(psi[k].to_double() / m1 - psi2[k].to_double() / m2) > tol) return std::nullopt;
  return Scalar(m2 / m1);
}

bool equivalent_parameters(const CuspParameter& psi, const CuspParameter& psi2, double tol) {
  return scaling_ratio(psi, psi2, tol).has_value();
}

ClassifiedCusp classify_model_generators(const std::vector<ProjMap>& gens, double tol) {
  if (gens.empty()) throw DomainError("classify_model_generators: no generators");
  const std::size_t dim = gens.front().size();
  const std::size_t n = dim - 1;
  for (const auto& g : gens)
    if (g.size() != dim) throw DimensionError("classify_model_generators: dimension mismatch");

  // Scale every generator so that its (1,1) entry is 1.
  std::vector<Eigen::MatrixXd> ms;
  for (const auto& g : gens) {
    Eigen::MatrixXd m = g.matrix().to_eigen();
    if (std::abs(m(0, 0)) <= tol * m.cwiseAbs().maxCoeff())
      throw PatternMismatch("classify_model_generators: e_1 is not fixed", 1.0);
    m /= m(0, 0);
    ms.push_back(std::move(m));
  }

  const auto last = static_cast<Eigen::Index>(n);
  double worst = 0.0;
  auto require_zero = [&](double v, const char* what) {
    const double err = std::abs(v);
    if (err > tol) throw PatternMismatch(std::string("classify_model_generators: ") + what, err);
    worst = std::max(worst, err);
  };

  std::vector<bool> log_slot(n - 1, false);
  std::vector<bool> flat_slot(n - 1, false);
  for (const auto& m : ms) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    require_zero((m(last, last) - 1.0) / scale, "(n+1, n+1) entry differs from (1, 1)");
    for (Eigen::Index r = 0; r <= last; ++r)
      for (Eigen::Index c = 0; c <= last; ++c) {
        if (r == c) continue;
        const bool allowed = (r == 0 && c > 0) || (c == last && r > 0);
        if (!allowed) require_zero(m(r, c) / scale, "entry outside the block pattern");
      }
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const auto i = static_cast<Eigen::Index>(k + 1);
      if (std::abs(m(i, i) - 1.0) > tol) log_slot[k] = true;
      if (std::abs(m(0, i)) > tol || std::abs(m(i, last)) > tol) flat_slot[k] = true;
    }
  }
  std::vector<std::size_t> logs;
  std::vector<std::size_t> flats;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (log_slot[k] && flat_slot[k])
      throw PatternMismatch("classify_model_generators: coordinate " + std::to_string(k + 2) +
                                " is both scaled and translated",
                            1.0);
    (log_slot[k] ? logs : flats).push_back(k);
  }

  for (const auto& m : ms) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    for (std::size_t k : logs) {
      const auto i = static_cast<Eigen::Index>(k + 1);
      require_zero(m(0, i) / scale, "scaled coordinate carries a translation");
      require_zero(m(i, last) / scale, "scaled coordinate carries a translation");
      if (!(m(i, i) > 0.0)) throw PatternMismatch("classify_model_generators: nonpositive diagonal entry", 1.0);
    }
    for (std::size_t k : flats) {
      const auto i = static_cast<Eigen::Index>(k + 1);
      require_zero((m(i, i) - 1.0) / scale, "translated coordinate is scaled");
      require_zero((m(0, i) - m(i, last)) / scale, "row and column translation parts differ");
    }
  }

  // sigma - 1/2 |v|^2 = -sum_k psi_k log d_k
  const std::size_t t = logs.size();
  std::vector<double> psi_fit(t, 0.0);
  if (t > 0) {
    Eigen::MatrixXd lhs(static_cast<Eigen::Index>(ms.size()), static_cast<Eigen::Index>(t));
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(ms.size()));
    for (std::size_t g = 0; g < ms.size(); ++g) {
      const auto& m = ms[g];
      double v2 = 0.0;
      for (std::size_t k : flats) v2 += m(0, static_cast<Eigen::Index>(k + 1)) * m(0, static_cast<Eigen::Index>(k + 1));
      rhs(static_cast<Eigen::Index>(g)) = m(0, last) - 0.5 * v2;
      for (std::size_t j = 0; j < t; ++j)
        lhs(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(j)) =
            -std::log(m(static_cast<Eigen::Index>(logs[j] + 1), static_cast<Eigen::Index>(logs[j] + 1)));
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(lhs, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sv = svd.singularValues();
    if (sv(static_cast<Eigen::Index>(t) - 1) <= 1e-12 * std::max(1.0, sv(0)))
      throw PatternMismatch("classify_model_generators: the log coordinates do not determine psi", 1.0);
    const Eigen::VectorXd x = svd.solve(rhs);
    const double fit = (lhs * x - rhs).cwiseAbs().maxCoeff() / std::max(1.0, rhs.cwiseAbs().maxCoeff());
    if (fit > tol) throw PatternMismatch("classify_model_generators: corners are inconsistent with any psi", fit);
    worst = std::max(worst, fit);
    for (std::size_t j = 0; j < t; ++j) {
      psi_fit[j] = x(static_cast<Eigen::Index>(j));
      if (!(psi_fit[j] > tol))
        throw PatternMismatch("classify_model_generators: fitted psi is not positive on a scaled coordinate", 1.0);
    }
  }

  ClassifiedCusp out;
  out.a.assign(n - 1, std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < t; ++j) out.a[logs[j]] = psi_fit[j];
  std::vector<std::size_t> order = logs;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return out.a[i] > out.a[j]; });
  std::vector<Scalar> psi;
  for (std::size_t k : order) psi.emplace_back(out.a[k]);
  while (psi.size() < n) psi.emplace_back(0);
  out.psi = CuspParameter(std::move(psi));
  out.type = t;
  out.residual = Scalar(worst);
  out.slot_order = order;
  out.slot_order.insert(out.slot_order.end(), flats.begin(), flats.end());

  std::vector<std::size_t> new_index(dim);
  new_index[0] = 0;
  new_index[n] = n;
  for (std::size_t j = 0; j < out.slot_order.size(); ++j) new_index[out.slot_order[j] + 1] = j + 1;
  const ProjMap p(permutation_matrix(new_index));
  const ProjMap pinv = inverse(p);
  out.conjugator = p;
  for (const auto& g : gens) {
    ProjMap h = compose(compose(p, g), pinv);
    out.corners.push_back(h(0, n) / h(0, 0));
    out.generators.push_back(std::move(h));
  }
  return out;
}

}  // namespace cuspbend

#include "cuspbend_cli/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "cuspbend/hilbert.hpp"
#include "cuspbend/parallel.hpp"

namespace cuspbend::cli {

namespace {

using Rng = std::mt19937_64;

Rng trial_rng(std::uint64_t seed, std::uint64_t tag, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(trial)};
  return Rng(seq);
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Runs `trial` for every index in parallel and folds the residuals with max.
// A trial returns its residual; NaN counts as a failure.
PropertyResult run_property(const std::string& suite, const std::string& name, std::size_t trials, double tol,
                            const std::function<double(std::size_t)>& trial) {
  std::vector<double> residuals(trials, 0.0);
  parallel_for(trials, [&](std::size_t i) { residuals[i] = trial(i); });
  PropertyResult r;
  r.suite = suite;
  r.name = name;
  r.trials = trials;
  r.tol = tol;
  r.passed = true;
  for (double x : residuals) {
    if (std::isnan(x)) {
      r.passed = false;
      r.max_residual = std::numeric_limits<double>::infinity();
      continue;
    }
    r.max_residual = std::max(r.max_residual, x);
    if (!(x <= tol)) r.passed = false;
  }
  return r;
}

// Boolean properties report 0 for a pass and 1 for a failure.
double flag(bool ok) { return ok ? 0.0 : 1.0; }

CuspParameter random_psi(Rng& rng, std::size_t n, std::size_t t) {
  std::vector<double> vals(t);
  for (auto& v : vals) v = uniform(rng, 0.2, 3.0);
  std::sort(vals.rbegin(), vals.rend());
  std::vector<Scalar> psi;
  for (double v : vals) psi.emplace_back(v);
  while (psi.size() < n) psi.emplace_back(0);
  return CuspParameter(std::move(psi));
}

CuspGroupElement random_h(Rng& rng, const CuspParameter& psi) {
  const std::size_t t = psi.type();
  std::vector<Scalar> d(t), v(psi.dimension() - 1 - t);
  for (auto& x : d) x = Scalar(uniform(rng, 0.5, 2.0));
  for (auto& x : v) x = Scalar(uniform(rng, -2.0, 2.0));
  return h_element(psi, std::move(d), std::move(v));
}

RectangularCuspData random_cusp(Rng& rng, std::size_t n, double zero_prob) {
  std::vector<Scalar> b(n - 1), s(n - 1);
  for (auto& x : b) x = Scalar(uniform(rng, 0.5, 3.0));
  for (auto& x : s) x = uniform(rng, 0.0, 1.0) < zero_prob ? Scalar(0) : Scalar(uniform(rng, 0.01, 3.0));
  return RectangularCuspData::from_s(std::move(b), std::move(s));
}

double relative_difference(const Matrix& a, const Matrix& b) {
  return max_abs_difference(a, b) / std::max(1.0, b.max_abs().to_double());
}

Eigen::VectorXd random_ball_point(Rng& rng, std::size_t n, double radius) {
  std::normal_distribution<double> g;
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = g(rng);
  const double r = radius * std::pow(uniform(rng, 0.0, 1.0), 1.0 / static_cast<double>(n));
  return x.normalized() * r;
}

// ---- projlin ---------------------------------------------------------------

std::vector<PropertyResult> projlin_suite(const SuiteOptions& o) {
  const std::size_t dim = o.n + 1;
  std::vector<PropertyResult> out;
  out.push_back(run_property("projlin", "compose_inverse", 200, o.tol, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, 11, i);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)) * 3;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) += uniform(rng, -1.0, 1.0);
    const ProjMap g(Matrix::from_eigen(m));
    return proj_distance(ProjMap::identity(o.n), compose(g, inverse(g)));
  }));
  out.push_back(run_property("projlin", "exact_inverse", 100, 0.0, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, 12, i);
    Matrix m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        m(r, c) = Scalar::exact(static_cast<long>(pick(rng, 0, 8)) - 4, static_cast<long>(pick(rng, 1, 3)));
    for (std::size_t r = 0; r < dim; ++r) m(r, r) += Scalar(7);
    if (determinant(m).is_exact_zero()) return 0.0;
    const ProjMap g(m);
    const ProjMap id = compose(inverse(g), g);
    return flag(id.is_exact() && entrywise_equal(id.matrix(), Matrix::identity(dim), 0.0));
  }));
  out.push_back(run_property("projlin", "scale_invariance", 200, o.tol, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, 13, i);
    Matrix m = Matrix::identity(dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) m(r, c) += Scalar(uniform(rng, -0.5, 0.5));
    const double k = uniform(rng, 0.1, 10.0) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    return proj_distance(ProjMap(m), ProjMap(Scalar(k) * m));
  }));
  return out;
}

// ---- cusp_models -------------------------------------------------------------

std::vector<PropertyResult> cusp_models_suite(const SuiteOptions& o) {
  std::vector<PropertyResult> out;
  out.push_back(run_property("cusp_models", "h_closure", 1000, 1e-12, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, 21, i);
    const CuspParameter psi = random_psi(rng, o.n, pick(rng, 0, o.n - 1));
    const CuspGroupElement a = random_h(rng, psi);
    const CuspGroupElement b = random_h(rng, psi);
    return relative_difference(h_product(a, b).matrix.matrix(), compose(a.matrix, b.matrix).matrix());
  }));
  out.push_back(run_property("cusp_models", "leaf_invariance", 1000, o.tol, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, 22, i);
    const std::size_t t = pick(rng, 0, o.n - 1);
    const CuspParameter psi = random_psi(rng, o.n, t);
    const ModelDomain dom(psi);
    const CuspGroupElement g = random_h(rng, psi);
    Eigen::MatrixXd m = g.matrix.matrix().to_eigen();
    if (o.noise > 0.0)
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) += uniform(rng, -o.noise, o.noise);
    const double c = uniform(rng, 0.0, 3.0);
    std::vector<Scalar> x(o.n - 1);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = Scalar(j < t ? uniform(rng, 0.5, 2.0) : uniform(rng, -2.0, 2.0));
    const Eigen::VectorXd p = leaf_point(dom, Scalar(c), x).to_eigen();
    const Eigen::VectorXd q = m * p;
    try {
      const LeafReading lr = leaf_coordinate(dom, ProjPoint::from_eigen(q), 0.0);
      if (lr.location == Location::outside_chart) return std::numeric_limits<double>::quiet_NaN();
      return std::abs(lr.c.to_double() - c) / (1.0 + std::abs(c));
    } catch (const DomainError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  }));
  out.push_back(run_property("cusp_models", "parabolic_preserves_form", 200, 0.0, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, 23, i);
    const ParaboloidModel model(o.n);
    std::vector<Scalar> v(o.n - 1);
    for (auto& x : v) x = Scalar::exact(static_cast<long>(pick(rng, 0, 20)) - 10, static_cast<long>(pick(rng, 1, 5)));
    const Matrix g = parabolic_element(model, v).matrix();
    return flag(entrywise_equal(g.transpose() * model.form() * g, model.form(), 0.0));
  }));
  return out;
}

// ---- hilbert ---------------------------------------------------------------

std::vector<PropertyResult> hilbert_suite(const SuiteOptions& o) {
  std::vector<PropertyResult> out;
  out.push_back(run_property("hilbert", "klein_agreement", 1000, o.tol, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, 31, i);
    const std::size_t n = i % 2 == 0 ? 2 : 3;
    const ConvexDomainOracle ball = unit_ball_oracle(n);
    const Eigen::VectorXd x = random_ball_point(rng, n, 0.99);
    const Eigen::VectorXd y = random_ball_point(rng, n, 0.99);
    return std::abs(hilbert_distance(ball, homogenize(x), homogenize(y)) - klein_distance(x, y));
  }));
  out.push_back(run_property("hilbert", "cross_ratio_invariance", 1000, 1e-10, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, 32, i);
    const auto dim = static_cast<Eigen::Index>(o.n + 1);
    Eigen::VectorXd p(dim), q(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      p(k) = uniform(rng, -1.0, 1.0);
      q(k) = uniform(rng, -1.0, 1.0);
    }
    double t[4];
    for (double& x : t) x = uniform(rng, -3.0, 3.0);
    std::sort(t, t + 4);
    if (t[1] - t[0] < 0.05 || t[2] - t[1] < 0.05 || t[3] - t[2] < 0.05) return 0.0;
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(dim, dim) * 2;
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c) g(r, c) += uniform(rng, -1.0, 1.0);
    auto pt = [&](double s) -> Eigen::VectorXd { return p + s * q; };
    const double before = cross_ratio(pt(t[0]), pt(t[1]), pt(t[2]), pt(t[3]));
    const double after = cross_ratio(g * pt(t[0]), g * pt(t[1]), g * pt(t[2]), g * pt(t[3]));
    return std::abs(after - before) / std::max(1.0, std::abs(before));
  }));
  out.push_back(run_property("hilbert", "model_domain_invariance", 100, 1e-7, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, 33, i);
    const std::size_t t = pick(rng, 0, o.n - 1);
    const CuspParameter psi = random_psi(rng, o.n, t);
    const ModelDomain dom(psi);
    const ConvexDomainOracle omega = model_domain_oracle(dom);
    auto sample = [&]() {
      std::vector<Scalar> x(o.n - 1);
      for (std::size_t j = 0; j < x.size(); ++j)
        x[j] = Scalar(j < t ? uniform(rng, 0.5, 2.0) : uniform(rng, -1.0, 1.0));
      return leaf_point(dom, Scalar(uniform(rng, 0.2, 2.0)), x).to_eigen();
    };
    const Eigen::VectorXd x = sample();
    const Eigen::VectorXd y = sample();
    const Eigen::MatrixXd g = random_h(rng, psi).matrix.matrix().to_eigen();
    const HilbertDistance d0 = hilbert_distance_report(omega, x, y);
    const HilbertDistance d1 = hilbert_distance_report(omega, g * x, g * y);
    if (!d0.finite || !d1.finite) return std::numeric_limits<double>::quiet_NaN();
    return std::abs(d0.value - d1.value) / std::max(1.0, d0.value);
  }));
  return out;
}

// ---- bending ---------------------------------------------------------------

std::vector<PropertyResult> bending_suite(const SuiteOptions& o) {
  std::vector<PropertyResult> out;
  out.push_back(run_property("bending", "relators_after_bend", 50, o.tol, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, 41, i);
    const RectangularCuspData data = random_cusp(rng, o.n, 0.25);
    MarkedRep rep = cusp_rep(data);
    double worst = rep.relator_residual();
    for (const auto& move : cusp_bending_moves(data)) {
      rep = bend(rep, move, o.tol);
      worst = std::max(worst, rep.relator_residual());
    }
    return worst;
  }));
  out.push_back(run_property("bending", "order_independence", 100, 1e-12, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, 42, i);
    std::vector<Scalar> b(o.n - 1, Scalar(1));
    std::vector<Scalar> s(o.n - 1, Scalar(0));
    const RectangularCuspData data = RectangularCuspData::from_s(b, s);
    const MarkedRep rep = cusp_rep(data);
    std::vector<BendingMove> moves;
    for (int m = 0; m < 2; ++m) {
      const std::size_t k = pick(rng, 0, o.n - 2);
      std::vector<std::string> base;
      std::vector<Word> edges;
      for (std::size_t j = 0; j + 1 < o.n; ++j)
        if (j != k) {
          base.push_back("g" + std::to_string(j + 2));
          edges.push_back({{base.back(), 1}});
        }
      moves.push_back({Decomposition::hnn(base, "g" + std::to_string(k + 2), edges),
                       hyperplane_centralizer_element(k + 2, Scalar(uniform(rng, -2.0, 2.0)), o.n)});
    }
    const MarkedRep ab = iterated_bend(rep, moves);
    const MarkedRep ba = iterated_bend(rep, {moves[1], moves[0]});
    return rep_distance(ab, ba);
  }));
  out.push_back(run_property("bending", "pipeline_equivalence", 100, 1e-12, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, 43, i);
    const RectangularCuspData data = random_cusp(rng, o.n, 0.25);
    const MarkedRep bent = iterated_bend(cusp_rep(data), cusp_bending_moves(data));
    const std::vector<ProjMap> direct = bent_cusp_generators(data);
    double worst = 0.0;
    for (std::size_t k = 0; k < direct.size(); ++k)
      worst = std::max(worst, proj_distance(direct[k], bent.generator("g" + std::to_string(k + 2))));
    return worst;
  }));
  return out;
}

// ---- cusp_classify -----------------------------------------------------------

std::vector<PropertyResult> cusp_classify_suite(const SuiteOptions& o) {
  std::vector<PropertyResult> out;

  // Every type t with rational b and mu cycling through the sample sets.
  struct ExactCase {
    std::size_t n, t, p, q;
  };
  std::vector<ExactCase> cases;
  const std::size_t n_lo = o.exhaustive_exact ? 3 : o.n;
  const std::size_t n_hi = o.exhaustive_exact ? std::max<std::size_t>(6, o.n) : o.n;
  for (std::size_t n = n_lo; n <= n_hi; ++n)
    for (std::size_t t = 1; t < n; ++t)
      for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t q = 0; q < 3; ++q) cases.push_back({n, t, p, q});
  out.push_back(run_property("cusp_classify", "exact_normal_form", cases.size(), 0.0, [&](std::size_t i) {
    static const std::vector<Scalar> bset{Scalar::exact(1, 2), Scalar::exact(1), Scalar::exact(3)};
    static const std::vector<Scalar> muset{Scalar::exact(2), Scalar::exact(3, 2), Scalar::exact(5)};
    const ExactCase& c = cases[i];
    std::vector<Scalar> b(c.n - 1), mu(c.n - 1);
    for (std::size_t k = 0; k + 1 < c.n; ++k) {
      b[k] = bset[(c.p + k) % 3];
      mu[k] = k < c.t ? muset[(c.q + 2 * k) % 3] : Scalar(1);
    }
    try {
      const ClassifiedCusp cc = conjugate_and_match(RectangularCuspData::from_mu(b, mu));
      return flag(cc.residual.is_exact() && cc.type == c.t);
    } catch (const PatternMismatch& e) {
      return std::max(e.residual(), 1e-300);
    }
  }));
  out.push_back(run_property("cusp_classify", "type_law", 500, 0.0, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, 51, i);
    const RectangularCuspData data = random_cusp(rng, o.n, 0.4);
    const std::size_t expect = data.bent_slots().size();
    return flag(conjugate_and_match(data, o.tol).type == expect);
  }));
  out.push_back(run_property("cusp_classify", "leaf_invariance", 20, o.tol, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, 52, i);
    const RectangularCuspData data = random_cusp(rng, o.n, 0.3);
    const LeafInvarianceReport rep = leaf_invariance_check(data, 50, o.seed + i, o.tol, o.noise);
    return rep.max_residual;
  }));
  out.push_back(run_property("cusp_classify", "small_bend_limit", 1, 0.0, [&](std::size_t) {
    const ClassifiedCusp tiny =
        conjugate_and_match(RectangularCuspData::from_s({Scalar(1)}, {Scalar(1e-6)}), o.tol);
    bool ok = 1.0 / tiny.a[0] <= 1e-11;
    double prev = 0.0;
    for (int k = 1; k <= 200; ++k) {
      const double s = 2.0 * k / 200.0;
      const double ainv = 1.0 / conjugate_and_match(RectangularCuspData::from_s({Scalar(1)}, {Scalar(s)}), o.tol).a[0];
      if (!(ainv > prev)) ok = false;
      prev = ainv;
    }
    return flag(ok);
  }));
  out.push_back(run_property("cusp_classify", "scaling_equivalence", 200, 0.0, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, 53, i);
    if (i % 2 == 0) {
      const CuspParameter psi = random_psi(rng, o.n, pick(rng, 1, o.n));
      const double r = 10.0 * (1.0 - uniform(rng, 0.0, 1.0));
      std::vector<Scalar> scaled;
      for (const auto& x : psi.values()) scaled.push_back(Scalar(r) * x);
      return flag(equivalent_parameters(psi, CuspParameter(scaled), o.tol));
    }
    if (o.n < 2) return 0.0;
    for (;;) {
      const CuspParameter a = random_psi(rng, o.n, pick(rng, 2, o.n));
      const CuspParameter b = random_psi(rng, o.n, pick(rng, 2, o.n));
      double diff = 0.0;
      for (std::size_t k = 0; k < o.n; ++k)
        diff = std::max(diff, std::abs(a[k].to_double() / a[0].to_double() - b[k].to_double() / b[0].to_double()));
      if (diff < 1e-3) continue;
      return flag(!equivalent_parameters(a, b, o.tol));
    }
  }));
  out.push_back(run_property("cusp_classify", "diagonalizable_model", 50, o.tol, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, 54, i);
    const double lambda = uniform(rng, 1.1, 4.0);
    const double k = uniform(rng, 0.1, 2.0);
    const ZprimeModel model = zprime_model(o.n, lambda, k, o.seed + i);
    std::vector<ProjMap> gens;
    for (const auto& [name, g] : model.bent.generators()) gens.push_back(g);
    const DiagonalizationResult d = diagonalizable_check(gens, o.tol, o.seed + i);
    return d.diagonalizable ? d.residual : std::numeric_limits<double>::quiet_NaN();
  }));
  out.push_back(run_property("cusp_classify", "bent_group_triangular", 20, o.tol, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, 55, i);
    const TriangularResult r = upper_triangular_check(bent_cusp_generators(random_cusp(rng, o.n, 0.3)), o.tol);
    return r.verdict == TriangularVerdict::triangularizable ? r.residual : std::numeric_limits<double>::quiet_NaN();
  }));
  return out;
}

using SuiteFn = std::vector<PropertyResult> (*)(const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{{"projlin", projlin_suite},
                                                             {"cusp_models", cusp_models_suite},
                                                             {"hilbert", hilbert_suite},
                                                             {"bending", bending_suite},
                                                             {"cusp_classify", cusp_classify_suite}};
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<PropertyResult> run_suites(const SuiteOptions& opts, const std::string& suite) {
  if (opts.n < 2) throw DomainError("verify: n must be at least 2");
  std::vector<PropertyResult> out;
  bool found = false;
  for (const auto& [name, fn] : registry()) {
    if (suite != "all" && suite != name) continue;
    found = true;
    auto part = fn(opts);
    out.insert(out.end(), part.begin(), part.end());
  }
  if (!found) throw DomainError("verify: unknown suite '" + suite + "'");
  return out;
}

MarkedRep cusp_rep(const RectangularCuspData& data) {
  std::map<std::string, ProjMap> gens;
  const std::vector<ProjMap> std_gens = standard_cusp_generators(data);
  std::vector<std::string> names;
  for (std::size_t k = 0; k < std_gens.size(); ++k) {
    names.push_back("g" + std::to_string(k + 2));
    gens.emplace(names.back(), std_gens[k]);
  }
  std::vector<Word> relators;
  for (std::size_t a = 0; a < names.size(); ++a)
    for (std::size_t b = a + 1; b < names.size(); ++b)
      relators.push_back({{names[a], 1}, {names[b], 1}, {names[a], -1}, {names[b], -1}});
  return MarkedRep(data.n, std::move(gens), std::move(relators));
}

std::vector<BendingMove> cusp_bending_moves(const RectangularCuspData& data) {
  std::vector<BendingMove> moves;
  for (std::size_t k : data.bent_slots()) {
    std::vector<std::string> base;
    std::vector<Word> edges;
    for (std::size_t j = 0; j < data.slots(); ++j)
      if (j != k) {
        base.push_back("g" + std::to_string(j + 2));
        edges.push_back({{base.back(), 1}});
      }
    moves.push_back({Decomposition::hnn(std::move(base), "g" + std::to_string(k + 2), std::move(edges)),
                     hyperplane_centralizer(k + 2, data.factor(k), data.n)});
  }
  return moves;
}

ZprimeModel zprime_model(std::size_t n, double lambda, double k, std::uint64_t seed) {
  if (n < 2) throw DomainError("zprime_model: n must be at least 2");
  Rng rng(seed);
  const CuspParameter psi = random_psi(rng, n, n - 1);
  const std::size_t t = n - 1;

  std::map<std::string, ProjMap> gens;
  std::vector<std::string> base;
  // Base generators: log d orthogonal to psi, one per direction.
  for (std::size_t j = 1; j < t; ++j) {
    std::vector<double> logd(t, 0.0);
    logd[j] = uniform(rng, 0.3, 1.0);
    logd[0] = -psi[j].to_double() * logd[j] / psi[0].to_double();
    std::vector<Scalar> d, ld;
    for (double x : logd) {
      d.emplace_back(std::exp(x));
      ld.emplace_back(x);
    }
    base.push_back("h" + std::to_string(j));
    gens.emplace(base.back(), h_element(psi, d, {}, ld).matrix);
  }
  // Stable letter with sigma > 0: every d_j < 1.
  std::vector<Scalar> dg;
  for (std::size_t j = 0; j < t; ++j) dg.emplace_back(uniform(rng, 0.4, 0.9));
  gens.emplace("g", h_element(psi, dg, {}).matrix);

  std::vector<Word> relators;
  std::vector<Word> edges;
  std::vector<std::string> all = base;
  all.push_back("g");
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b)
      relators.push_back({{all[a], 1}, {all[b], 1}, {all[a], -1}, {all[b], -1}});
  for (const auto& name : base) edges.push_back({{name, 1}});

  MarkedRep original(n, std::move(gens), relators);
  BendingMove move{Decomposition::hnn(base, "g", edges), zprime_element(Scalar(lambda), Scalar(k), n)};
  MarkedRep bent = bend(original, move);
  return {std::move(original), std::move(bent)};
}

}  // namespace cuspbend::cli

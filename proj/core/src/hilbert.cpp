#include "cuspbend/hilbert.hpp"

#include <cmath>
#include <limits>

namespace cuspbend {

namespace {

constexpr double kMarchLimit = 1125899906842624.0;  // 2^50
constexpr int kBisectionSteps = 200;

Eigen::VectorXd chart_point(const Eigen::VectorXd& p) {
  const Eigen::Index n = p.size() - 1;
  const double last = p(n);
  if (last == 0.0 || std::abs(last) <= 1e-14 * p.cwiseAbs().maxCoeff())
    throw DomainError("chord_boundary: point lies outside the affine chart");
  return p.head(n) / last;
}

struct Endpoint {
  Eigen::VectorXd point;  // homogeneous
  double residual = 0.0;
  bool at_infinity = false;
};

// Walks from base + start * dir in the direction sign(step) until leaving the
// domain, then bisects the bracket.
Endpoint find_endpoint(const ConvexDomainOracle& dom, const Eigen::VectorXd& base, const Eigen::VectorXd& dir,
                       double start, double sign) {
  auto inside = [&](double tau) { return dom.classify(homogenize(base + tau * dir)) == Location::interior; };
  double lo = start;
  double step = 1.0;
  double hi = lo + sign * step;
  while (inside(hi)) {
    lo = hi;
    step *= 2.0;
    hi = lo + sign * step;
    if (std::abs(hi) > kMarchLimit) {
      Eigen::VectorXd at_inf = Eigen::VectorXd::Zero(base.size() + 1);
      at_inf.head(base.size()) = sign * dir.normalized();
      return {at_inf, 0.0, true};
    }
  }
  for (int i = 0; i < kBisectionSteps; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (inside(mid))
      lo = mid;
    else
      hi = mid;
  }
  return {homogenize(base + 0.5 * (lo + hi) * dir), std::abs(hi - lo) * dir.norm(), false};
}

double det2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a(0) * b(1) - a(1) * b(0); }

}  // namespace

Eigen::VectorXd homogenize(const Eigen::VectorXd& chart) {
  Eigen::VectorXd h(chart.size() + 1);
  h.head(chart.size()) = chart;
  h(chart.size()) = 1.0;
  return h;
}

ConvexDomainOracle unit_ball_oracle(std::size_t n) {
  return {n, [n](const Eigen::VectorXd& p) {
            const double last = p(static_cast<Eigen::Index>(n));
            if (last == 0.0) return Location::outside_chart;
            double r2 = (p.head(static_cast<Eigen::Index>(n)) / last).squaredNorm();
            if (r2 < 1.0) return Location::interior;
            return r2 == 1.0 ? Location::boundary : Location::exterior;
          }};
}

ConvexDomainOracle model_domain_oracle(const ModelDomain& dom) {
  return {dom.dimension(), [dom](const Eigen::VectorXd& p) { return classify(dom, ProjPoint::from_eigen(p), 0.0); }};
}

ConvexDomainOracle transformed_oracle(const ConvexDomainOracle& dom, const ProjMap& g) {
  if (g.dimension() != dom.dimension) throw DimensionError("transformed_oracle: dimension mismatch");
  const Eigen::MatrixXd ginv = inverse(to_float(g)).matrix().to_eigen();
  auto inner = dom.classify;
  return {dom.dimension, [ginv, inner](const Eigen::VectorXd& p) {
            Eigen::VectorXd q = ginv * p;
            // Keep the preimage in the upper half of the double cover so the
            // inner chart test sees a positive last coordinate.
            if (q(q.size() - 1) < 0) q = -q;
            return inner(q);
          }};
}

ChordIntersection chord_boundary(const ConvexDomainOracle& dom, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const auto n = static_cast<Eigen::Index>(dom.dimension);
  if (x.size() != n + 1 || y.size() != n + 1) throw DimensionError("chord_boundary: point has wrong dimension");
  if (dom.classify(x) != Location::interior || dom.classify(y) != Location::interior)
    throw DomainError("chord_boundary: both points must be interior");
  const Eigen::VectorXd xc = chart_point(x);
  const Eigen::VectorXd yc = chart_point(y);
  const Eigen::VectorXd dir = yc - xc;
  if (dir.norm() == 0.0) throw DomainError("chord_boundary: x and y coincide");

  Endpoint back = find_endpoint(dom, xc, dir, 0.0, -1.0);
  Endpoint fwd = find_endpoint(dom, xc, dir, 1.0, 1.0);
  ChordIntersection out;
  out.z1 = back.point;
  out.z2 = fwd.point;
  out.z1_at_infinity = back.at_infinity;
  out.z2_at_infinity = fwd.at_infinity;
  out.residual = std::max(back.residual, fwd.residual);
  return out;
}

double cross_ratio(const Eigen::VectorXd& z1, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                   const Eigen::VectorXd& z2, double collinear_tol) {
  const Eigen::Index dim = z1.size();
  if (x.size() != dim || y.size() != dim || z2.size() != dim) throw DimensionError("cross_ratio: size mismatch");
  Eigen::MatrixXd cols(dim, 4);
  cols << z1.normalized(), x.normalized(), y.normalized(), z2.normalized();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols, Eigen::ComputeThinU);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv.size() > 2 && sv(2) > collinear_tol * sv(0)) throw DomainError("cross_ratio: points are not collinear");

  const Eigen::MatrixXd basis = svd.matrixU().leftCols(2);
  auto coords = [&](Eigen::Index k) -> Eigen::Vector2d { return basis.transpose() * cols.col(k); };
  const Eigen::Vector2d a = coords(0), b = coords(1), c = coords(2), d = coords(3);
  const double num = std::abs(det2(a, c) * det2(b, d));
  const double den = std::abs(det2(a, b) * det2(c, d));
  if (den <= 1e-15 * std::max(num, 1.0)) throw DomainError("cross_ratio: coincident points in the denominator");
  return num / den;
}

HilbertDistance hilbert_distance_report(const ConvexDomainOracle& dom, const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& y) {
  if (x.size() != y.size()) throw DimensionError("hilbert_distance: size mismatch");
  if (dom.classify(x) != Location::interior || dom.classify(y) != Location::interior)
    throw DomainError("hilbert_distance: both points must be interior");
  if ((chart_point(x) - chart_point(y)).norm() == 0.0) return {0.0, true, {}};

  ChordIntersection chord = chord_boundary(dom, x, y);
  HilbertDistance out;
  if (chord.z1_at_infinity && chord.z2_at_infinity) {
    out.value = std::numeric_limits<double>::infinity();
    out.finite = false;
    out.diagnostic = "chord stays inside the domain in both directions (domain not properly convex)";
    return out;
  }
  if (chord.z1_at_infinity || chord.z2_at_infinity)
    out.diagnostic = "chord endpoint at infinity of the affine chart";
  out.value = 0.5 * std::log(cross_ratio(chord.z1, x, y, chord.z2));
  return out;
}

double hilbert_distance(const ConvexDomainOracle& dom, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return hilbert_distance_report(dom, x, y).value;
}

double klein_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size()) throw DimensionError("klein_distance: size mismatch");
  const double a = 1.0 - x.squaredNorm();
  const double b = 1.0 - y.squaredNorm();
  if (a <= 0.0 || b <= 0.0) throw DomainError("klein_distance: points must lie inside the unit ball");
  // cosh d - 1 written without cancellation:
  // (1 - x.y)^2 - ab = |x - y|^2 - |x ^ y|^2
  double wedge2 = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (Eigen::Index j = i + 1; j < x.size(); ++j) {
      double w = x(i) * y(j) - x(j) * y(i);
      wedge2 += w * w;
    }
  const double num = (x - y).squaredNorm() - wedge2;
  const double root = std::sqrt(a * b);
  const double w = std::max(0.0, num / (root * ((1.0 - x.dot(y)) + root)));
  return std::log1p(w + std::sqrt(w * (w + 2.0)));
}

}  // namespace cuspbend

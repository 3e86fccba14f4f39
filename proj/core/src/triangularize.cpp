#include <algorithm>
#include <cmath>
#include <random>

#include "cuspbend/cusp_classify.hpp"

namespace cuspbend {

namespace {

constexpr double kNullTol = 1e-8;
constexpr double kGrayTol = 1e-5;
constexpr double kClusterTol = 1e-4;
constexpr std::size_t kMaxCandidates = 64;
constexpr double kMaxCondition = 1e8;

Eigen::MatrixXd normalized(const ProjMap& g) {
  Eigen::MatrixXd m = g.matrix().to_eigen();
  return m / m.cwiseAbs().maxCoeff();
}

// Real eigenvalue estimates of m: cluster means, plus the individual members
// of clusters that are not tight.
std::vector<double> real_eigenvalue_estimates(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  const Eigen::VectorXcd ev = es.eigenvalues();
  std::vector<double> reals;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i).imag()) <= kClusterTol) reals.push_back(ev(i).real());
  std::sort(reals.begin(), reals.end());

  std::vector<double> out;
  std::size_t i = 0;
  while (i < reals.size()) {
    std::size_t j = i + 1;
    while (j < reals.size() && reals[j] - reals[j - 1] <= kClusterTol) ++j;
    double mean = 0.0;
    for (std::size_t k = i; k < j; ++k) mean += reals[k];
    out.push_back(mean / static_cast<double>(j - i));
    if (reals[j - 1] - reals[i] > 1e-12)
      for (std::size_t k = i; k < j; ++k) out.push_back(reals[k]);
    i = j;
  }
  return out;
}

struct SearchState {
  bool gray = false;
};

// Orthonormal bases of the subspaces of common eigenvectors of `mats`.
std::vector<Eigen::MatrixXd> common_eigenspaces(const std::vector<Eigen::MatrixXd>& mats, SearchState& state) {
  const Eigen::Index m = mats.front().rows();
  std::vector<Eigen::MatrixXd> candidates{Eigen::MatrixXd::Identity(m, m)};
  for (const auto& g : mats) {
    std::vector<Eigen::MatrixXd> next;
    const std::vector<double> lambdas = real_eigenvalue_estimates(g);
    for (const auto& basis : candidates) {
      for (double lambda : lambdas) {
        const Eigen::MatrixXd restricted = (g - lambda * Eigen::MatrixXd::Identity(m, m)) * basis;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(restricted, Eigen::ComputeFullV);
        const Eigen::VectorXd sv = svd.singularValues();
        const Eigen::Index r = basis.cols();
        Eigen::Index rank = 0;
        for (Eigen::Index k = 0; k < sv.size(); ++k) {
          if (sv(k) > kNullTol) ++rank;
          if (sv(k) > kNullTol && sv(k) <= kGrayTol) state.gray = true;
        }
        if (rank >= r) continue;
        Eigen::MatrixXd kernel = basis * svd.matrixV().rightCols(r - rank);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(kernel);
        Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, r - rank);
        bool duplicate = false;
        for (const auto& other : next)
          if (other.cols() == q.cols() && (other * other.transpose() - q * q.transpose()).cwiseAbs().maxCoeff() < 1e-9)
            duplicate = true;
        if (!duplicate && next.size() < kMaxCandidates) next.push_back(std::move(q));
      }
    }
    candidates = std::move(next);
    if (candidates.empty()) break;
  }
  return candidates;
}

// Prefers the common eigenvector closest to e_1 so that input which is
// already triangular is left alone.
Eigen::VectorXd pick_vector(const std::vector<Eigen::MatrixXd>& candidates) {
  Eigen::VectorXd best = candidates.front().col(0);
  double best_score = -1.0;
  for (const auto& basis : candidates) {
    const Eigen::VectorXd proj = basis * basis.row(0).transpose();
    const double score = proj.norm();
    if (score > best_score) {
      best_score = score;
      best = score > 1e-8 ? Eigen::VectorXd(proj / score) : Eigen::VectorXd(basis.col(0));
    }
  }
  if (best(0) < 0) best = -best;
  return best;
}

// Orthogonal matrix whose first column is v.
Eigen::MatrixXd householder_to(const Eigen::VectorXd& v) {
  const Eigen::Index m = v.size();
  Eigen::VectorXd w = -v;
  w(0) += 1.0;
  const double wn = w.squaredNorm();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(m, m);
  if (wn < 1e-28) return h;
  return h - (2.0 / wn) * w * w.transpose();
}

double lower_residual(const Eigen::MatrixXd& m) {
  double worst = 0.0;
  for (Eigen::Index r = 1; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < r; ++c) worst = std::max(worst, std::abs(m(r, c)));
  return worst;
}

}  // namespace

const char* to_string(TriangularVerdict v) {
  switch (v) {
    case TriangularVerdict::triangularizable:
      return "triangularizable";
    case TriangularVerdict::not_triangularizable:
      return "not_triangularizable";
    case TriangularVerdict::ambiguous:
      return "ambiguous";
  }
  return "?";
}

TriangularResult upper_triangular_check(const std::vector<ProjMap>& gens, double tol) {
  TriangularResult out;
  if (gens.empty()) {
    out.verdict = TriangularVerdict::triangularizable;
    out.conjugator = Eigen::MatrixXd::Identity(1, 1);
    return out;
  }
  const std::size_t dim = gens.front().size();
  std::vector<Eigen::MatrixXd> full;
  for (const auto& g : gens) {
    if (g.size() != dim) throw DimensionError("upper_triangular_check: dimension mismatch");
    full.push_back(normalized(g));
  }
  const auto N = static_cast<Eigen::Index>(dim);

  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(N, N);
  std::vector<Eigen::MatrixXd> blocks = full;
  SearchState state;
  for (Eigen::Index level = 0; level + 1 < N; ++level) {
    const auto candidates = common_eigenspaces(blocks, state);
    if (candidates.empty()) {
      if (state.gray) {
        out.verdict = TriangularVerdict::ambiguous;
        out.diagnostic = "no common eigenvector at level " + std::to_string(level) +
                         ", but a singular value sits in the gray zone (" + Scalar(kNullTol).to_string() + ", " +
                         Scalar(kGrayTol).to_string() + "]";
      } else {
        out.verdict = TriangularVerdict::not_triangularizable;
        out.diagnostic = "no common real eigenvector at level " + std::to_string(level);
      }
      return out;
    }
    const Eigen::MatrixXd h = householder_to(pick_vector(candidates));
    const Eigen::Index m = N - level;
    Eigen::MatrixXd step = Eigen::MatrixXd::Identity(N, N);
    step.bottomRightCorner(m, m) = h;
    u = u * step;
    for (auto& b : blocks) {
      const Eigen::MatrixXd moved = h.transpose() * b * h;
      b = moved.bottomRightCorner(m - 1, m - 1);
    }
  }

  double residual = 0.0;
  for (const auto& g : full) residual = std::max(residual, lower_residual(u.transpose() * g * u));
  out.residual = residual;
  if (residual <= tol) {
    out.verdict = TriangularVerdict::triangularizable;
    out.conjugator = u.transpose();
  } else {
    out.verdict = TriangularVerdict::ambiguous;
    out.diagnostic = "flag assembled but the lower-triangular residual " + Scalar(residual).to_string() +
                     " exceeds the tolerance";
  }
  if (state.gray && out.diagnostic.empty()) out.diagnostic = "gray-zone singular value encountered";
  return out;
}

DiagonalizationResult diagonalizable_check(const std::vector<ProjMap>& gens, double tol, std::uint64_t seed) {
  DiagonalizationResult out;
  if (gens.empty()) {
    out.diagonalizable = true;
    out.conjugator = Eigen::MatrixXcd::Identity(1, 1);
    return out;
  }
  const std::size_t dim = gens.front().size();
  for (const auto& g : gens)
    if (g.size() != dim) throw DimensionError("diagonalizable_check: dimension mismatch");
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!commutes(gens[i], gens[j], tol))
        throw DomainError("diagonalizable_check: generators " + std::to_string(i) + " and " + std::to_string(j) +
                          " do not commute");

  std::vector<Eigen::MatrixXd> mats;
  for (const auto& g : gens) mats.push_back(normalized(g));
  const auto N = static_cast<Eigen::Index>(dim);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(0.5, 1.5);
  constexpr int kAttempts = 11;  // one try plus 10 retries
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    out.attempts = attempt + 1;
    Eigen::MatrixXd combo = Eigen::MatrixXd::Zero(N, N);
    for (const auto& m : mats) combo += coeff(rng) * m;
    Eigen::EigenSolver<Eigen::MatrixXd> es(combo);
    if (es.info() != Eigen::Success) continue;
    const Eigen::MatrixXcd v = es.eigenvectors();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
    const Eigen::VectorXd sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    if (!(smallest > 0.0) || sv(0) / smallest > kMaxCondition) {
      out.diagnostic = "eigenbasis of the combination is ill-conditioned";
      continue;
    }
    const Eigen::MatrixXcd vinv = v.inverse();
    double residual = 0.0;
    for (const auto& m : mats) {
      Eigen::MatrixXcd d = vinv * m.cast<std::complex<double>>() * v;
      d.diagonal().setZero();
      residual = std::max(residual, d.cwiseAbs().maxCoeff());
    }
    out.residual = residual;
    if (residual <= tol) {
      out.diagonalizable = true;
      out.conjugator = vinv;
      out.diagnostic.clear();
      return out;
    }
    out.diagnostic = "eigenbasis of the combination leaves off-diagonal residual " + Scalar(residual).to_string();
  }
  return out;
}

}  // namespace cuspbend

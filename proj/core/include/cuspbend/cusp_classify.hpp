#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cuspbend/cusp_models.hpp"
#include "cuspbend/projlin.hpp"

namespace cuspbend {

/// Raised when a conjugated generator does not land on its expected
/// normal form.
class PatternMismatch : public Error {
 public:
  PatternMismatch(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// A rectangular hyperbolic cusp with shape constants b_2..b_n and bending
/// parameters s_2..s_n. Vectors are indexed by slot k = 0..n-2, which is
/// coordinate k+2 (1-based) of R^{n+1}.
///
/// `mu`, when present, carries e^{s_k} as an exact (or float) Scalar so the
/// matrix identities can be checked in exact arithmetic.
struct RectangularCuspData {
  std::size_t n = 0;
  std::vector<Scalar> b;
  std::vector<Scalar> s;
  std::optional<std::vector<Scalar>> mu;

  static RectangularCuspData from_s(std::vector<Scalar> b, std::vector<Scalar> s);
  /// s_k = log mu_k; mu_k = 1 marks an unbent slot.
  static RectangularCuspData from_mu(std::vector<Scalar> b, std::vector<Scalar> mu);

  /// Throws DomainError when b_k <= 0, s_k < 0, mu_k <= 0, mu disagrees
  /// with e^{s_k} by more than 1e-12 (relative), or a float-only slot has
  /// 0 < s_k < 1e-8 (too small to classify without an exact mu).
  void validate() const;

  std::size_t slots() const { return b.size(); }
  bool bent(std::size_t slot) const;
  std::vector<std::size_t> bent_slots() const;
  /// mu_k, or e^{s_k} as a float.
  Scalar factor(std::size_t slot) const;
  /// mu_k - 1, using expm1 for float-only slots.
  Scalar factor_minus_one(std::size_t slot) const;
  double s_value(std::size_t slot) const { return s[slot].to_double(); }
  bool is_exact() const;
};

/// a(b, s) = b^2 (e^s + 1) / (2 (e^s - 1) s); +inf at s = 0.
double cusp_parameter_formula(double b, double s);
/// 1 / a(b, s) = 2 s tanh(s/2) / b^2; 0 at s = 0.
double inverse_cusp_parameter_formula(double b, double s);

/// The unipotent generators rho_0(gamma_k): identity plus b at (1, k),
/// b at (k, n+1) and b^2/2 at (1, n+1), k the 1-based coordinate.
std::vector<ProjMap> standard_cusp_generators(const RectangularCuspData& data);

/// diag(1, .., mu_k, .., 1) * rho_0(gamma_k).
std::vector<ProjMap> bent_cusp_generators(const RectangularCuspData& data);

/// The change of basis fixing e_1 that sends the new eigenvector of each
/// bent generator to its coordinate vector (and the dual eigen-covector to
/// the dual basis vector):
///
///     A = I - sum_k b_k/(mu_k - 1) E_{1,k} + sum_k b_k mu_k/(mu_k - 1) E_{k,n+1}
///
/// over bent slots k.
ProjMap normalizing_matrix(const RectangularCuspData& data);
/// As above for an explicit list of slots; throws DomainError if one of them
/// has a zero bending parameter.
ProjMap normalizing_matrix(const RectangularCuspData& data, const std::vector<std::size_t>& declared_bent);
/// Closed-form inverse I - N + N^2 of A = I + N (N^3 = 0).
ProjMap normalizing_matrix_inverse(const RectangularCuspData& data);

/// The expected normal form of A rho_S(gamma_k) A^-1: for a bent slot the
/// identity with mu_k at (k, k) and -b_k^2 (mu_k + 1) / (2 (mu_k - 1)) at
/// (1, n+1); for an unbent slot rho_0(gamma_k) itself.
ProjMap expected_normal_form(const RectangularCuspData& data, std::size_t slot);

struct ClassifiedCusp {
  CuspParameter psi = CuspParameter::zero(1);
  std::size_t type = 0;
  /// P * A where P permutes the bent coordinates into positions 2..t+1 in
  /// order of non-increasing a_k.
  ProjMap conjugator = ProjMap::identity(1);
  /// Exact 0 for exact data; otherwise the worst relative entry error of
  /// A g against g' A over the generators g with normal forms g'.
  Scalar residual;
  /// conjugator * rho_S(gamma_k) * conjugator^-1, in slot order. For float
  /// data this is the matched normal form itself (within `residual`).
  std::vector<ProjMap> generators;
  /// The (1, n+1) entry of each normalized generator, in slot order.
  std::vector<Scalar> corners;
  /// a_k per slot (+inf for unbent slots).
  std::vector<double> a;
  /// slot_order[j] = slot placed at coordinate j+2.
  std::vector<std::size_t> slot_order;
};

/// Normalizes the bent cusp group, checks every conjugated generator against
/// its normal form (exactly for exact data, to tol otherwise; PatternMismatch
/// on failure) and reads off psi.
ClassifiedCusp conjugate_and_match(const RectangularCuspData& data, double tol = kDefaultTolerance);

struct LeafInvarianceReport {
  std::size_t trials = 0;
  std::size_t failures = 0;
  double max_residual = 0.0;
  double tol = kDefaultTolerance;
  bool passed() const { return failures == 0; }
};

/// Samples points on random leaves of Omega(psi) and measures how far each
/// normalized generator moves them off their leaf. `noise` perturbs every
/// generator entry by uniform(-noise, noise) (negative control).
LeafInvarianceReport leaf_invariance_check(const RectangularCuspData& data, std::size_t trials, std::uint64_t seed,
                                           double tol = kDefaultTolerance, double noise = 0.0);

/// Is psi2 = r psi for some r > 0? Exact for exact parameters, otherwise
/// the max-normalized vectors are compared to tol (and the types must
/// agree).
bool equivalent_parameters(const CuspParameter& psi, const CuspParameter& psi2, double tol = kDefaultTolerance);
/// The ratio r when it exists.
std::optional<Scalar> scaling_ratio(const CuspParameter& psi, const CuspParameter& psi2,
                                    double tol = kDefaultTolerance);

enum class TriangularVerdict { triangularizable, not_triangularizable, ambiguous };

const char* to_string(TriangularVerdict v);

struct TriangularResult {
  TriangularVerdict verdict = TriangularVerdict::ambiguous;
  /// C with C g C^-1 upper triangular for every generator (orthogonal).
  std::optional<Eigen::MatrixXd> conjugator;
  double residual = 0.0;
  std::string diagnostic;
};

/// Greedy common-flag search: find a common eigenvector, pass to the
/// quotient, repeat. Float only.
TriangularResult upper_triangular_check(const std::vector<ProjMap>& gens, double tol = kDefaultTolerance);

struct DiagonalizationResult {
  bool diagonalizable = false;
  /// V^-1 (complex in general) with V^-1 g V diagonal for every generator.
  Eigen::MatrixXcd conjugator;
  double residual = 0.0;
  int attempts = 0;
  std::string diagnostic;
};

/// Simultaneous diagonalization of commuting generators through the
/// eigenbasis of a random linear combination, with explicit verification
/// and up to 10 retries. Throws DomainError for non-commuting input.
DiagonalizationResult diagonalizable_check(const std::vector<ProjMap>& gens, double tol = kDefaultTolerance,
                                           std::uint64_t seed = 0x5eed);

/// Reads psi off generators already in (a coordinate permutation of) the
/// H(psi) block form: log slots carry diagonal entries d != 1, translation
/// slots carry matching entries v at (1, k) and (k, n+1). psi is fitted by
/// least squares from sigma = 1/2 |v|^2 - sum psi_k log d_k. Throws
/// PatternMismatch when the generators are not of that form.
ClassifiedCusp classify_model_generators(const std::vector<ProjMap>& gens, double tol = kDefaultTolerance);

}  // namespace cuspbend

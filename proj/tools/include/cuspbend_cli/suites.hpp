#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cuspbend/bending.hpp"
#include "cuspbend/cusp_classify.hpp"

namespace cuspbend::cli {

struct SuiteOptions {
  std::size_t n = 3;
  double tol = kDefaultTolerance;
  std::uint64_t seed = 1;
  /// Uniform noise added to H(psi) generators in the leaf-invariance
  /// properties (negative control; 0 disables).
  double noise = 0.0;
  /// Also check the exact normal form for every n in 3..6.
  bool exhaustive_exact = false;
};

struct PropertyResult {
  std::string suite;
  std::string name;
  std::size_t trials = 0;
  double max_residual = 0.0;
  double tol = 0.0;
  bool passed = false;
  std::string detail;
};

/// projlin, cusp_models, hilbert, bending, cusp_classify
const std::vector<std::string>& suite_names();

/// Runs every property of the named suite ("all" runs everything). Throws
/// DomainError on an unknown name.
std::vector<PropertyResult> run_suites(const SuiteOptions& opts, const std::string& suite = "all");

/// The abelian rep of the rectangular cusp: generators g2..gn with all
/// commutators as relators.
MarkedRep cusp_rep(const RectangularCuspData& data);

/// One HNN move per bent slot: stable letter g_k, centralizer
/// diag(1, .., mu_k, .., 1).
std::vector<BendingMove> cusp_bending_moves(const RectangularCuspData& data);

/// A diagonalizable abelian group obtained by bending: base generators
/// diag(1, d, 1) with sum psi_j log d_j = 0, and the stable letter
/// zprime_element(lambda, k) * g where g in H(psi) has sigma > 0. psi has
/// type n-1.
struct ZprimeModel {
  MarkedRep original;
  MarkedRep bent;
};
ZprimeModel zprime_model(std::size_t n, double lambda, double k, std::uint64_t seed);

}  // namespace cuspbend::cli

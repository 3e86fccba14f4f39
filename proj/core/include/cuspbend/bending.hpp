#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cuspbend/projlin.hpp"

namespace cuspbend {

/// One letter of a group word: a generator name raised to +1 or -1.
struct Letter {
  std::string name;
  int exponent = 1;
};

using Word = std::vector<Letter>;

/// Parses "a" or "a^-1" (also "a^1").
Letter parse_letter(const std::string& token);
Word parse_word(const std::vector<std::string>& tokens);
std::string format_letter(const Letter& l);

/// A representation given on a finite generating set, with optional
/// relators that must evaluate to the identity.
class MarkedRep {
 public:
  /// Validates dimensions and, when relators are supplied, checks each one
  /// evaluates projectively to the identity (exactly for exact matrices,
  /// to `tol` otherwise). Throws DomainError on a failing relator.
  MarkedRep(std::size_t n, std::map<std::string, ProjMap> generators, std::vector<Word> relators = {},
            double tol = kDefaultTolerance);

  std::size_t dimension() const { return n_; }
  const std::map<std::string, ProjMap>& generators() const { return gens_; }
  const std::vector<Word>& relators() const { return relators_; }
  const ProjMap& generator(const std::string& name) const;

  /// Product of the letters, left to right. Throws DomainError on an
  /// unknown name.
  ProjMap evaluate(const Word& w) const;

  /// Largest proj_distance of a relator image from the identity.
  double relator_residual() const;

 private:
  std::size_t n_;
  std::map<std::string, ProjMap> gens_;
  std::vector<Word> relators_;
};

enum class DecompositionKind { amalgam, hnn };

/// How a generating set splits over an edge subgroup S.
///
/// amalgam: Gamma = Gamma_1 *_S Gamma_2 with the generators partitioned into
/// side1 and side2. hnn: Gamma = *_g(Gamma') with base generators and a
/// stable letter. In both cases `edge_words` lists words for S, used only for
/// the centralizing check.
struct Decomposition {
  DecompositionKind kind = DecompositionKind::amalgam;
  std::vector<std::string> side1;
  std::vector<std::string> side2;
  std::vector<std::string> base;
  std::string stable;
  std::vector<Word> edge_words;

  static Decomposition amalgam(std::vector<std::string> side1, std::vector<std::string> side2,
                               std::vector<Word> edge_words = {});
  static Decomposition hnn(std::vector<std::string> base, std::string stable, std::vector<Word> edge_words = {});
};

/// A decomposition plus one element of the centralizer of rho(S).
struct BendingMove {
  Decomposition decomposition;
  ProjMap centralizer;
};

/// Checks that the decomposition partitions the rep's generators exactly.
void validate_decomposition(const Decomposition& d, const MarkedRep& rep);

bool centralizes_check(const ProjMap& c, const std::vector<Word>& subgroup_words, const MarkedRep& rep,
                       double tol = kDefaultTolerance);

bool commute_check(const ProjMap& c, const ProjMap& d, double tol = kDefaultTolerance);

/// amalgam: side2 generators are conjugated by c. hnn: the stable letter is
/// left-multiplied by c. Throws DomainError if c does not centralize the
/// edge words or the decomposition does not match the generators.
MarkedRep bend(const MarkedRep& rep, const BendingMove& move, double tol = kDefaultTolerance);

struct IteratedBendOptions {
  double tol = kDefaultTolerance;
  /// Re-run the moves in a random order and require a projectively equal
  /// result.
  bool verify_order = false;
  std::uint64_t seed = 0;
};

/// Applies every move in sequence after checking that each centralizer
/// centralizes its edge words in the original rep and that all centralizers
/// pairwise commute. Throws DomainError when either hypothesis fails.
MarkedRep iterated_bend(const MarkedRep& rep, const std::vector<BendingMove>& moves,
                        const IteratedBendOptions& opts = {});

/// Max proj_distance between corresponding generators; throws on a name
/// mismatch.
double rep_distance(const MarkedRep& a, const MarkedRep& b);

}  // namespace cuspbend

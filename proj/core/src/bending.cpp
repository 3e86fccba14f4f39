#include "cuspbend/bending.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace cuspbend {

namespace {

bool is_identity(const ProjMap& m, double tol) { return proj_equiv(ProjMap::identity(m.dimension()), m, tol); }

}  // namespace

Letter parse_letter(const std::string& token) {
  auto caret = token.find('^');
  if (caret == std::string::npos) {
    if (token.empty()) throw DomainError("parse_letter: empty generator name");
    return {token, 1};
  }
  std::string name = token.substr(0, caret);
  std::string exp = token.substr(caret + 1);
  if (name.empty()) throw DomainError("parse_letter: empty generator name in '" + token + "'");
  if (exp == "-1") return {name, -1};
  if (exp == "1" || exp == "+1") return {name, 1};
  throw DomainError("parse_letter: exponent must be +1 or -1 in '" + token + "'");
}

Word parse_word(const std::vector<std::string>& tokens) {
  Word w;
  w.reserve(tokens.size());
  for (const auto& t : tokens) w.push_back(parse_letter(t));
  return w;
}

std::string format_letter(const Letter& l) { return l.exponent == 1 ? l.name : l.name + "^-1"; }

MarkedRep::MarkedRep(std::size_t n, std::map<std::string, ProjMap> generators, std::vector<Word> relators,
                     double tol)
    : n_(n), gens_(std::move(generators)), relators_(std::move(relators)) {
  for (const auto& [name, g] : gens_)
    if (g.dimension() != n_) throw DimensionError("MarkedRep: generator '" + name + "' has wrong dimension");
  for (const auto& w : relators_) {
    ProjMap img = evaluate(w);
    if (!is_identity(img, tol)) {
      std::string text;
      for (const auto& l : w) text += (text.empty() ? "" : " ") + format_letter(l);
      throw DomainError("MarkedRep: relator [" + text + "] does not evaluate to the identity");
    }
  }
}

const ProjMap& MarkedRep::generator(const std::string& name) const {
  auto it = gens_.find(name);
  if (it == gens_.end()) throw DomainError("MarkedRep: unknown generator '" + name + "'");
  return it->second;
}

ProjMap MarkedRep::evaluate(const Word& w) const {
  ProjMap out = ProjMap::identity(n_);
  for (const auto& letter : w) {
    const ProjMap& g = generator(letter.name);
    out = compose(out, letter.exponent == 1 ? g : inverse(g));
  }
  return out;
}

double MarkedRep::relator_residual() const {
  double worst = 0.0;
  const ProjMap id = ProjMap::identity(n_);
  for (const auto& w : relators_) worst = std::max(worst, proj_distance(id, evaluate(w)));
  return worst;
}

Decomposition Decomposition::amalgam(std::vector<std::string> side1, std::vector<std::string> side2,
                                     std::vector<Word> edge_words) {
  Decomposition d;
  d.kind = DecompositionKind::amalgam;
  d.side1 = std::move(side1);
  d.side2 = std::move(side2);
  d.edge_words = std::move(edge_words);
  return d;
}

Decomposition Decomposition::hnn(std::vector<std::string> base, std::string stable, std::vector<Word> edge_words) {
  Decomposition d;
  d.kind = DecompositionKind::hnn;
  d.base = std::move(base);
  d.stable = std::move(stable);
  d.edge_words = std::move(edge_words);
  return d;
}

void validate_decomposition(const Decomposition& d, const MarkedRep& rep) {
  std::vector<std::string> names;
  if (d.kind == DecompositionKind::amalgam) {
    names = d.side1;
    names.insert(names.end(), d.side2.begin(), d.side2.end());
  } else {
    if (d.stable.empty()) throw DomainError("decomposition: HNN extension needs a stable letter");
    names = d.base;
    names.push_back(d.stable);
  }
  std::set<std::string> seen;
  for (const auto& name : names) {
    if (!rep.generators().contains(name)) throw DomainError("decomposition: unknown generator '" + name + "'");
    if (!seen.insert(name).second) throw DomainError("decomposition: generator '" + name + "' listed twice");
  }
  if (seen.size() != rep.generators().size())
    throw DomainError("decomposition: partition does not cover every generator");
}

bool centralizes_check(const ProjMap& c, const std::vector<Word>& subgroup_words, const MarkedRep& rep, double tol) {
  if (c.dimension() != rep.dimension()) throw DimensionError("centralizes_check: dimension mismatch");
  return std::all_of(subgroup_words.begin(), subgroup_words.end(),
                     [&](const Word& w) { return commutes(c, rep.evaluate(w), tol); });
}

bool commute_check(const ProjMap& c, const ProjMap& d, double tol) {
  if (c.dimension() != d.dimension()) throw DimensionError("commute_check: dimension mismatch");
  return commutes(c, d, tol);
}

namespace {

MarkedRep apply_move(const MarkedRep& rep, const BendingMove& move, double tol) {
  const ProjMap& c = move.centralizer;
  std::map<std::string, ProjMap> gens = rep.generators();
  const Decomposition& d = move.decomposition;
  if (d.kind == DecompositionKind::amalgam) {
    const ProjMap cinv = inverse(c);
    for (const auto& name : d.side2) {
      auto it = gens.find(name);
      it->second = compose(compose(c, it->second), cinv);
    }
  } else {
    auto it = gens.find(d.stable);
    it->second = compose(c, it->second);
  }
  // Relators are re-verified on construction.
  return MarkedRep(rep.dimension(), std::move(gens), rep.relators(), tol);
}

void check_move(const MarkedRep& rep, const BendingMove& move, double tol) {
  validate_decomposition(move.decomposition, rep);
  if (move.centralizer.dimension() != rep.dimension()) throw DimensionError("bend: centralizer dimension mismatch");
  if (!centralizes_check(move.centralizer, move.decomposition.edge_words, rep, tol))
    throw DomainError("bend: the bending element does not centralize the edge subgroup");
}

}  // namespace

MarkedRep bend(const MarkedRep& rep, const BendingMove& move, double tol) {
  check_move(rep, move, tol);
  return apply_move(rep, move, tol);
}

MarkedRep iterated_bend(const MarkedRep& rep, const std::vector<BendingMove>& moves, const IteratedBendOptions& opts) {
  for (const auto& m : moves) check_move(rep, m, opts.tol);
  for (std::size_t i = 0; i < moves.size(); ++i)
    for (std::size_t j = i + 1; j < moves.size(); ++j)
      if (!commute_check(moves[i].centralizer, moves[j].centralizer, opts.tol))
        throw DomainError("iterated_bend: centralizers of moves " + std::to_string(i) + " and " + std::to_string(j) +
                          " do not commute, so the bendings need not commute");

  MarkedRep out = rep;
  for (const auto& m : moves) out = apply_move(out, m, opts.tol);

  if (opts.verify_order && moves.size() > 1) {
    std::vector<std::size_t> order(moves.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(opts.seed);
    std::shuffle(order.begin(), order.end(), rng);
    MarkedRep alt = rep;
    for (std::size_t k : order) alt = apply_move(alt, moves[k], opts.tol);
    for (const auto& [name, g] : out.generators())
      if (!proj_equiv(g, alt.generator(name), opts.tol))
        throw Error("iterated_bend: result depends on the order of the moves (generator '" + name + "')");
  }
  return out;
}

double rep_distance(const MarkedRep& a, const MarkedRep& b) {
  if (a.generators().size() != b.generators().size()) throw DomainError("rep_distance: generator sets differ");
  double worst = 0.0;
  for (const auto& [name, g] : a.generators()) worst = std::max(worst, proj_distance(g, b.generator(name)));
  return worst;
}

}  // namespace cuspbend

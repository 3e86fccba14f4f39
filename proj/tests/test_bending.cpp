#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cuspbend/bending.hpp"
#include "cuspbend/cusp_classify.hpp"

using namespace cuspbend;

namespace {

Matrix unipotent(std::size_t n, std::size_t k, const Scalar& b) {
  Matrix m = Matrix::identity(n + 1);
  m(0, k - 1) = b;
  m(k - 1, n) = b;
  m(0, n) = b * b / Scalar(2);
  return m;
}

Word commutator(const std::string& a, const std::string& b) { return {{a, 1}, {b, 1}, {a, -1}, {b, -1}}; }

// The n = 3 rectangular cusp group on generators g2, g3.
MarkedRep cusp3(const Scalar& b2, const Scalar& b3) {
  return MarkedRep(3, {{"g2", ProjMap(unipotent(3, 2, b2))}, {"g3", ProjMap(unipotent(3, 3, b3))}},
                   {commutator("g2", "g3")});
}

// A free group on three generators with a small exact random image.
MarkedRep free_rep(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> ent(-3, 3);
  std::map<std::string, ProjMap> gens;
  for (const char* name : {"a", "b", "c"}) {
    Matrix m(3, 3);
    do {
      m = Scalar(4) * Matrix::identity(3);
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) m(r, c) += Scalar(ent(rng));
    } while (determinant(m).is_exact_zero());
    gens.emplace(name, ProjMap(m));
  }
  return MarkedRep(2, std::move(gens));
}

}  // namespace

TEST(Words, ParseAndFormat) {
  const Letter l = parse_letter("g2^-1");
  EXPECT_EQ(l.name, "g2");
  EXPECT_EQ(l.exponent, -1);
  EXPECT_EQ(parse_letter("a^1").exponent, 1);
  EXPECT_EQ(format_letter(l), "g2^-1");
  EXPECT_EQ(format_letter(parse_letter("x")), "x");
  EXPECT_THROW(parse_letter("a^2"), Error);
  EXPECT_THROW(parse_letter(""), Error);
}

TEST(MarkedRep, RejectsFailingRelator) {
  const ProjMap a(Matrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
  const ProjMap b(Matrix{{1, 0, 0}, {1, 1, 0}, {0, 0, 1}});
  EXPECT_THROW(MarkedRep(2, {{"a", a}, {"b", b}}, {commutator("a", "b")}), DomainError);
  EXPECT_NO_THROW(MarkedRep(2, {{"a", a}, {"b", b}}));
}

TEST(MarkedRep, EvaluateUnknownNameThrows) {
  const MarkedRep rep = cusp3(Scalar(1), Scalar(1));
  EXPECT_THROW(rep.evaluate({{"zz", 1}}), DomainError);
  EXPECT_TRUE(proj_equiv(rep.evaluate({{"g2", 1}, {"g2", -1}}), ProjMap::identity(3), 0.0));
}

TEST(Centralizes, Examples) {
  const MarkedRep rep = cusp3(Scalar(1), Scalar(2));
  EXPECT_TRUE(centralizes_check(ProjMap::identity(3), {{{"g2", 1}}, {{"g3", 1}}}, rep));
  // diag(1, e^t, 1, 1) commutes with the generators that fix coordinate 2.
  const ProjMap c = hyperplane_centralizer_element(2, Scalar(0.7), 3);
  EXPECT_TRUE(centralizes_check(c, {{{"g3", 1}}}, rep));
  EXPECT_FALSE(centralizes_check(c, {{{"g2", 1}}}, rep));
  EXPECT_THROW(centralizes_check(c, {{{"nope", 1}}}, rep), DomainError);
}

TEST(Centralizes, DiagonalAgainstGenericParabolic) {
  const ProjMap c(Matrix::diagonal(std::vector<Scalar>{Scalar(1), Scalar(std::exp(1.0)), Scalar(1)}));
  const MarkedRep rep(2, {{"p", ProjMap(Matrix{{1, 1, Scalar::exact(1, 2)}, {0, 1, 1}, {0, 0, 1}})}});
  EXPECT_FALSE(centralizes_check(c, {{{"p", 1}}}, rep));
}

TEST(Commute, Examples) {
  const ProjMap c(Matrix{{1, 2, 0}, {0, 1, 3}, {1, 0, 1}});
  EXPECT_TRUE(commute_check(c, ProjMap::identity(2)));
  EXPECT_TRUE(commute_check(ProjMap(Matrix::diagonal(std::vector<Scalar>{Scalar(1), Scalar(2), Scalar(5)})),
                            ProjMap(Matrix::diagonal(std::vector<Scalar>{Scalar(3), Scalar(1), Scalar(1)}))));
  EXPECT_FALSE(commute_check(ProjMap(Matrix::diagonal(std::vector<Scalar>{Scalar(1), Scalar(2), Scalar(1)})),
                             ProjMap(Matrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}})));
  EXPECT_THROW(commute_check(ProjMap::identity(2), ProjMap::identity(3)), DimensionError);
}

TEST(Bend, IdentityLeavesRepUnchanged) {
  std::mt19937_64 rng(31);
  const MarkedRep rep = free_rep(rng);
  const BendingMove am{Decomposition::amalgam({"a"}, {"b", "c"}), ProjMap::identity(2)};
  const BendingMove hn{Decomposition::hnn({"a", "b"}, "c"), ProjMap::identity(2)};
  for (const auto& move : {am, hn}) {
    const MarkedRep out = bend(rep, move);
    for (const auto& [name, g] : rep.generators())
      EXPECT_TRUE(entrywise_equal(out.generator(name).matrix(), g.matrix(), 0.0)) << name;
  }
}

TEST(Bend, AmalgamConjugatesSideTwo) {
  std::mt19937_64 rng(32);
  const MarkedRep rep = free_rep(rng);
  const ProjMap c(Matrix{{2, 1, 0}, {0, 1, 0}, {0, 0, 1}});
  const MarkedRep out = bend(rep, {Decomposition::amalgam({"a"}, {"b", "c"}), c});
  EXPECT_TRUE(entrywise_equal(out.generator("a").matrix(), rep.generator("a").matrix(), 0.0));
  for (const char* name : {"b", "c"}) {
    const ProjMap expected = compose(compose(c, rep.generator(name)), inverse(c));
    EXPECT_TRUE(proj_equiv(out.generator(name), expected, 0.0)) << name;
  }
}

TEST(Bend, HnnMultipliesStableLetter) {
  std::mt19937_64 rng(33);
  const MarkedRep rep = free_rep(rng);
  const ProjMap c(Matrix::diagonal(std::vector<Scalar>{Scalar(1), Scalar(3), Scalar(1)}));
  const MarkedRep out = bend(rep, {Decomposition::hnn({"a", "b"}, "c"), c});
  EXPECT_TRUE(proj_equiv(out.generator("c"), compose(c, rep.generator("c")), 0.0));
  EXPECT_TRUE(entrywise_equal(out.generator("b").matrix(), rep.generator("b").matrix(), 0.0));
}

TEST(Bend, Errors) {
  const MarkedRep rep = cusp3(Scalar(1), Scalar(1));
  const ProjMap c = hyperplane_centralizer_element(2, Scalar(0.5), 3);
  // c does not commute with g2.
  EXPECT_THROW(bend(rep, {Decomposition::hnn({"g2"}, "g3", {{{"g2", 1}}}), c}), DomainError);
  // Partition does not cover the generators.
  EXPECT_THROW(bend(rep, {Decomposition::hnn({}, "g3"), c}), DomainError);
  EXPECT_THROW(bend(rep, {Decomposition::amalgam({"g2"}, {"g2", "g3"}), c}), DomainError);
  EXPECT_THROW(bend(rep, {Decomposition::hnn({"g2"}, "g3"), ProjMap::identity(2)}), DimensionError);
}

TEST(Bend, CuspSlotMatchesBentGenerator) {
  const RectangularCuspData data = RectangularCuspData::from_mu({Scalar(1), Scalar(2)}, {Scalar(3), Scalar(1)});
  const MarkedRep rep = cusp3(Scalar(1), Scalar(2));
  const ProjMap c = hyperplane_centralizer(2, Scalar(3), 3);
  const MarkedRep out = bend(rep, {Decomposition::hnn({"g3"}, "g2", {{{"g3", 1}}}), c});
  const auto expected = bent_cusp_generators(data);
  EXPECT_TRUE(proj_equiv(out.generator("g2"), expected[0], 0.0));
  EXPECT_TRUE(proj_equiv(out.generator("g3"), expected[1], 0.0));
  EXPECT_EQ(out.relator_residual(), 0.0);
}

TEST(IteratedBend, EmptyIsIdentity) {
  const MarkedRep rep = cusp3(Scalar(1), Scalar(1));
  const MarkedRep out = iterated_bend(rep, {});
  EXPECT_EQ(rep_distance(rep, out), 0.0);
}

TEST(IteratedBend, ReproducesBentCuspExactly) {
  for (std::size_t n = 3; n <= 6; ++n) {
    std::vector<Scalar> b, mu;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      b.push_back(Scalar::exact(static_cast<long>(k + 1), 2));
      mu.push_back(k % 2 == 0 ? Scalar::exact(static_cast<long>(k + 3), 2) : Scalar(1));
    }
    const RectangularCuspData data = RectangularCuspData::from_mu(b, mu);
    std::map<std::string, ProjMap> gens;
    std::vector<Word> relators;
    for (std::size_t k = 0; k + 1 < n; ++k) gens.emplace("g" + std::to_string(k + 2), ProjMap(unipotent(n, k + 2, b[k])));
    for (std::size_t i = 2; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) relators.push_back(commutator("g" + std::to_string(i), "g" + std::to_string(j)));
    const MarkedRep rep(n, gens, relators);

    std::vector<BendingMove> moves;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      std::vector<std::string> base;
      std::vector<Word> edges;
      for (std::size_t j = 0; j + 1 < n; ++j)
        if (j != k) {
          base.push_back("g" + std::to_string(j + 2));
          edges.push_back({{base.back(), 1}});
        }
      moves.push_back({Decomposition::hnn(base, "g" + std::to_string(k + 2), edges), hyperplane_centralizer(k + 2, mu[k], n)});
    }
    const MarkedRep out = iterated_bend(rep, moves, {.verify_order = true, .seed = 5});
    const auto expected = bent_cusp_generators(data);
    for (std::size_t k = 0; k + 1 < n; ++k)
      EXPECT_TRUE(proj_equiv(out.generator("g" + std::to_string(k + 2)), expected[k], 0.0)) << n << " " << k;
    EXPECT_EQ(out.relator_residual(), 0.0);
  }
}

TEST(IteratedBend, OrderIndependence) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const MarkedRep rep = cusp3(Scalar(1.5), Scalar(0.5));
  for (int trial = 0; trial < 50; ++trial) {
    const BendingMove m1{Decomposition::hnn({"g3"}, "g2", {{{"g3", 1}}}),
                         hyperplane_centralizer_element(2, Scalar(u(rng)), 3)};
    const BendingMove m2{Decomposition::hnn({"g2"}, "g3", {{{"g2", 1}}}),
                         hyperplane_centralizer_element(3, Scalar(u(rng)), 3)};
    EXPECT_LE(rep_distance(iterated_bend(rep, {m1, m2}), iterated_bend(rep, {m2, m1})), 1e-12);
    EXPECT_LE(rep_distance(bend(bend(rep, m1), m2), bend(bend(rep, m2), m1)), 1e-12);
  }
}

TEST(IteratedBend, RefusesNonCommutingCentralizers) {
  std::mt19937_64 rng(35);
  const MarkedRep rep = free_rep(rng);
  const BendingMove m1{Decomposition::amalgam({"a"}, {"b", "c"}), ProjMap(Matrix{{2, 1, 0}, {0, 1, 0}, {0, 0, 1}})};
  const BendingMove m2{Decomposition::amalgam({"a", "b"}, {"c"}), ProjMap(Matrix{{1, 0, 0}, {1, 1, 0}, {0, 0, 1}})};
  EXPECT_THROW(iterated_bend(rep, {m1, m2}), DomainError);
}

TEST(IteratedBend, RelatorsSurvive) {
  std::mt19937_64 rng(36);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 30; ++trial) {
    const MarkedRep rep = cusp3(Scalar(0.5 + std::abs(u(rng))), Scalar(0.5 + std::abs(u(rng))));
    const BendingMove m1{Decomposition::hnn({"g3"}, "g2", {{{"g3", 1}}}),
                         hyperplane_centralizer_element(2, Scalar(u(rng)), 3)};
    const BendingMove m2{Decomposition::hnn({"g2"}, "g3", {{{"g2", 1}}}),
                         hyperplane_centralizer_element(3, Scalar(u(rng)), 3)};
    EXPECT_LE(iterated_bend(rep, {m1, m2}).relator_residual(), 1e-9);
  }
}

TEST(Bend, CompositionInParameterIsExact) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const MarkedRep rep = free_rep(rng);
    const Decomposition d = Decomposition::amalgam({"a"}, {"b", "c"});
    const ProjMap c(Matrix{{2, 1, 0}, {0, 1, 0}, {0, 0, 1}});
    const ProjMap c2(Matrix{{1, 0, 3}, {0, 3, 0}, {0, 0, 1}});
    const MarkedRep twice = bend(bend(rep, {d, c}), {d, c2});
    const MarkedRep once = bend(rep, {d, compose(c2, c)});
    for (const auto& [name, g] : once.generators())
      EXPECT_TRUE(proj_equiv(twice.generator(name), g, 0.0)) << name;
  }
}

TEST(RepDistance, NameMismatchThrows) {
  const MarkedRep a = cusp3(Scalar(1), Scalar(1));
  const MarkedRep b(3, {{"x", ProjMap::identity(3)}});
  EXPECT_THROW(rep_distance(a, b), Error);
}

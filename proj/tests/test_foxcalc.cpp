#include <gtest/gtest.h>

#include <random>

#include "planarep/errors.hpp"
#include "planarep/foxcalc.hpp"
#include "support/oracles.hpp"

using namespace planarep;

TEST(Fox, MatchesTermwiseExpansion) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 400; ++i) {
    const Word w = oracle::random_word(rng, 4, 12);
    for (int g = 0; g < 4; ++g) EXPECT_EQ(fox_derivative(w, g), oracle::fox_expand(w, g));
  }
}

TEST(Fox, FundamentalFormula) {
  // sum_s dw/ds (s - 1) = w - 1
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const Word w = oracle::random_word(rng, 3, 10);
    GroupRingElt acc;
    for (int g = 0; g < 3; ++g) {
      acc += fox_derivative(w, g) * (GroupRingElt::of(Word::generator(g)) - GroupRingElt::one());
    }
    EXPECT_EQ(acc, GroupRingElt::of(w) - GroupRingElt::one());
  }
}

TEST(Fox, GenusOneDisplay) {
  const PlanarPresentation p(1, {3});
  const Word x = Word::generator(0), y = Word::generator(1);
  const Word xy = commutator(x, y);
  EXPECT_EQ(fox_derivative(p.relator(), 0), GroupRingElt::one() - GroupRingElt::of(x * y * x.inverse()));
  EXPECT_EQ(fox_derivative(p.relator(), 1), GroupRingElt::of(x) - GroupRingElt::of(xy));
  EXPECT_EQ(fox_derivative(p.relator(), 2), GroupRingElt::of(xy));
  EXPECT_EQ(format_group_ring(fox_derivative(p.relator(), 0), p.generator_names()), "e - x y x^-1");
}

TEST(Bar, BoundarySquaredIsZero) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    for (int k = 2; k <= 4; ++k) {
      std::vector<Word> cell;
      for (int a = 0; a < k; ++a) cell.push_back(oracle::random_word(rng, 3, 4));
      const BarChain c = bar_cell(cell);
      EXPECT_TRUE(c.boundary().boundary().is_zero());
      EXPECT_EQ(oracle::cells_of(c.boundary()), oracle::bar_boundary(oracle::cells_of(c)));
    }
  }
}

TEST(Bar, TwoCellConvention) {
  const Word g = Word::generator(0), h = Word::generator(1);
  BarChain expected(1);
  expected.add({h}, 1);
  expected.add({g * h}, -1);
  expected.add({g}, 1);
  EXPECT_EQ(bar_cell({g, h}).boundary(), expected);
}

TEST(FundamentalCycle, TriangleGroup) {
  const auto fc = fundamental_cycle(PlanarPresentation(0, {2, 3, 7}));
  EXPECT_EQ(fc.m, 42);
  EXPECT_EQ(fc.b, (std::vector<Rational>{42, -21, -14, -6}));
  EXPECT_EQ(fc.kappa[3], Rational(-1, 7));
}

TEST(FundamentalCycle, AbelianizedRowsAndCycle) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    const auto p = oracle::random_presentation(rng);
    const auto rows = abelianized_boundary(p);
    const auto rels = p.relators();
    for (std::size_t r = 0; r < rels.size(); ++r) {
      for (int g = 0; g < p.generator_count(); ++g) EXPECT_EQ(rows[r][g], Rational(signed_count(rels[r], g)));
    }
    const auto fc = fundamental_cycle(p);
    for (int g = 0; g < p.generator_count(); ++g) {
      Rational s = 0;
      for (std::size_t r = 0; r < rels.size(); ++r) s += fc.b[r] * rows[r][g];
      EXPECT_EQ(s.numerator(), 0);
    }
  }
}

TEST(Filling, BoundaryIdentityExact) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 50; ++i) {
    const auto p = oracle::random_presentation(rng);
    const BarChain c = relator_filling_chain(p);
    oracle::Cells expected;
    oracle::accumulate(expected, {p.relator()}, Rational(1));
    for (int j = 0; j < p.torsion_count(); ++j) {
      oracle::accumulate(expected, {p.torsion_relator(j)}, Rational(-1, p.torsion()[j]));
    }
    EXPECT_EQ(oracle::bar_boundary(oracle::cells_of(c)), expected) << render(p);
    const PiChain pc = push_to_pi(c, p);
    std::size_t nonempty = 0;
    for (const auto& r : p.relators()) nonempty += !r.empty();
    EXPECT_EQ(pc.boundary_support.size(), nonempty);
  }
}

TEST(Filling, TelescopingWord) {
  const Word w({1, 2, 1, -3});
  oracle::Cells expected;
  for (auto l : w.letters()) oracle::accumulate(expected, {Word({l})}, Rational(1));
  oracle::accumulate(expected, {w}, Rational(-1));
  EXPECT_EQ(oracle::bar_boundary(oracle::cells_of(fill_word(w))), expected);
}

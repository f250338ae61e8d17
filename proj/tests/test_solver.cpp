#include <gtest/gtest.h>

#include <cstdlib>
#include <numbers>
#include <random>

#include "planarep/errors.hpp"
#include "planarep/solver.hpp"
#include "support/oracles.hpp"

using namespace planarep;

namespace {

SolveSpec triangle(int m1, int k1, int m2, int k2, int m3, int k3, bool minus) {
  SolveSpec s;
  s.presentation = PlanarPresentation(0, {m1, m2, m3});
  s.classes = {su2_class(m1, k1), su2_class(m2, k2), su2_class(m3, k3)};
  if (minus) s.target = -s.model.identity();
  return s;
}

}  // namespace

TEST(Oracle, Examples) {
  const double h = std::numbers::pi / 2;
  EXPECT_TRUE(su2_triangle_oracle(0, 0, 0, false));
  EXPECT_TRUE(su2_triangle_oracle(h, h, h, false));
  EXPECT_FALSE(su2_triangle_oracle(0, 0, h, false));
  EXPECT_TRUE(su2_triangle_oracle(h, h, 0, true));
  EXPECT_FALSE(su2_triangle_oracle(0, 0, 0, true));
}

TEST(Oracle, AgreesWithBruteForce) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ang(0, std::numbers::pi);
  for (int i = 0; i < 20000; ++i) {
    const double a = ang(rng), b = ang(rng), c = ang(rng);
    const bool minus = rng() % 2;
    EXPECT_EQ(su2_triangle_oracle(a, b, c, minus), oracle::su2_brute_force_residual(a, b, c, minus) < 1e-8);
  }
}

TEST(Solver, TrivialAbelian) {
  SolveSpec s;
  s.presentation = PlanarPresentation(1, {});
  s.model = LieModel::u(1);
  const auto r = solve_relator(s);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.iterations, 0);
}

TEST(Solver, TriangleExample) {
  const auto r = solve_relator(triangle(4, 1, 4, 1, 4, 1, false));
  ASSERT_TRUE(r.found);
  EXPECT_LT(r.residual, 1e-10);
  EXPECT_LT((r.point->relator_value() - LieModel::su2().identity()).norm(), 1e-10);
  for (int j = 0; j < 3; ++j) EXPECT_TRUE(r.point->is_torsion_point(1e-12));
}

TEST(Solver, TwistedTargets) {
  const auto su2 = LieModel::su2();
  auto s = triangle(4, 1, 4, 1, 4, 0, true);
  auto r = solve_relator(s);
  ASSERT_TRUE(r.found);
  EXPECT_LT((r.point->relator_value() + su2.identity()).norm(), 1e-10);
  SolveSpec g;
  g.presentation = PlanarPresentation(1, {});
  g.target = -su2.identity();
  r = solve_relator(g);
  ASSERT_TRUE(r.found);
}

TEST(Solver, InfeasibleSpecs) {
  EXPECT_THROW(solve_relator(triangle(2, 1, 3, 1, 7, 1, false)), InfeasibleSpec);
  auto s = triangle(4, 1, 4, 1, 4, 1, false);
  s.classes[0] = su2_class(3, 1);  // not of order dividing 4
  EXPECT_THROW(solve_relator(s), InfeasibleSpec);
  s = triangle(4, 1, 4, 1, 4, 1, false);
  s.classes.pop_back();
  EXPECT_THROW(solve_relator(s), ArityMismatch);
  SolveSpec u;
  u.presentation = PlanarPresentation(1, {3});
  u.model = LieModel::u(2);
  u.classes = {make_class(u.model, 3, {0, 1})};
  EXPECT_THROW(solve_relator(u), InfeasibleSpec);  // det obstruction
  SolveSpec nc;
  nc.presentation = PlanarPresentation(1, {});
  std::mt19937_64 rng(2);
  nc.target = nc.model.random_element(rng);
  EXPECT_THROW(solve_relator(nc), InfeasibleSpec);
}

TEST(Solver, DeterministicAcrossThreadCounts) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    SolveSpec s = oracle::random_spec(rng, LieModel::su2(), 2, 3, 6);
    ::setenv("PLANAREP_THREADS", "1", 1);
    const auto a = solve_relator(s);
    ::setenv("PLANAREP_THREADS", "4", 1);
    const auto b = solve_relator(s);
    ::unsetenv("PLANAREP_THREADS");
    ASSERT_EQ(a.found, b.found);
    EXPECT_EQ(a.restart, b.restart);
    if (a.found) {
      for (int g = 0; g < s.presentation.generator_count(); ++g) {
        EXPECT_EQ(a.point->generator(g), b.point->generator(g));
      }
    }
  }
}

TEST(Solver, MatchesOracleWithoutConsultingIt) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const int m1 = 2 + rng() % 9, m2 = 2 + rng() % 9, m3 = 2 + rng() % 9;
    auto s = triangle(m1, rng() % (m1 / 2 + 1), m2, rng() % (m2 / 2 + 1), m3, rng() % (m3 / 2 + 1), rng() % 2);
    s.use_oracle = false;
    s.seed = i;
    const bool expected = su2_triangle_oracle(s.classes[0].su2_angle(), s.classes[1].su2_angle(),
                                              s.classes[2].su2_angle(), s.target.size() && s.target(0, 0).real() < 0);
    EXPECT_EQ(solve_relator(s).found, expected);
  }
}

TEST(Solver, GenericIrreducibilityGenusTwo) {
  SolveSpec s;
  s.presentation = PlanarPresentation(2, {});
  const auto fiber = sample_fiber(s, 40);
  ASSERT_GE(fiber.size(), 36u);
  int irreducible = 0;
  for (const auto& f : fiber) irreducible += f.cohomology.h0 == 0;
  EXPECT_GE(irreducible, static_cast<int>(0.9 * fiber.size()));
}

TEST(Solver, SpecJsonRoundTrip) {
  auto s = triangle(4, 1, 5, 2, 6, 3, true);
  s.seed = 99;
  const SolveSpec back = SolveSpec::from_json(s.to_json());
  EXPECT_EQ(back.presentation, s.presentation);
  EXPECT_EQ(back.classes, s.classes);
  EXPECT_EQ(back.target, s.target);
  EXPECT_EQ(back.seed, 99u);
}

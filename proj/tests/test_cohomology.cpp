#include <gtest/gtest.h>

#include <random>

#include "planarep/cohomology.hpp"
#include "planarep/errors.hpp"
#include "planarep/solver.hpp"
#include "support/oracles.hpp"

using namespace planarep;

namespace {

RepPoint trivial_point(const PlanarPresentation& p, const LieModel& m) {
  return RepPoint(p, m, std::vector<GroupMat>(p.generator_count(), m.identity()));
}

RepPoint solved(SolveSpec s) {
  const auto r = solve_relator(s);
  if (!r.found) throw std::runtime_error("solver failed in test setup");
  return *r.point;
}

}  // namespace

TEST(Cocycle, RelatorRowMatchesFiniteDifference) {
  // d/dt r(exp(t u) phi) r(phi)^-1 at t = 0
  std::mt19937_64 rng(1);
  const double h = 1e-6;
  for (const auto& m : {LieModel::su2(), LieModel::u(2), LieModel::sl2r()}) {
    for (int i = 0; i < 10; ++i) {
      const auto p = oracle::random_presentation(rng, 2, 2, 5);
      std::vector<GroupMat> gens;
      for (int g = 0; g < p.generator_count(); ++g) gens.push_back(m.exp(m.random_algebra(rng, 0.5)));
      const RepPoint pt(p, m, gens);
      Eigen::VectorXd u(pt.cochain_dim());
      for (auto& c : u) c = std::normal_distribution<double>()(rng);
      auto moved = [&](double t) {
        std::vector<GroupMat> g2;
        for (int g = 0; g < p.generator_count(); ++g) g2.push_back(m.exp(t * u.segment(g * m.dim(), m.dim())) * gens[g]);
        return RepPoint(p, m, g2).relator_value();
      };
      const GroupMat fd = (moved(h) - moved(-h)) / (2 * h) * m.inverse(pt.relator_value());
      EXPECT_LT((m.coords(fd) - delta1_relator_row(pt) * u).norm(), 1e-7) << m.name();
    }
  }
}

TEST(Cocycle, ExtensionRule) {
  std::mt19937_64 rng(2);
  const auto m = LieModel::su2();
  const PlanarPresentation p(2, {3});
  std::vector<GroupMat> gens;
  for (int g = 0; g < p.generator_count(); ++g) gens.push_back(m.random_element(rng));
  const RepPoint pt(p, m, gens);
  Eigen::VectorXd u = Eigen::VectorXd::Random(pt.cochain_dim());
  for (int i = 0; i < 50; ++i) {
    const Word a = oracle::random_word(rng, p.generator_count(), 6), b = oracle::random_word(rng, p.generator_count(), 6);
    const AlgVec lhs = cocycle_extend(pt, u, a * b);
    const AlgVec rhs = cocycle_extend(pt, u, a) + pt.Ad(a) * cocycle_extend(pt, u, b);
    EXPECT_LT((lhs - rhs).norm(), 1e-11);
  }
}

TEST(Complex, DeltaSquaredVanishesAtCentralPoints) {
  std::mt19937_64 rng(3);
  for (const auto& m : {LieModel::su2(), LieModel::u(2)}) {
    for (int i = 0; i < 10; ++i) {
      auto s = oracle::random_spec(rng, m, 2, 3, 6);
      const auto r = solve_relator(s);
      if (!r.found) continue;
      EXPECT_LT((delta1_free(*r.point) * delta0(*r.point)).norm(), 1e-10);
    }
  }
}

TEST(Cohomology, AbelianClosedForm) {
  std::mt19937_64 rng(4);
  const auto m = LieModel::u(1);
  for (int l = 0; l <= 5; ++l) {
    std::vector<GroupMat> gens;
    for (int g = 0; g < 2 * l; ++g) gens.push_back(m.random_element(rng));
    const auto cd = compute_cohomology(RepPoint(PlanarPresentation(l, {}), m, gens));
    EXPECT_EQ(cd.h0, 1);
    EXPECT_EQ(cd.h1, 2 * l);
    EXPECT_EQ(cd.h2, 1);
  }
}

TEST(Cohomology, TrivialRepresentationGenusTwo) {
  const auto cd = compute_cohomology(trivial_point(PlanarPresentation(2, {}), LieModel::su2()));
  EXPECT_EQ(cd.h0, 3);
  EXPECT_EQ(cd.h1, 12);
  EXPECT_EQ(cd.h2, 3);
  EXPECT_FALSE(cd.tolerance_ambiguity);
}

TEST(Cohomology, TriangleGroupRigidity) {
  // (4,4,4) with all classes of angle pi/2: irreducible and rigid
  SolveSpec s;
  s.presentation = PlanarPresentation(0, {4, 4, 4});
  s.classes = {su2_class(4, 1), su2_class(4, 1), su2_class(4, 1)};
  const RepPoint pt = solved(s);
  const auto cd = compute_cohomology(pt);
  EXPECT_EQ(cd.fixed, (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(cd.h0, 0);
  EXPECT_EQ(cd.h1, 0);
  EXPECT_EQ(cd.h2, 0);
}

TEST(Cohomology, DualityEulerAndConjugationInvariance) {
  std::mt19937_64 rng(5);
  for (const auto& m : {LieModel::su2(), LieModel::u(2), LieModel::u(1)}) {
    for (int i = 0; i < 15; ++i) {
      auto s = oracle::random_spec(rng, m, 3, 3, 6);
      const auto r = solve_relator(s);
      if (!r.found) continue;
      const auto cd = compute_cohomology(*r.point);
      EXPECT_EQ(cd.h0, cd.h2);
      int expected = (2 - 2 * s.presentation.genus()) * m.dim();
      for (const auto& c : s.classes) expected -= m.dim() - oracle::fixed_dim_of_class(c);
      EXPECT_EQ(cd.h0 - cd.h1 + cd.h2, expected);
      const auto moved = compute_cohomology(r.point->conjugated(m.random_element(rng)));
      EXPECT_EQ(moved.h1, cd.h1);
      EXPECT_EQ(moved.h0, cd.h0);
    }
  }
}

TEST(Cohomology, RejectsNonCentralRelator) {
  std::mt19937_64 rng(6);
  const auto m = LieModel::su2();
  std::vector<GroupMat> gens = {m.random_element(rng), m.random_element(rng)};
  EXPECT_THROW(compute_cohomology(RepPoint(PlanarPresentation(1, {}), m, gens)), RelatorConstraintViolated);
}

TEST(Cohomology, NumericalRankThreshold) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(0, 0) = 1;
  a(1, 1) = 1e-3;
  a(2, 2) = 1e-12;
  const auto info = numerical_rank(a, 1e-8);
  EXPECT_EQ(info.rank, 2);
  EXPECT_FALSE(info.ambiguous);
  a(2, 2) = 5e-8;
  EXPECT_TRUE(numerical_rank(a, 1e-8).ambiguous);
  EXPECT_EQ(kernel_basis(Eigen::MatrixXd::Identity(2, 3), 1e-8).cols(), 1);
}

TEST(RepPoint, JsonRoundTrip) {
  std::mt19937_64 rng(7);
  const auto m = LieModel::u(2);
  std::vector<GroupMat> gens;
  const PlanarPresentation p(1, {2});
  for (int g = 0; g < 3; ++g) gens.push_back(m.random_element(rng));
  const RepPoint pt(p, m, gens);
  const RepPoint back = RepPoint::from_json(pt.to_json());
  for (int g = 0; g < 3; ++g) EXPECT_EQ(back.generator(g), pt.generator(g));
  EXPECT_EQ(back.presentation(), p);
}

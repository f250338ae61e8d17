#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "planarep/errors.hpp"
#include "planarep/liegroup.hpp"

using namespace planarep;

namespace {

std::vector<LieModel> models() { return {LieModel::su2(), LieModel::u(1), LieModel::u(2), LieModel::u(3), LieModel::sl2r()}; }

}  // namespace

TEST(LieModel, Dimensions) {
  EXPECT_EQ(LieModel::su2().dim(), 3);
  EXPECT_EQ(LieModel::u(3).dim(), 9);
  EXPECT_EQ(LieModel::sl2r().dim(), 3);
  EXPECT_EQ(LieModel::from_name("U2").dim(), 4);
  EXPECT_THROW(LieModel::from_name("SO3"), UnknownGroup);
}

TEST(LieModel, PairingConventions) {
  const auto su2 = LieModel::su2();
  EXPECT_EQ(su2.pairing_diagonal(), Eigen::Vector3d(2, 2, 2));
  const auto sl = LieModel::sl2r();
  EXPECT_EQ(sl.pairing_diagonal(), Eigen::Vector3d(2, 2, -2));
  for (const auto& m : models()) {
    for (int a = 0; a < m.dim(); ++a) {
      for (int b = 0; b < m.dim(); ++b) {
        const std::complex<double> t = (m.basis(a) * m.basis(b)).trace();
        const double expected = m.compact() ? -t.real() : t.real();
        EXPECT_NEAR(m.pairing(AlgVec::Unit(m.dim(), a), AlgVec::Unit(m.dim(), b)), expected, 1e-14);
      }
    }
  }
}

TEST(LieModel, CoordsRoundTripAndBracket) {
  std::mt19937_64 rng(1);
  for (const auto& m : models()) {
    for (int i = 0; i < 20; ++i) {
      const AlgVec x = m.random_algebra(rng), y = m.random_algebra(rng);
      EXPECT_LT((m.coords(m.to_matrix(x)) - x).norm(), 1e-13);
      const AlgMat xy = m.to_matrix(x) * m.to_matrix(y) - m.to_matrix(y) * m.to_matrix(x);
      EXPECT_LT((m.to_matrix(m.bracket(x, y)) - xy).norm(), 1e-12);
      EXPECT_LT((m.ad(x) * y - m.bracket(x, y)).norm(), 1e-12);
    }
  }
}

TEST(LieModel, ExpLogAndAd) {
  std::mt19937_64 rng(2);
  for (const auto& m : models()) {
    for (int i = 0; i < 30; ++i) {
      const AlgVec x = m.random_algebra(rng, 0.3);
      const GroupMat g = m.exp(x);
      EXPECT_LT(m.group_residual(g), 1e-12) << m.name();
      EXPECT_LT((m.log_principal(g) - x).norm(), 1e-10) << m.name();
      const GroupMat h = m.random_element(rng);
      EXPECT_LT(m.group_residual(h), 1e-12);
      EXPECT_LT((m.Ad(g * h) - m.Ad(g) * m.Ad(h)).norm(), 1e-11);
      const AlgVec y = m.random_algebra(rng);
      EXPECT_LT((m.to_matrix(m.Ad(h) * y) - h * m.to_matrix(y) * m.inverse(h)).norm(), 1e-11);
      // Ad preserves the pairing
      EXPECT_NEAR(m.pairing(m.Ad(h) * x, m.Ad(h) * y), m.pairing(x, y), 1e-10);
    }
  }
}

TEST(LieModel, LogBranchFailure) {
  const auto su2 = LieModel::su2();
  EXPECT_THROW(su2.log_principal(-su2.identity()), LogBranchFailure);
}

TEST(LieModel, DexpMatchesFiniteDifference) {
  std::mt19937_64 rng(3);
  const double h = 1e-6;
  for (const auto& m : models()) {
    for (int i = 0; i < 10; ++i) {
      const AlgVec x = m.random_algebra(rng, 0.8), v = m.random_algebra(rng);
      const GroupMat d = (m.exp(x + h * v) - m.exp(x - h * v)) / (2 * h) * m.inverse(m.exp(x));
      EXPECT_LT((m.coords(d) - m.dexp(x) * v).norm(), 1e-8) << m.name();
      EXPECT_LT((m.dexp_inverse(x) * (m.dexp(x) * v) - v).norm(), 1e-10);
    }
  }
}

TEST(LieModel, RegularDomain) {
  const auto su2 = LieModel::su2();
  AlgVec x = AlgVec::Zero(3);
  x(2) = 1.0;  // exp(i sigma3): ad eigenvalues +-2i
  EXPECT_TRUE(su2.in_regular_domain(x));
  x(2) = std::numbers::pi;  // ad eigenvalues +-2 pi i
  EXPECT_FALSE(su2.in_regular_domain(x));
  EXPECT_THROW(su2.dexp_inverse(x), SingularDexp);
  x(2) = 2.0;
  EXPECT_TRUE(su2.segment_in_regular_domain(x));
  x(2) = 3.5;
  EXPECT_FALSE(su2.segment_in_regular_domain(x));
}

TEST(LieModel, Centre) {
  EXPECT_EQ(LieModel::u(2).center_basis().size(), 1u);
  EXPECT_TRUE(LieModel::su2().center_basis().empty());
  EXPECT_TRUE(LieModel::su2().is_central(-LieModel::su2().identity(), 1e-12));
  std::mt19937_64 rng(4);
  EXPECT_FALSE(LieModel::su2().is_central(LieModel::su2().random_element(rng), 1e-6));
}

#include <gtest/gtest.h>

#include <random>

#include "planarep/errors.hpp"
#include "planarep/solver.hpp"
#include "planarep/symplectic.hpp"
#include "support/oracles.hpp"

using namespace planarep;

namespace {

RepPoint solved(const PlanarPresentation& p, const LieModel& m, std::vector<TorsionClass> cls, GroupMat target,
                std::uint64_t seed) {
  SolveSpec s;
  s.presentation = p;
  s.model = m;
  s.classes = std::move(cls);
  s.target = target;
  s.seed = seed;
  const auto r = solve_relator(s);
  if (!r.found) throw std::runtime_error("solver failed in test setup");
  return *r.point;
}

}  // namespace

TEST(Quadrature, GaussLegendreExactness) {
  for (int n : {1, 4, 16, 32}) {
    const auto [x, w] = gauss_legendre_unit(n);
    for (int k = 0; k < 2 * n; ++k) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += w(i) * std::pow(x(i), k);
      EXPECT_NEAR(s, 1.0 / (k + 1), 1e-13) << n << " " << k;
    }
  }
}

TEST(BForm, AntisymmetricAndPrimitiveOfCartanForm) {
  std::mt19937_64 rng(1);
  const double h = 1e-5;
  for (const auto& m : {LieModel::su2(), LieModel::u(2), LieModel::sl2r()}) {
    for (int i = 0; i < 5; ++i) {
      const AlgVec x = m.random_algebra(rng, 0.6), a = m.random_algebra(rng), b = m.random_algebra(rng),
                   c = m.random_algebra(rng);
      const Eigen::MatrixXd bm = bform_matrix(m, x, 32);
      EXPECT_LT((bm + bm.transpose()).norm(), 1e-12);
      auto d = [&](const AlgVec& dir, const AlgVec& v, const AlgVec& w) {
        return (bform(m, x + h * dir, v, w) - bform(m, x - h * dir, v, w)) / (2 * h);
      };
      const double db = d(a, b, c) - d(b, a, c) + d(c, a, b);
      const double eta = cartan_pullback(m, x, a, b, c);
      EXPECT_NEAR(db, eta, 1e-6 * std::max(1.0, std::abs(eta))) << m.name();
    }
  }
  AlgVec far = AlgVec::Zero(3);
  far(0) = 4.0;
  EXPECT_THROW(bform_matrix(LieModel::su2(), far), OutsideStarDomain);
}

TEST(Pairing, AntisymmetryCoboundaryAndNondegeneracy) {
  std::mt19937_64 rng(2);
  const auto su2 = LieModel::su2();
  const std::vector<RepPoint> pts = {
      solved(PlanarPresentation(2, {}), su2, {}, su2.identity(), 1),
      solved(PlanarPresentation(1, {}), su2, {}, -su2.identity(), 2),
      solved(PlanarPresentation(1, {3}), su2, {su2_class(3, 1)}, su2.identity(), 3),
      solved(PlanarPresentation(2, {2}), LieModel::u(2), {make_class(LieModel::u(2), 2, {0, 0})},
             LieModel::u(2).identity(), 4),
  };
  for (const auto& pt : pts) {
    const auto cd = compute_cohomology(pt);
    const Eigen::MatrixXd D0 = delta0(pt);
    Eigen::MatrixXd g(cd.h1, cd.h1);
    for (int a = 0; a < cd.h1; ++a) {
      for (int b = 0; b < cd.h1; ++b) g(a, b) = pairing_H1(pt, cd.H1.col(a), cd.H1.col(b));
    }
    if (cd.h1) {
      EXPECT_LT((g + g.transpose()).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_EQ(numerical_rank(g, 1e-8).rank, cd.h1);
    }
    for (int a = 0; a < cd.h1; ++a) {
      const AlgVec x = pt.model().random_algebra(rng);
      for (int b = 0; b < cd.h1; ++b) {
        EXPECT_NEAR(pairing_H1(pt, cd.H1.col(a) + D0 * x, cd.H1.col(b)), g(a, b), 1e-10);
      }
    }
  }
}

TEST(Pairing, RejectsNonCocycles) {
  const auto su2 = LieModel::su2();
  const RepPoint pt = solved(PlanarPresentation(2, {}), su2, {}, su2.identity(), 5);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(pt.cochain_dim());
  u(0) = 1;
  EXPECT_THROW(pairing_H1(pt, u, u), NotACocycle);
}

TEST(ExtendedForm, TangentMatchesLogDerivative) {
  // V = d/dt log r(exp(t u) phi) at t = 0
  std::mt19937_64 rng(3);
  const auto m = LieModel::su2();
  const PlanarPresentation p(1, {3});
  const double h = 1e-6;
  const auto batch = moment_batch(p, m, {su2_class(3, 1)}, 7, 10);
  ASSERT_EQ(batch.size(), 10u);
  for (const auto& s : batch) {
    const ExtendedForm form(s.point);
    const TangentVec t = form.tangent(s.u);
    auto moved = [&](double eps) {
      std::vector<GroupMat> g;
      for (int k = 0; k < p.generator_count(); ++k) {
        g.push_back(m.exp(eps * s.u.segment(k * m.dim(), m.dim())) * s.point.phi.generator(k));
      }
      return m.log_principal(RepPoint(p, m, g).relator_value());
    };
    EXPECT_LT(((moved(h) - moved(-h)) / (2 * h) - t.v).norm(), 1e-7);
    EXPECT_LT(form.action_field_consistency(m.random_algebra(rng)), 1e-10);
  }
}

TEST(ExtendedForm, ClosedOnTorsionFreeCharts) {
  // chart xi -> exp(xi_s) phi_s with constant coordinate fields
  std::mt19937_64 rng(4);
  const auto m = LieModel::su2();
  const int d = m.dim();
  for (int l : {1, 2}) {
    const PlanarPresentation p(l, {});
    std::vector<GroupMat> base;
    for (int g = 0; g < 2 * l; ++g) base.push_back(m.exp(m.random_algebra(rng, 0.4)));
    const int n = 2 * l * d;
    auto omega = [&](const Eigen::VectorXd& xi, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
      std::vector<GroupMat> g;
      Eigen::VectorXd ua(n), ub(n);
      for (int s = 0; s < 2 * l; ++s) {
        const AlgVec x = xi.segment(s * d, d);
        g.push_back(m.exp(x) * base[s]);
        ua.segment(s * d, d) = m.dexp(x) * a.segment(s * d, d);
        ub.segment(s * d, d) = m.dexp(x) * b.segment(s * d, d);
      }
      const ExtendedForm f(make_extended_point(RepPoint(p, m, g)));
      return ua.dot(f.matrix() * ub);
    };
    const Eigen::VectorXd a = Eigen::VectorXd::Random(n), b = Eigen::VectorXd::Random(n),
                          c = Eigen::VectorXd::Random(n);
    const double h = 1e-4;
    auto deriv = [&](const Eigen::VectorXd& dir, const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
      return (omega(h * dir, v, w) - omega(-h * dir, v, w)) / (2 * h);
    };
    EXPECT_LT(std::abs(deriv(a, b, c) - deriv(b, a, c) + deriv(c, a, b)), 1e-4);
  }
}

TEST(Moment, IdentityEquivarianceAndCalibration) {
  const auto m = LieModel::su2();
  const PlanarPresentation p(1, {3});
  const auto batch = moment_batch(p, m, {su2_class(3, 1)}, 11, 16);
  const Calibration cal = calibrate(batch, 11);
  EXPECT_EQ(cal.s1, 1);
  EXPECT_EQ(cal.s2, 1);
  EXPECT_NEAR(cal.kappa_norm, 1.0, 1e-9);
  EXPECT_LT(cal.residual, 1e-6);
  std::mt19937_64 rng(5);
  for (const auto& s : moment_batch(p, m, {su2_class(3, 1)}, 12, 20)) {
    const ExtendedForm form(s.point, cal);
    EXPECT_LT(check_moment_identity(form, s.x, form.tangent(s.u)).relative, 1e-6);
    EXPECT_EQ(check_moment_identity(form, AlgVec::Zero(3), form.tangent(s.u)).absolute, 0.0);
    const GroupMat g = m.random_element(rng);
    const AlgVec x = m.random_algebra(rng);
    EXPECT_NEAR(moment(conjugated(s.point, g)).dot(m.Ad(g) * x), moment(s.point).dot(x), 1e-12);
  }
}

TEST(Moment, CalibrationDetectsWrongConventions) {
  // flipping the B term must not fit
  const auto m = LieModel::su2();
  const auto batch = moment_batch(PlanarPresentation(1, {3}), m, {su2_class(3, 1)}, 13, 8);
  Calibration wrong;
  wrong.s2 = -1;
  double worst = 0;
  for (const auto& s : batch) {
    const ExtendedForm form(s.point, wrong);
    worst = std::max(worst, check_moment_identity(form, s.x, form.tangent(s.u)).relative);
  }
  EXPECT_GT(worst, 1e-3);
  EXPECT_THROW(calibrate(std::span<const MomentSample>(), 0), CalibrationFailed);
}

TEST(Degeneracy, Examples) {
  std::mt19937_64 rng(6);
  const auto u1 = LieModel::u(1);
  const RepPoint torus(PlanarPresentation(1, {}), u1, {u1.random_element(rng), u1.random_element(rng)});
  auto r = degeneracy_report(torus);
  EXPECT_EQ(r.rank_on_Z1, 2);
  EXPECT_EQ(r.nullspace_dim, 0);
  EXPECT_EQ(r.full_rank, 2);
  EXPECT_TRUE(r.nondegenerate);

  const auto su2 = LieModel::su2();
  const RepPoint irr = solved(PlanarPresentation(2, {}), su2, {}, su2.identity(), 7);
  r = degeneracy_report(irr);
  EXPECT_EQ(r.z1_dim, 9);
  EXPECT_EQ(r.rank_on_Z1, 6);
  EXPECT_EQ(r.b1_dim, 3);
  EXPECT_TRUE(r.nullspace_matches_B1);
  EXPECT_LT(r.max_principal_angle, 1e-6);
  EXPECT_EQ(r.full_rank, 12);
  EXPECT_LT(r.antisymmetry, 1e-12);

  const RepPoint twisted = solved(PlanarPresentation(1, {}), su2, {}, -su2.identity(), 8);
  r = degeneracy_report(twisted);
  EXPECT_TRUE(r.pairing_only);
  EXPECT_TRUE(r.nullspace_matches_B1);
}

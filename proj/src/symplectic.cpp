#include "planarep/symplectic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "planarep/errors.hpp"

namespace planarep {

nlohmann::json Calibration::to_json() const {
  return {{"s1", s1}, {"s2", s2}, {"kappa_norm", kappa_norm}, {"batch_seed", batch_seed},
          {"residual", residual}, {"fitted", fitted}};
}

Calibration Calibration::from_json(const nlohmann::json& j) {
  Calibration c;
  c.s1 = j.at("s1").get<int>();
  c.s2 = j.at("s2").get<int>();
  c.kappa_norm = j.at("kappa_norm").get<double>();
  c.batch_seed = j.value("batch_seed", std::uint64_t{0});
  c.residual = j.value("residual", 0.0);
  c.fitted = j.value("fitted", true);
  if (std::abs(c.s1) != 1 || std::abs(c.s2) != 1 || !(c.kappa_norm > 0)) {
    throw MalformedInput("calibration record has invalid signs or scale");
  }
  return c;
}

Eigen::MatrixXd cup_form(const RepPoint& pt, const BarChain& chain) {
  const int n = pt.cochain_dim();
  const Operator pairing = pt.model().pairing_matrix();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [cell, q] : chain.terms()) {
    const Word& g = cell[0];
    const Word& h = cell[1];
    const Eigen::MatrixXd lg = cocycle_map(pt, g);
    const Eigen::MatrixXd lh = cocycle_map(pt, h);
    acc += to_double(q) * (lg.transpose() * pairing * pt.Ad(g) * lh);
  }
  return 0.5 * (acc - acc.transpose());
}

double pairing_H1(const RepPoint& pt, const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                  const Calibration& cal, const Tolerances& tol) {
  if (!pt.relator_central(tol.grp * 10)) {
    throw RelatorConstraintViolated("r(phi) is not central");
  }
  const Eigen::MatrixXd d1 = delta1_free(pt);
  const double scale = std::max(1.0, d1.norm());
  for (const auto* w : {&u, &v}) {
    if ((d1 * *w).norm() > tol.cx * 100 * scale * std::max(1.0, w->norm())) {
      throw NotACocycle("delta1 residual " + std::to_string((d1 * *w).norm()));
    }
  }
  const PiChain cbar = push_to_pi(relator_filling_chain(pt.presentation()), pt.presentation());
  return cal.s1 * cal.kappa_norm * u.dot(cup_form(pt, cbar.chain) * v);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre_unit(int nodes) {
  // Golub-Welsch on the Legendre Jacobi matrix.
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(nodes, nodes);
  for (int k = 1; k < nodes; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    j(k, k - 1) = j(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  Eigen::VectorXd x = (es.eigenvalues().array() + 1.0) / 2.0;
  Eigen::VectorXd w = es.eigenvectors().row(0).transpose().array().square();  // sums to 1 on [0,1]
  return {x, w};
}

Eigen::MatrixXd bform_matrix(const LieModel& model, const AlgVec& lambda, int nodes) {
  if (!model.segment_in_regular_domain(lambda)) {
    throw OutsideStarDomain("segment from 0 to Lambda leaves the regular domain");
  }
  const int d = model.dim();
  const Operator inner = model.ad(lambda).transpose() * model.pairing_matrix();
  const auto [t, w] = gauss_legendre_unit(nodes);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < nodes; ++k) {
    const Operator dt = model.dexp(t(k) * lambda);
    b += w(k) * t(k) * t(k) * (dt.transpose() * inner * dt);
  }
  return b;
}

double bform(const LieModel& model, const AlgVec& lambda, const AlgVec& v, const AlgVec& w, int nodes) {
  return v.dot(bform_matrix(model, lambda, nodes) * w);
}

double cartan_pullback(const LieModel& model, const AlgVec& x, const AlgVec& a, const AlgVec& b,
                       const AlgVec& c) {
  const Operator d = model.dexp(x);
  return model.pairing(model.bracket(d * a, d * b), d * c);
}

ExtendedPoint make_extended_point(const RepPoint& phi, const Tolerances& tol) {
  if (!phi.is_torsion_point(tol.grp)) {
    throw RelatorConstraintViolated("phi(z_j)^{m_j} differs from the identity");
  }
  const LieModel& model = phi.model();
  AlgVec lambda = model.log_principal(phi.relator_value());
  if (!model.segment_in_regular_domain(lambda)) {
    throw OutsideStarDomain("log r(phi) is outside the star-shaped regular domain");
  }
  const double mismatch = (model.exp(lambda) - phi.relator_value()).norm();
  if (mismatch > tol.grp * 10) {
    throw LogBranchFailure("exp(log r(phi)) differs from r(phi) by " + std::to_string(mismatch));
  }
  return {phi, std::move(lambda)};
}

ExtendedPoint conjugated(const ExtendedPoint& pt, const GroupMat& g) {
  return {pt.phi.conjugated(g), pt.phi.model().Ad(g) * pt.lambda};
}

ExtendedForm::ExtendedForm(const ExtendedPoint& pt, const Calibration& cal, const Tolerances& tol)
    : pt_(pt) {
  const RepPoint& phi = pt_.phi;
  const LieModel& model = phi.model();
  P_ = projective_subspace(phi, tol);
  to_v_ = model.dexp_inverse(pt_.lambda) * delta1_relator_row(phi);
  cup_ = cal.s1 * cal.kappa_norm * cup_form(phi, relator_filling_chain(phi.presentation()));
  b_ = cal.s2 * cal.kappa_norm * 0.5 * bform_matrix(model, pt_.lambda, tol.quad_nodes);
  omega_ = cup_ - to_v_.transpose() * b_ * to_v_;
}

TangentVec ExtendedForm::tangent(const Eigen::VectorXd& u) const {
  const double off = (u - P_ * (P_.transpose() * u)).norm();
  if (off > 1e-8 * std::max(1.0, u.norm())) {
    throw RelatorConstraintViolated("tangent leaves the projective subspace");
  }
  return {u, to_v_ * u};
}

double ExtendedForm::cup_part(const TangentVec& a, const TangentVec& b) const { return a.u.dot(cup_ * b.u); }
double ExtendedForm::b_part(const TangentVec& a, const TangentVec& b) const { return a.v.dot(b_ * b.v); }
double ExtendedForm::omega(const TangentVec& a, const TangentVec& b) const { return cup_part(a, b) - b_part(a, b); }

TangentVec ExtendedForm::action_field(const AlgVec& x) const {
  const LieModel& model = pt_.phi.model();
  return {delta0(pt_.phi) * x, model.bracket(x, pt_.lambda)};
}

double ExtendedForm::action_field_consistency(const AlgVec& x) const {
  const TangentVec f = action_field(x);
  return (to_v_ * f.u - f.v).norm();
}

Eigen::VectorXd moment(const ExtendedPoint& pt) {
  return -(pt.phi.model().pairing_diagonal().cwiseProduct(pt.lambda));
}

MomentResidual check_moment_identity(const ExtendedForm& form, const AlgVec& x, const TangentVec& t) {
  const LieModel& model = form.point().phi.model();
  MomentResidual r;
  r.lhs = form.omega(form.action_field(x), t);
  r.rhs = -model.pairing(t.v, x);
  r.absolute = std::abs(r.lhs - r.rhs);
  const Eigen::VectorXd weight = model.pairing_diagonal().cwiseAbs().cwiseSqrt();
  const int d = model.dim();
  double u_sq = 0;
  for (Eigen::Index k = 0; k + d <= t.u.size(); k += d) u_sq += weight.cwiseProduct(t.u.segment(k, d)).squaredNorm();
  r.scale = std::max(weight.cwiseProduct(x).norm() * (std::sqrt(u_sq) + weight.cwiseProduct(t.v).norm()),
                     std::numeric_limits<double>::min());
  r.relative = r.absolute / r.scale;
  return r;
}

Calibration calibrate(std::span<const MomentSample> batch, std::uint64_t batch_seed, double threshold,
                      const Tolerances& tol) {
  if (batch.empty()) throw CalibrationFailed("empty calibration batch");
  // With unit conventions omega = cup - b; each sign/scale choice rescales the parts.
  struct Parts {
    double cup, b, rhs, scale;
  };
  std::vector<Parts> parts;
  const Calibration unit;
  for (const auto& s : batch) {
    const ExtendedForm form(s.point, unit, tol);
    const TangentVec t = form.tangent(s.u);
    const TangentVec f = form.action_field(s.x);
    const MomentResidual r = check_moment_identity(form, s.x, t);
    parts.push_back({form.cup_part(f, t), form.b_part(f, t), r.rhs, r.scale});
  }

  Calibration best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int s1 : {1, -1}) {
    for (int s2 : {1, -1}) {
      double num = 0, den = 0;
      for (const auto& p : parts) {
        const double base = s1 * p.cup - s2 * p.b;
        num += base * p.rhs;
        den += base * base;
      }
      if (!(den > 0) || !(num > 0)) continue;
      const double kappa = num / den;
      double worst = 0;
      for (const auto& p : parts) {
        const double lhs = kappa * (s1 * p.cup - s2 * p.b);
        worst = std::max(worst, std::abs(lhs - p.rhs) / p.scale);
      }
      if (worst < best.residual) {
        best.s1 = s1;
        best.s2 = s2;
        best.kappa_norm = kappa;
        best.residual = worst;
      }
    }
  }
  best.batch_seed = batch_seed;
  best.fitted = true;
  if (!(best.residual <= threshold)) {
    throw CalibrationFailed("best sign/scale choice leaves relative residual " + std::to_string(best.residual));
  }
  return best;
}

double max_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.cols() != b.cols()) return std::numbers::pi / 2;
  if (a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.transpose() * b);
  const double smallest = svd.singularValues().minCoeff();
  return std::acos(std::clamp(smallest, -1.0, 1.0));
}

nlohmann::json DegeneracyReport::to_json() const {
  return {{"pairing_only", pairing_only},
          {"z1_dim", z1_dim},
          {"rank_on_Z1", rank_on_Z1},
          {"nullspace_dim", nullspace_dim},
          {"b1_dim", b1_dim},
          {"max_principal_angle", max_principal_angle},
          {"nullspace_matches_B1", nullspace_matches_B1},
          {"projective_dim", projective_dim},
          {"full_rank", full_rank},
          {"nondegenerate", nondegenerate},
          {"antisymmetry", antisymmetry},
          {"tolerance_ambiguity", tolerance_ambiguity}};
}

DegeneracyReport degeneracy_report(const RepPoint& phi, const Calibration& cal, const Tolerances& tol) {
  const CochainData cd = compute_cohomology(phi, tol);
  DegeneracyReport rep;
  rep.z1_dim = static_cast<int>(cd.Z1.cols());
  rep.b1_dim = static_cast<int>(cd.B1.cols());
  rep.projective_dim = cd.projective_dim();

  Eigen::MatrixXd omega;
  try {
    const ExtendedPoint ext = make_extended_point(phi, tol);
    omega = ExtendedForm(ext, cal, tol).matrix();
  } catch (const LogBranchFailure&) {
    rep.pairing_only = true;
  } catch (const OutsideStarDomain&) {
    rep.pairing_only = true;
  }
  if (rep.pairing_only) {
    omega = cal.s1 * cal.kappa_norm * cup_form(phi, relator_filling_chain(phi.presentation()));
  }

  const Eigen::MatrixXd gz = cd.Z1.transpose() * omega * cd.Z1;
  rep.antisymmetry = (gz + gz.transpose()).norm();
  const RankInfo rz = numerical_rank(gz, tol.rank_rel);
  rep.rank_on_Z1 = rz.rank;
  const Eigen::MatrixXd null = cd.Z1 * kernel_basis(gz, tol.rank_rel);
  rep.nullspace_dim = static_cast<int>(null.cols());
  rep.max_principal_angle = max_principal_angle(null, cd.B1);
  rep.nullspace_matches_B1 = null.cols() == cd.B1.cols() && rep.max_principal_angle < 1e-6;
  rep.tolerance_ambiguity = rz.ambiguous || cd.tolerance_ambiguity;

  if (!rep.pairing_only) {
    const Eigen::MatrixXd gp = cd.P.transpose() * omega * cd.P;
    rep.antisymmetry = std::max(rep.antisymmetry, (gp + gp.transpose()).norm());
    const RankInfo rp = numerical_rank(gp, tol.rank_rel);
    rep.full_rank = rp.rank;
    rep.nondegenerate = rp.rank == rep.projective_dim;
    rep.tolerance_ambiguity = rep.tolerance_ambiguity || rp.ambiguous;
  }
  return rep;
}

}  // namespace planarep

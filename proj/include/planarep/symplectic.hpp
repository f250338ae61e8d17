#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "planarep/cohomology.hpp"
#include "planarep/foxcalc.hpp"

namespace planarep {

/// Sign and scale conventions for the extended 2-form. With
/// s1 = s2 = kappa_norm = 1 the form is
///   omega(t1, t2) = cup_c(u1, u2) - 1/2 B_Lambda(V1, V2),
/// cup_c being the antisymmetrized cup evaluation (with its factor 1/2).
struct Calibration {
  int s1 = 1;
  int s2 = 1;
  double kappa_norm = 1.0;
  std::uint64_t batch_seed = 0;
  double residual = 0.0;  // max relative moment residual on the batch
  bool fitted = false;

  nlohmann::json to_json() const;
  static Calibration from_json(const nlohmann::json& j);
};

/// Bilinear form u^T C v = 1/2 sum_i q_i ( <u(g_i), Ad_{g_i} v(h_i)> - <v(g_i), Ad_{g_i} u(h_i)> )
/// over the cells q_i [g_i|h_i] of a 2-chain, u, v extended by the cocycle rule.
Eigen::MatrixXd cup_form(const RepPoint& pt, const BarChain& chain);

/// The pairing on H^1(pi, g_phi), evaluated on cocycles u, v against the
/// pi-chain representing the fundamental class. Throws NotACocycle.
double pairing_H1(const RepPoint& pt, const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                  const Calibration& cal = {}, const Tolerances& tol = {});

/// Gauss-Legendre nodes and weights on [0, 1].
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre_unit(int nodes);

/// Radial-homotopy primitive B of the exp-pullback of the Cartan 3-form,
///   B_Lambda(V, W) = int_0^1 t^2 <[Lambda, D(t Lambda) V], D(t Lambda) W> dt,
/// as a dim x dim matrix. Throws OutsideStarDomain.
Eigen::MatrixXd bform_matrix(const LieModel& model, const AlgVec& lambda, int nodes = 32);
double bform(const LieModel& model, const AlgVec& lambda, const AlgVec& v, const AlgVec& w, int nodes = 32);
/// The 3-form <[D(X)a, D(X)b], D(X)c> on O.
double cartan_pullback(const LieModel& model, const AlgVec& x, const AlgVec& a, const AlgVec& b, const AlgVec& c);

/// Point (phi, Lambda) of the extended manifold: phi a torsion point and
/// exp(Lambda) = r(phi) with Lambda regular.
struct ExtendedPoint {
  RepPoint phi;
  AlgVec lambda;
};

/// Lambda = log_principal(r(phi)). Throws RelatorConstraintViolated,
/// LogBranchFailure or OutsideStarDomain.
ExtendedPoint make_extended_point(const RepPoint& phi, const Tolerances& tol = {});
ExtendedPoint conjugated(const ExtendedPoint& pt, const GroupMat& g);

/// Tangent vector: u in the projective subspace of C^1 and V = D(Lambda)^{-1} delta1 u.
struct TangentVec {
  Eigen::VectorXd u;
  AlgVec v;
};

/// Everything needed to evaluate the extended form at one point.
class ExtendedForm {
 public:
  ExtendedForm(const ExtendedPoint& pt, const Calibration& cal = {}, const Tolerances& tol = {});

  const ExtendedPoint& point() const { return pt_; }
  const Eigen::MatrixXd& projective_basis() const { return P_; }

  /// Throws RelatorConstraintViolated unless u lies in the projective subspace.
  TangentVec tangent(const Eigen::VectorXd& u) const;
  TangentVec tangent_from_projective(const Eigen::VectorXd& coords) const { return tangent(P_ * coords); }

  double omega(const TangentVec& a, const TangentVec& b) const;
  /// The two terms of omega = cup_part - b_part.
  double cup_part(const TangentVec& a, const TangentVec& b) const;
  double b_part(const TangentVec& a, const TangentVec& b) const;
  /// Matrix of omega on full C^1 coordinates.
  const Eigen::MatrixXd& matrix() const { return omega_; }
  /// Gram matrix on the columns of a basis (cochain_dim x k).
  Eigen::MatrixXd gram(const Eigen::MatrixXd& basis) const { return basis.transpose() * omega_ * basis; }

  /// Fundamental vector field of X under conjugation.
  TangentVec action_field(const AlgVec& x) const;
  /// |V from u - [X, Lambda]| for the action field.
  double action_field_consistency(const AlgVec& x) const;

 private:
  ExtendedPoint pt_;
  Eigen::MatrixXd P_;
  Eigen::MatrixXd to_v_;  // u -> V
  Eigen::MatrixXd cup_;   // cup part on C^1, conventions applied
  Eigen::MatrixXd b_;     // B part on g, conventions applied
  Eigen::MatrixXd omega_;
};

/// mu(pt) = -<Lambda, .> as coordinates mu_k = mu(e_k).
Eigen::VectorXd moment(const ExtendedPoint& pt);

struct MomentResidual {
  double lhs = 0;       // omega(X_field, t)
  double rhs = 0;       // d(X o mu)(t) = -<V_t, X>
  double absolute = 0;
  double scale = 0;     // |X| (|u_t| + |V_t|) in the |pairing|-weighted norm
  double relative = 0;  // absolute / scale
};

MomentResidual check_moment_identity(const ExtendedForm& form, const AlgVec& x, const TangentVec& t);

struct MomentSample {
  ExtendedPoint point;
  AlgVec x;
  Eigen::VectorXd u;  // tangent, full C^1 coordinates
};

/// Chooses (s1, s2, kappa_norm) minimizing the max relative residual over the
/// batch. Throws CalibrationFailed when the best choice exceeds threshold.
Calibration calibrate(std::span<const MomentSample> batch, std::uint64_t batch_seed,
                      double threshold = 1e-6, const Tolerances& tol = {});

struct DegeneracyReport {
  bool pairing_only = false;  // r(phi) outside the log chart; only Z^1 data
  int z1_dim = 0;
  int rank_on_Z1 = 0;
  int nullspace_dim = 0;
  int b1_dim = 0;
  double max_principal_angle = 0;
  bool nullspace_matches_B1 = false;
  int projective_dim = 0;
  int full_rank = -1;
  bool nondegenerate = false;
  double antisymmetry = 0;
  bool tolerance_ambiguity = false;

  nlohmann::json to_json() const;
};

/// Rank structure of omega at a point with central relator value.
DegeneracyReport degeneracy_report(const RepPoint& phi, const Calibration& cal = {},
                                   const Tolerances& tol = {});

/// Largest principal angle between the column spans of two orthonormal bases
/// of equal width (pi/2 if the widths differ).
double max_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace planarep

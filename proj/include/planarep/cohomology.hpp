#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "planarep/foxcalc.hpp"
#include "planarep/liegroup.hpp"
#include "planarep/presentation.hpp"

namespace planarep {

struct Tolerances {
  double rank_rel = 1e-8;   // singular values below rank_rel * max(sigma_max, 1) count as zero
  double grp = 1e-9;        // group membership, relator and centrality checks
  double cx = 1e-10;        // chain-complex identities
  double alg = 1e-10;       // algebra membership
  int quad_nodes = 32;      // Gauss-Legendre nodes for the form on O

  nlohmann::json to_json() const;
};

/// Assignment of group elements to the generators of a planar presentation,
/// i.e. a point of Hom(F, G).
class RepPoint {
 public:
  RepPoint(PlanarPresentation pres, LieModel model, std::vector<GroupMat> generators);

  const PlanarPresentation& presentation() const { return pres_; }
  const LieModel& model() const { return model_; }
  const std::vector<GroupMat>& generators() const { return gens_; }
  const GroupMat& generator(int g) const { return gens_[g]; }
  int dim() const { return model_.dim(); }
  /// Dimension of C^1 of the free complex, (2l+n) * dim g.
  int cochain_dim() const { return pres_.generator_count() * dim(); }

  GroupMat value(const Word& w) const;
  Operator Ad(const Word& w) const;
  const Operator& Ad_generator(int g) const { return ad_gens_[g]; }

  /// r(phi) and r_j(phi).
  const GroupMat& relator_value() const { return relator_values_[0]; }
  const GroupMat& torsion_relator_value(int j) const { return relator_values_[j + 1]; }

  /// All torsion relators evaluate to the identity within tol.
  bool is_torsion_point(double tol) const;
  /// r(phi) is central within tol.
  bool relator_central(double tol) const;

  /// Simultaneous conjugation g phi g^-1.
  RepPoint conjugated(const GroupMat& g) const;

  nlohmann::json to_json() const;
  static RepPoint from_json(const nlohmann::json& j);

 private:
  PlanarPresentation pres_;
  LieModel model_;
  std::vector<GroupMat> gens_;
  std::vector<Operator> ad_gens_;
  std::vector<GroupMat> relator_values_;
};

/// The linear map u -> u(w) on C^1 = g^{2l+n}, extending u by the cocycle rule
/// u(gh) = u(g) + Ad_g u(h). Returned as a dim x cochain_dim matrix.
Eigen::MatrixXd cocycle_map(const RepPoint& pt, const Word& w);
AlgVec cocycle_extend(const RepPoint& pt, const Eigen::VectorXd& u, const Word& w);

/// sum_w q_w Ad_{phi(w)}.
Operator evaluate(const RepPoint& pt, const GroupRingElt& x);

/// delta0(X)_s = X - Ad_{phi(s)} X, as a cochain_dim x dim matrix.
Eigen::MatrixXd delta0(const RepPoint& pt);
/// Fox-derivative matrix with blocks (relator, generator): (1+n) dim x cochain_dim.
Eigen::MatrixXd delta1_free(const RepPoint& pt);
/// Row of the long relator only: dim x cochain_dim. Maps a tangent u to
/// d r(phi) r(phi)^{-1}.
Eigen::MatrixXd delta1_relator_row(const RepPoint& pt);

/// Orthonormal basis (cochain_dim x p) of C^1 of the projective complex: the
/// z_j-components lie in the kernel of N_j = sum_k Ad_{phi(z_j)}^k. Throws
/// RelatorConstraintViolated unless pt is a torsion point.
Eigen::MatrixXd projective_subspace(const RepPoint& pt, const Tolerances& tol = {});
/// delta1 of the projective complex in the coordinates of projective_subspace.
Eigen::MatrixXd delta1_projective(const RepPoint& pt, const Tolerances& tol = {});

/// dim ker(Ad_{phi(z_j)} - 1) for each torsion generator.
std::vector<int> fixed_dims(const RepPoint& pt, const Tolerances& tol = {});

struct RankInfo {
  int rank = 0;
  double threshold = 0;
  std::vector<double> singular_values;
  bool ambiguous = false;  // a singular value within a factor 10 of the threshold
};

RankInfo numerical_rank(const Eigen::MatrixXd& m, double rank_rel);
/// Orthonormal basis of the numerical kernel.
Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& m, double rank_rel);
/// Orthonormal basis of the numerical column space.
Eigen::MatrixXd range_basis(const Eigen::MatrixXd& m, double rank_rel);

struct CochainData {
  Eigen::MatrixXd D0;         // cochain_dim x d
  Eigen::MatrixXd D1_free;    // (1+n)d x cochain_dim
  Eigen::MatrixXd P;          // cochain_dim x p, orthonormal
  Eigen::MatrixXd D1_proj;    // d x p
  Eigen::MatrixXd Z1;         // cochain_dim x dim Z^1, orthonormal
  Eigen::MatrixXd B1;         // cochain_dim x dim B^1, orthonormal
  Eigen::MatrixXd H1;         // cochain_dim x h1, harmonic representatives
  int h0 = 0, h1 = 0, h2 = 0;
  std::vector<int> fixed;     // f_j
  RankInfo rank_d0, rank_d1;
  double complex_residual = 0;  // ||D1_proj P^T D0||
  bool tolerance_ambiguity = false;
  std::vector<std::string> notes;

  int projective_dim() const { return static_cast<int>(P.cols()); }
  /// (2 - 2l) d - sum_j (d - f_j).
  int euler_characteristic(const RepPoint& pt) const;
  nlohmann::json to_json() const;
};

/// Cohomology of pi with coefficients in g_phi through the projective complex.
/// Requires a torsion point with central relator value.
CochainData compute_cohomology(const RepPoint& pt, const Tolerances& tol = {});

}  // namespace planarep

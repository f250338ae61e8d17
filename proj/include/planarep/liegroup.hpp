#pragma once

#include <complex>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace planarep {

using GroupMat = Eigen::MatrixXcd;  // element of G
using AlgMat = Eigen::MatrixXcd;    // element of g, as a matrix
using AlgVec = Eigen::VectorXd;     // element of g, in basis coordinates
using Operator = Eigen::MatrixXd;   // linear operator on g (or blocks thereof)

enum class GroupKind { SU2, U, SL2R };

/// Matrix Lie group G with a biinvariant symmetric form on its Lie algebra.
///
/// Algebra elements are handled in coordinates of a fixed basis that is
/// orthogonal both for the invariant pairing and for the reference inner
/// product Re tr(A^* B). The pairing is -Re tr(XY) on u(n), su(2) and
/// tr(XY) on sl(2,R).
class LieModel {
 public:
  static LieModel su2();
  static LieModel u(int n);
  static LieModel sl2r();
  /// "SU2", "U1", "U2", "U3", "SL2R". Throws UnknownGroup.
  static LieModel from_name(std::string_view name);

  GroupKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  int matrix_size() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  bool compact() const { return kind_ != GroupKind::SL2R; }
  /// "negative-trace" for unitary models, "trace" for sl(2,R).
  const char* pairing_convention() const;

  const AlgMat& basis(int k) const { return basis_[k]; }
  /// Diagonal Gram matrix of the pairing on the basis.
  const Eigen::VectorXd& pairing_diagonal() const { return pairing_diag_; }
  Operator pairing_matrix() const { return pairing_diag_.asDiagonal(); }

  AlgMat to_matrix(const AlgVec& x) const;
  /// Coordinates of the orthogonal projection of m onto g.
  AlgVec coords(const AlgMat& m) const;

  double pairing(const AlgVec& x, const AlgVec& y) const;
  AlgVec bracket(const AlgVec& x, const AlgVec& y) const;

  GroupMat identity() const { return GroupMat::Identity(n_, n_); }
  GroupMat inverse(const GroupMat& g) const;
  GroupMat exp(const AlgVec& x) const;
  /// Principal logarithm. Throws LogBranchFailure when an eigenvalue argument
  /// is within branch_tol of +-pi (or, for SL(2,R), no real principal log).
  AlgVec log_principal(const GroupMat& g, double branch_tol = 1e-9) const;

  /// Ad_g as a dim x dim matrix in basis coordinates.
  Operator Ad(const GroupMat& g) const;
  /// ad_X as a dim x dim matrix.
  Operator ad(const AlgVec& x) const;

  /// No nonzero eigenvalue of ad_X in 2 pi i (Z \ 0).
  bool in_regular_domain(const AlgVec& x, double tol = 1e-8) const;
  /// The whole segment tX, t in [0,1], lies in the regular domain.
  bool segment_in_regular_domain(const AlgVec& x, double tol = 1e-8) const;

  /// Right-trivialized differential of exp: sum_k ad_X^k / (k+1)!, so that
  /// d/dt exp(X + tV) exp(-X) at t=0 equals D(X) V.
  Operator dexp(const AlgVec& x) const;
  /// Throws SingularDexp outside the regular domain.
  Operator dexp_inverse(const AlgVec& x) const;

  /// Basis of the Lie algebra of the centre: {i I} for U(n), empty otherwise.
  std::vector<AlgVec> center_basis() const;
  bool is_central(const GroupMat& g, double tol) const;

  /// Distance of g from G (unitarity, determinant, realness as applicable).
  double group_residual(const GroupMat& g) const;
  /// Distance of m from g.
  double algebra_residual(const AlgMat& m) const;

  AlgVec random_algebra(std::mt19937_64& rng, double scale = 1.0) const;
  /// Haar-distributed for compact models; exp of a Gaussian algebra element
  /// for SL(2,R).
  GroupMat random_element(std::mt19937_64& rng) const;

 private:
  LieModel(GroupKind kind, int n, std::string name, std::vector<AlgMat> basis);

  GroupKind kind_;
  int n_;
  std::string name_;
  std::vector<AlgMat> basis_;
  Eigen::VectorXd pairing_diag_;
  Eigen::VectorXd basis_norm2_;  // reference norms Re tr(B^* B)
};

}  // namespace planarep

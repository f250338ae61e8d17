#include "planarep/liegroup.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "planarep/errors.hpp"

namespace planarep {

namespace {

using cd = std::complex<double>;
constexpr cd I_(0.0, 1.0);
constexpr double kPi = std::numbers::pi;

AlgMat unit(int n, int r, int c) {
  AlgMat m = AlgMat::Zero(n, n);
  m(r, c) = 1.0;
  return m;
}

// sum_k d^k/(2k)! and sum_k d^k/(2k+1)!, i.e. cosh(sqrt d), sinh(sqrt d)/sqrt d
// continued through d <= 0.
std::pair<double, double> even_odd_series(double d) {
  if (std::abs(d) < 1e-6) {
    return {1.0 + d / 2.0 + d * d / 24.0, 1.0 + d / 6.0 + d * d / 120.0};
  }
  if (d > 0) {
    const double s = std::sqrt(d);
    return {std::cosh(s), std::sinh(s) / s};
  }
  const double s = std::sqrt(-d);
  return {std::cos(s), std::sin(s) / s};
}

}  // namespace

LieModel::LieModel(GroupKind kind, int n, std::string name, std::vector<AlgMat> basis)
    : kind_(kind), n_(n), name_(std::move(name)), basis_(std::move(basis)) {
  const int d = dim();
  pairing_diag_.resize(d);
  basis_norm2_.resize(d);
  for (int k = 0; k < d; ++k) {
    const cd tr = (basis_[k] * basis_[k]).trace();
    pairing_diag_(k) = kind_ == GroupKind::SL2R ? tr.real() : -tr.real();
    basis_norm2_(k) = (basis_[k].adjoint() * basis_[k]).trace().real();
  }
}

LieModel LieModel::su2() {
  AlgMat s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, I_, I_, 0;
  s2 << 0, 1, -1, 0;
  s3 << I_, 0, 0, -I_;
  return LieModel(GroupKind::SU2, 2, "SU2", {s1, s2, s3});
}

LieModel LieModel::u(int n) {
  if (n < 1) throw UnknownGroup("U(n) needs n >= 1");
  std::vector<AlgMat> basis;
  for (int k = 0; k < n; ++k) basis.push_back(I_ * unit(n, k, k));
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      basis.push_back(unit(n, k, l) - unit(n, l, k));
      basis.push_back(I_ * (unit(n, k, l) + unit(n, l, k)));
    }
  }
  return LieModel(GroupKind::U, n, "U" + std::to_string(n), std::move(basis));
}

LieModel LieModel::sl2r() {
  AlgMat h(2, 2), p(2, 2), q(2, 2);
  h << 1, 0, 0, -1;
  p << 0, 1, 1, 0;
  q << 0, 1, -1, 0;
  return LieModel(GroupKind::SL2R, 2, "SL2R", {h, p, q});
}

LieModel LieModel::from_name(std::string_view name) {
  if (name == "SU2") return su2();
  if (name == "SL2R") return sl2r();
  if (name.size() >= 2 && name.front() == 'U') {
    const std::string digits(name.substr(1));
    if (std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const int n = std::stoi(digits);
      if (n >= 1 && n <= 8) return u(n);
    }
  }
  throw UnknownGroup("unknown group '" + std::string(name) + "' (expected SU2, U1, U2, U3 or SL2R)");
}

const char* LieModel::pairing_convention() const {
  return kind_ == GroupKind::SL2R ? "trace" : "negative-trace";
}

AlgMat LieModel::to_matrix(const AlgVec& x) const {
  AlgMat m = AlgMat::Zero(n_, n_);
  for (int k = 0; k < dim(); ++k) m += x(k) * basis_[k];
  return m;
}

AlgVec LieModel::coords(const AlgMat& m) const {
  AlgVec x(dim());
  for (int k = 0; k < dim(); ++k) {
    x(k) = (basis_[k].adjoint() * m).trace().real() / basis_norm2_(k);
  }
  return x;
}

double LieModel::pairing(const AlgVec& x, const AlgVec& y) const {
  return x.cwiseProduct(pairing_diag_).dot(y);
}

AlgVec LieModel::bracket(const AlgVec& x, const AlgVec& y) const {
  const AlgMat a = to_matrix(x), b = to_matrix(y);
  return coords(a * b - b * a);
}

GroupMat LieModel::inverse(const GroupMat& g) const {
  if (compact()) return g.adjoint();
  return g.inverse();
}

GroupMat LieModel::exp(const AlgVec& x) const {
  const AlgMat m = to_matrix(x);
  if (kind_ == GroupKind::SL2R) {
    // X^2 = -det(X) I for traceless 2x2 X.
    const double d = -m.determinant().real();
    const auto [c, s] = even_odd_series(d);
    return c * identity() + s * m;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(-I_ * m);
  const Eigen::VectorXd lambda = es.eigenvalues();
  Eigen::VectorXcd phases(lambda.size());
  for (int k = 0; k < lambda.size(); ++k) phases(k) = std::exp(I_ * lambda(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

AlgVec LieModel::log_principal(const GroupMat& g, double branch_tol) const {
  if (kind_ == GroupKind::SL2R) {
    const double t = g.trace().real() / 2.0;
    const AlgMat traceless = g - t * identity();
    if (t > 1.0 + 1e-12) {
      const double s = std::acosh(t);
      return coords((s / std::sinh(s)) * traceless);
    }
    if (t > -1.0) {
      const double theta = std::acos(std::min(1.0, t));
      if (theta > kPi - branch_tol) throw LogBranchFailure("elliptic angle at the branch cut");
      const double f = theta < 1e-8 ? 1.0 + theta * theta / 6.0 : theta / std::sin(theta);
      return coords(f * traceless);
    }
    throw LogBranchFailure("trace <= -2: no principal real logarithm");
  }
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(g);
  const Eigen::MatrixXcd& u = schur.matrixU();
  const Eigen::MatrixXcd& t = schur.matrixT();
  Eigen::VectorXcd logs(n_);
  for (int k = 0; k < n_; ++k) {
    const double theta = std::arg(t(k, k));
    if (std::abs(theta) > kPi - branch_tol) {
      throw LogBranchFailure("eigenvalue argument " + std::to_string(theta) + " at the branch cut");
    }
    logs(k) = I_ * theta;
  }
  return coords(u * logs.asDiagonal() * u.adjoint());
}

Operator LieModel::Ad(const GroupMat& g) const {
  const GroupMat gi = inverse(g);
  Operator a(dim(), dim());
  for (int k = 0; k < dim(); ++k) a.col(k) = coords(g * basis_[k] * gi);
  return a;
}

Operator LieModel::ad(const AlgVec& x) const {
  const AlgMat m = to_matrix(x);
  Operator a(dim(), dim());
  for (int k = 0; k < dim(); ++k) a.col(k) = coords(m * basis_[k] - basis_[k] * m);
  return a;
}

bool LieModel::in_regular_domain(const AlgVec& x, double tol) const {
  if (dim() == 0) return true;
  Eigen::EigenSolver<Eigen::MatrixXd> es(ad(x), false);
  for (const cd& mu : es.eigenvalues()) {
    if (std::abs(mu) < tol) continue;
    if (std::abs(mu.real()) > tol * std::max(1.0, std::abs(mu))) continue;
    const double k = std::round(mu.imag() / (2 * kPi));
    if (k != 0 && std::abs(mu.imag() - 2 * kPi * k) < tol * std::max(1.0, std::abs(mu))) return false;
  }
  return true;
}

bool LieModel::segment_in_regular_domain(const AlgVec& x, double tol) const {
  if (dim() == 0) return true;
  Eigen::EigenSolver<Eigen::MatrixXd> es(ad(x), false);
  for (const cd& mu : es.eigenvalues()) {
    if (std::abs(mu.real()) > tol * std::max(1.0, std::abs(mu))) continue;
    if (std::abs(mu.imag()) >= 2 * kPi - tol) return false;
  }
  return true;
}

Operator LieModel::dexp(const AlgVec& x) const {
  const int d = dim();
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  block.topLeftCorner(d, d) = ad(x);
  block.topRightCorner(d, d) = Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd e = block.exp();
  return e.topRightCorner(d, d);
}

Operator LieModel::dexp_inverse(const AlgVec& x) const {
  if (!in_regular_domain(x)) throw SingularDexp("exp is not regular at this point");
  return dexp(x).partialPivLu().inverse();
}

std::vector<AlgVec> LieModel::center_basis() const {
  if (kind_ != GroupKind::U) return {};
  return {coords(I_ * identity())};
}

bool LieModel::is_central(const GroupMat& g, double tol) const {
  return (Ad(g) - Operator::Identity(dim(), dim())).norm() < tol;
}

double LieModel::group_residual(const GroupMat& g) const {
  if (g.rows() != n_ || g.cols() != n_) return std::numeric_limits<double>::infinity();
  if (kind_ == GroupKind::SL2R) {
    return std::abs(g.determinant() - 1.0) + g.imag().norm();
  }
  double r = (g.adjoint() * g - identity()).norm();
  if (kind_ == GroupKind::SU2) r += std::abs(g.determinant() - 1.0);
  return r;
}

double LieModel::algebra_residual(const AlgMat& m) const {
  return (m - to_matrix(coords(m))).norm();
}

AlgVec LieModel::random_algebra(std::mt19937_64& rng, double scale) const {
  std::normal_distribution<double> normal(0.0, scale);
  AlgVec x(dim());
  for (int k = 0; k < dim(); ++k) x(k) = normal(rng);
  return x;
}

GroupMat LieModel::random_element(std::mt19937_64& rng) const {
  std::normal_distribution<double> normal(0.0, 1.0);
  if (kind_ == GroupKind::SU2) {
    Eigen::Vector4d q;
    for (int k = 0; k < 4; ++k) q(k) = normal(rng);
    q.normalize();
    GroupMat g(2, 2);
    g << cd(q(0), q(1)), cd(q(2), q(3)), cd(-q(2), q(3)), cd(q(0), -q(1));
    return g;
  }
  if (kind_ == GroupKind::U) {
    Eigen::MatrixXcd z(n_, n_);
    for (int r = 0; r < n_; ++r) {
      for (int c = 0; c < n_; ++c) z(r, c) = cd(normal(rng), normal(rng)) / std::sqrt(2.0);
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < n_; ++k) {
      const cd d = r(k, k);
      q.col(k) *= std::abs(d) > 0 ? d / std::abs(d) : cd(1.0);
    }
    return q;
  }
  return exp(random_algebra(rng, 0.5));
}

}  // namespace planarep

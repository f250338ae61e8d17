#include "planarep/cohomology.hpp"

#include <algorithm>

#include "planarep/errors.hpp"

namespace planarep {

nlohmann::json Tolerances::to_json() const {
  return {{"rank_rel", rank_rel}, {"grp", grp}, {"cx", cx}, {"alg", alg}, {"quad_nodes", quad_nodes}};
}

RepPoint::RepPoint(PlanarPresentation pres, LieModel model, std::vector<GroupMat> generators)
    : pres_(std::move(pres)), model_(std::move(model)), gens_(std::move(generators)) {
  if (static_cast<int>(gens_.size()) != pres_.generator_count()) {
    throw ArityMismatch("point has " + std::to_string(gens_.size()) + " generators, presentation needs " +
                        std::to_string(pres_.generator_count()));
  }
  for (const auto& g : gens_) {
    if (g.rows() != model_.matrix_size() || g.cols() != model_.matrix_size()) {
      throw ArityMismatch("generator matrix has the wrong size for " + model_.name());
    }
    ad_gens_.push_back(model_.Ad(g));
  }
  for (const auto& w : pres_.relators()) relator_values_.push_back(value(w));
}

GroupMat RepPoint::value(const Word& w) const {
  GroupMat v = model_.identity();
  for (Letter l : w.letters()) {
    const GroupMat& g = gens_[generator_of(l)];
    v = is_inverse(l) ? GroupMat(v * model_.inverse(g)) : GroupMat(v * g);
  }
  return v;
}

Operator RepPoint::Ad(const Word& w) const { return model_.Ad(value(w)); }

bool RepPoint::is_torsion_point(double tol) const {
  for (int j = 0; j < pres_.torsion_count(); ++j) {
    if ((torsion_relator_value(j) - model_.identity()).norm() >= tol) return false;
  }
  return true;
}

bool RepPoint::relator_central(double tol) const { return model_.is_central(relator_value(), tol); }

RepPoint RepPoint::conjugated(const GroupMat& g) const {
  const GroupMat gi = model_.inverse(g);
  std::vector<GroupMat> out;
  for (const auto& x : gens_) out.push_back(g * x * gi);
  return RepPoint(pres_, model_, std::move(out));
}

nlohmann::json RepPoint::to_json() const {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : gens_) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < g.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < g.cols(); ++c) row.push_back({g(r, c).real(), g(r, c).imag()});
      rows.push_back(row);
    }
    gens.push_back(rows);
  }
  return {{"presentation", render(pres_)}, {"group", model_.name()}, {"generators", gens}};
}

RepPoint RepPoint::from_json(const nlohmann::json& j) {
  PlanarPresentation pres = parse_presentation(j.at("presentation").get<std::string>());
  LieModel model = LieModel::from_name(j.at("group").get<std::string>());
  std::vector<GroupMat> gens;
  for (const auto& rows : j.at("generators")) {
    const int n = static_cast<int>(rows.size());
    GroupMat g(n, n);
    for (int r = 0; r < n; ++r) {
      if (static_cast<int>(rows[r].size()) != n) throw MalformedInput("generator matrix is not square");
      for (int c = 0; c < n; ++c) {
        const auto& e = rows[r][c];
        if (e.is_array()) {
          g(r, c) = {e.at(0).get<double>(), e.at(1).get<double>()};
        } else {
          g(r, c) = {e.get<double>(), 0.0};
        }
      }
    }
    gens.push_back(g);
  }
  return RepPoint(std::move(pres), std::move(model), std::move(gens));
}

Eigen::MatrixXd cocycle_map(const RepPoint& pt, const Word& w) {
  const int d = pt.dim();
  const auto& model = pt.model();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(d, pt.cochain_dim());
  GroupMat prefix = model.identity();
  for (Letter l : w.letters()) {
    const int g = generator_of(l);
    const Operator ad_prefix = model.Ad(prefix);
    if (is_inverse(l)) {
      // u(s^-1) = -Ad_{s^-1} u(s)
      const GroupMat with_inverse = prefix * model.inverse(pt.generator(g));
      L.middleCols(g * d, d) -= model.Ad(with_inverse);
      prefix = with_inverse;
    } else {
      L.middleCols(g * d, d) += ad_prefix;
      prefix = prefix * pt.generator(g);
    }
  }
  return L;
}

AlgVec cocycle_extend(const RepPoint& pt, const Eigen::VectorXd& u, const Word& w) {
  return cocycle_map(pt, w) * u;
}

Operator evaluate(const RepPoint& pt, const GroupRingElt& x) {
  Operator out = Operator::Zero(pt.dim(), pt.dim());
  for (const auto& [w, q] : x.terms()) out += to_double(q) * pt.Ad(w);
  return out;
}

Eigen::MatrixXd delta0(const RepPoint& pt) {
  const int d = pt.dim();
  const int gens = pt.presentation().generator_count();
  Eigen::MatrixXd D0(gens * d, d);
  for (int s = 0; s < gens; ++s) {
    D0.middleRows(s * d, d) = Operator::Identity(d, d) - pt.Ad_generator(s);
  }
  return D0;
}

Eigen::MatrixXd delta1_free(const RepPoint& pt) {
  const int d = pt.dim();
  const auto& p = pt.presentation();
  const auto rels = p.relators();
  Eigen::MatrixXd D1(static_cast<int>(rels.size()) * d, pt.cochain_dim());
  for (std::size_t i = 0; i < rels.size(); ++i) {
    for (int s = 0; s < p.generator_count(); ++s) {
      D1.block(static_cast<int>(i) * d, s * d, d, d) = evaluate(pt, fox_derivative(rels[i], s));
    }
  }
  return D1;
}

Eigen::MatrixXd delta1_relator_row(const RepPoint& pt) {
  const int d = pt.dim();
  const auto& p = pt.presentation();
  Eigen::MatrixXd row(d, pt.cochain_dim());
  for (int s = 0; s < p.generator_count(); ++s) {
    row.middleCols(s * d, d) = evaluate(pt, fox_derivative(p.relator(), s));
  }
  return row;
}

RankInfo numerical_rank(const Eigen::MatrixXd& m, double rank_rel) {
  RankInfo info;
  if (m.size() == 0) return info;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd s = svd.singularValues();
  info.singular_values.assign(s.data(), s.data() + s.size());
  const double smax = s.size() ? s(0) : 0.0;
  info.threshold = rank_rel * std::max(smax, 1.0);
  for (double v : info.singular_values) {
    if (v > info.threshold) ++info.rank;
    if (v > info.threshold / 10 && v < info.threshold * 10) info.ambiguous = true;
  }
  return info;
}

Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& m, double rank_rel) {
  const int cols = static_cast<int>(m.cols());
  if (m.size() == 0) return Eigen::MatrixXd::Identity(cols, cols);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const int rank = numerical_rank(m, rank_rel).rank;
  return svd.matrixV().rightCols(cols - rank);
}

Eigen::MatrixXd range_basis(const Eigen::MatrixXd& m, double rank_rel) {
  if (m.size() == 0) return Eigen::MatrixXd::Zero(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
  const int rank = numerical_rank(m, rank_rel).rank;
  return svd.matrixU().leftCols(rank);
}

std::vector<int> fixed_dims(const RepPoint& pt, const Tolerances& tol) {
  const auto& p = pt.presentation();
  std::vector<int> f;
  for (int j = 0; j < p.torsion_count(); ++j) {
    const Operator a = pt.Ad_generator(p.z(j)) - Operator::Identity(pt.dim(), pt.dim());
    f.push_back(pt.dim() - numerical_rank(a, tol.rank_rel).rank);
  }
  return f;
}

Eigen::MatrixXd projective_subspace(const RepPoint& pt, const Tolerances& tol) {
  if (!pt.is_torsion_point(tol.grp)) {
    throw RelatorConstraintViolated("phi(z_j)^{m_j} differs from the identity");
  }
  const auto& p = pt.presentation();
  const int d = pt.dim();
  std::vector<Eigen::MatrixXd> blocks;
  int total = 2 * p.genus() * d;
  for (int j = 0; j < p.torsion_count(); ++j) {
    const Operator a = pt.Ad_generator(p.z(j));
    Operator norm = Operator::Zero(d, d);
    Operator power = Operator::Identity(d, d);
    for (int k = 0; k < p.torsion()[j]; ++k) {
      norm += power;
      power = power * a;
    }
    blocks.push_back(kernel_basis(norm, tol.rank_rel));
    total += static_cast<int>(blocks.back().cols());
  }
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(pt.cochain_dim(), total);
  const int handle_dim = 2 * p.genus() * d;
  P.topLeftCorner(handle_dim, handle_dim).setIdentity();
  int col = handle_dim;
  for (int j = 0; j < p.torsion_count(); ++j) {
    P.block(p.z(j) * d, col, d, blocks[j].cols()) = blocks[j];
    col += static_cast<int>(blocks[j].cols());
  }
  return P;
}

Eigen::MatrixXd delta1_projective(const RepPoint& pt, const Tolerances& tol) {
  return delta1_relator_row(pt) * projective_subspace(pt, tol);
}

int CochainData::euler_characteristic(const RepPoint& pt) const {
  const auto& p = pt.presentation();
  const int d = pt.dim();
  int chi = (2 - 2 * p.genus()) * d;
  for (int f : fixed) chi -= d - f;
  return chi;
}

CochainData compute_cohomology(const RepPoint& pt, const Tolerances& tol) {
  if (!pt.relator_central(tol.grp * 10)) {
    throw RelatorConstraintViolated("r(phi) is not central, so g_phi is not a pi-module");
  }
  CochainData cd;
  const int d = pt.dim();
  cd.D0 = delta0(pt);
  cd.D1_free = delta1_free(pt);
  cd.P = projective_subspace(pt, tol);
  cd.D1_proj = delta1_relator_row(pt) * cd.P;
  cd.fixed = fixed_dims(pt, tol);

  const Eigen::MatrixXd outside = cd.D0 - cd.P * (cd.P.transpose() * cd.D0);
  if (outside.norm() > std::max(tol.cx, tol.grp) * std::max(1.0, cd.D0.norm()) * 100) {
    throw RelatorConstraintViolated("coboundaries leave the projective subspace");
  }
  const Eigen::MatrixXd D0p = cd.P.transpose() * cd.D0;
  cd.complex_residual = (cd.D1_proj * D0p).norm();

  cd.rank_d0 = numerical_rank(cd.D0, tol.rank_rel);
  cd.rank_d1 = numerical_rank(cd.D1_proj, tol.rank_rel);
  const int p = cd.projective_dim();
  cd.h0 = d - cd.rank_d0.rank;
  cd.h1 = p - cd.rank_d1.rank - cd.rank_d0.rank;
  cd.h2 = d - cd.rank_d1.rank;

  cd.Z1 = cd.P * kernel_basis(cd.D1_proj, tol.rank_rel);
  cd.B1 = range_basis(cd.D0, tol.rank_rel);
  // Harmonic: kernel of delta1 orthogonal to the coboundaries.
  Eigen::MatrixXd stacked(cd.D1_proj.rows() + D0p.cols(), p);
  stacked << cd.D1_proj, D0p.transpose();
  const RankInfo stacked_rank = numerical_rank(stacked, tol.rank_rel);
  cd.H1 = cd.P * kernel_basis(stacked, tol.rank_rel);

  cd.tolerance_ambiguity = cd.rank_d0.ambiguous || cd.rank_d1.ambiguous || stacked_rank.ambiguous;
  if (cd.tolerance_ambiguity) cd.notes.push_back("ToleranceAmbiguity: singular value near the rank threshold");
  if (cd.H1.cols() != cd.h1) {
    cd.tolerance_ambiguity = true;
    cd.notes.push_back("ToleranceAmbiguity: harmonic basis size differs from h1");
  }
  return cd;
}

nlohmann::json CochainData::to_json() const {
  auto tail = [](const RankInfo& r) {
    nlohmann::json j = {{"rank", r.rank}, {"threshold", r.threshold}, {"ambiguous", r.ambiguous}};
    j["singular_values"] = r.singular_values;
    return j;
  };
  return {
      {"h0", h0},
      {"h1", h1},
      {"h2", h2},
      {"f", fixed},
      {"projective_dim", projective_dim()},
      {"complex_residual", complex_residual},
      {"delta0", tail(rank_d0)},
      {"delta1", tail(rank_d1)},
      {"tolerance_ambiguity", tolerance_ambiguity},
      {"notes", notes},
  };
}

}  // namespace planarep

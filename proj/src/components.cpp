#include "planarep/components.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "planarep/errors.hpp"

namespace planarep {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

bool special(const std::string& group) { return group.rfind("SU", 0) == 0; }

void enumerate_multisets(int m, int size, int start, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == size) {
    out.push_back(cur);
    return;
  }
  for (int k = start; k < m; ++k) {
    cur.push_back(k);
    enumerate_multisets(m, size, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::string TorsionClass::id() const {
  std::string s = group + ":m" + std::to_string(order) + ":[";
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(exponents[i]);
  }
  return s + "]";
}

GroupMat TorsionClass::representative() const {
  const int n = static_cast<int>(exponents.size());
  GroupMat g = GroupMat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    g(i, i) = std::polar(1.0, kTwoPi * exponents[i] / order);
  }
  return g;
}

std::vector<double> TorsionClass::angles() const {
  std::vector<double> a;
  for (int k : exponents) a.push_back(kTwoPi * k / order);
  return a;
}

double TorsionClass::su2_angle() const {
  const int k = exponents.front();
  return kTwoPi * std::min(k, order - k) / order;
}

bool TorsionClass::is_central() const {
  return std::adjacent_find(exponents.begin(), exponents.end(), std::not_equal_to<>()) == exponents.end();
}

nlohmann::json TorsionClass::to_json() const {
  return {{"id", id()}, {"group", group}, {"order", order}, {"exponents", exponents}, {"angles", angles()},
          {"central", is_central()}};
}

TorsionClass make_class(const LieModel& model, int order, std::vector<int> exponents) {
  if (model.kind() == GroupKind::SL2R) {
    throw UnsupportedModel("SL(2,R) torsion classes form continuous angle families");
  }
  if (order < 1) throw InfeasibleSpec("class order must be >= 1");
  if (static_cast<int>(exponents.size()) != model.matrix_size()) {
    throw InfeasibleSpec("class needs " + std::to_string(model.matrix_size()) + " exponents");
  }
  for (int& k : exponents) k = ((k % order) + order) % order;
  std::sort(exponents.begin(), exponents.end());
  if (model.kind() == GroupKind::SU2 &&
      std::accumulate(exponents.begin(), exponents.end(), 0) % order != 0) {
    throw InfeasibleSpec("eigenvalue product is not 1");
  }
  return TorsionClass{model.name(), order, std::move(exponents)};
}

TorsionClass su2_class(int order, int k) {
  return make_class(LieModel::su2(), order, {k, -k});
}

std::vector<TorsionClass> finite_order_classes(const LieModel& model, int order) {
  if (model.kind() == GroupKind::SL2R) {
    throw UnsupportedModel("SL(2,R) elliptic torsion classes are not a finite list");
  }
  if (order < 1) throw InfeasibleSpec("order must be >= 1");
  std::vector<std::vector<int>> sets;
  std::vector<int> cur;
  enumerate_multisets(order, model.matrix_size(), 0, cur, sets);
  std::vector<TorsionClass> out;
  for (auto& s : sets) {
    if (special(model.name()) && std::accumulate(s.begin(), s.end(), 0) % order != 0) continue;
    out.push_back(TorsionClass{model.name(), order, s});
  }
  return out;
}

std::vector<TorsionClass> component_label(const RepPoint& pt, double tol) {
  const auto& p = pt.presentation();
  const auto& model = pt.model();
  if (model.kind() == GroupKind::SL2R) throw UnsupportedModel("labels need a unitary model");
  std::vector<TorsionClass> labels;
  for (int j = 0; j < p.torsion_count(); ++j) {
    const int m = p.torsion()[j];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(pt.generator(p.z(j)), false);
    std::vector<int> ks;
    for (const auto& ev : es.eigenvalues()) {
      const double arg = std::arg(ev);
      const int k = static_cast<int>(std::lround(arg * m / kTwoPi));
      const std::complex<double> root = std::polar(1.0, kTwoPi * k / m);
      if (std::abs(ev - root) > tol) {
        throw ClassResolutionFailed("eigenvalue of phi(z_" + std::to_string(j + 1) +
                                    ") is not an m-th root of unity");
      }
      ks.push_back(k);
    }
    labels.push_back(make_class(model, m, ks));
  }
  return labels;
}

std::vector<Weight> weight_dictionary(const TorsionClass& cls) {
  if (cls.group == "SL2R") throw UnsupportedModel("weights need a unitary model");
  std::map<Rational, int> counts;
  for (int k : cls.exponents) ++counts[Rational(k, cls.order)];
  std::vector<Weight> out;
  for (const auto& [w, mult] : counts) out.push_back({w, mult});
  return out;
}

nlohmann::json weights_json(const std::vector<Weight>& w) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : w) {
    out.push_back({{"weight", rational_json(x.value)}, {"text", to_string(x.value)}, {"multiplicity", x.multiplicity}});
  }
  return out;
}

nlohmann::json StratumReport::to_json() const {
  nlohmann::json l = nlohmann::json::array();
  for (const auto& c : labels) l.push_back(c.id());
  return {{"stabilizer_dim", stabilizer_dim}, {"orbit_dim", orbit_dim}, {"h1", h1}, {"labels", l}};
}

StratumReport stratum_report(const RepPoint& pt, const Tolerances& tol) {
  const CochainData cd = compute_cohomology(pt, tol);
  StratumReport r;
  r.stabilizer_dim = cd.h0;
  r.orbit_dim = pt.dim() - cd.h0;
  r.h1 = cd.h1;
  if (pt.model().kind() != GroupKind::SL2R) r.labels = component_label(pt);
  return r;
}

}  // namespace planarep

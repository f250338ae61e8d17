#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "planarep/cohomology.hpp"
#include "planarep/liegroup.hpp"
#include "planarep/rational.hpp"

namespace planarep {

/// Conjugacy class of an element g with g^m = e in U(n) or SU(n), described
/// by the sorted exponents k_1 <= ... <= k_n of its eigenvalues exp(2 pi i k / m).
struct TorsionClass {
  std::string group;
  int order = 1;
  std::vector<int> exponents;

  /// e.g. "SU2:m4:[1,3]".
  std::string id() const;
  /// diag(exp(2 pi i k_1/m), ..., exp(2 pi i k_n/m)).
  GroupMat representative() const;
  /// Eigenvalue arguments 2 pi k / m.
  std::vector<double> angles() const;
  /// SU(2) class angle theta in [0, pi] (eigenvalues exp(+-i theta)).
  double su2_angle() const;
  bool is_central() const;

  bool operator==(const TorsionClass&) const = default;
  nlohmann::json to_json() const;
};

/// Validates and canonicalizes (sorts, reduces mod m) the exponents.
/// Throws UnsupportedModel for SL(2,R) and InfeasibleSpec for exponent lists
/// that do not define a class of the model.
TorsionClass make_class(const LieModel& model, int order, std::vector<int> exponents);
/// SU(2) class with eigenvalues exp(+-2 pi i k/m).
TorsionClass su2_class(int order, int k);

/// All conjugacy classes of elements with g^m = e. Throws UnsupportedModel for SL(2,R).
std::vector<TorsionClass> finite_order_classes(const LieModel& model, int order);

/// Class of phi(z_j) for each torsion generator. Throws ClassResolutionFailed
/// when an eigenvalue is not within tol of an m_j-th root of unity.
std::vector<TorsionClass> component_label(const RepPoint& pt, double tol = 1e-6);

struct Weight {
  Rational value;
  int multiplicity = 0;
};

/// Parabolic weights k/m with multiplicities.
std::vector<Weight> weight_dictionary(const TorsionClass& cls);
nlohmann::json weights_json(const std::vector<Weight>& w);

struct StratumReport {
  int stabilizer_dim = 0;
  int orbit_dim = 0;
  int h1 = 0;
  std::vector<TorsionClass> labels;
  nlohmann::json to_json() const;
};

StratumReport stratum_report(const RepPoint& pt, const Tolerances& tol = {});

}  // namespace planarep

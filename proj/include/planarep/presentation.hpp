#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "planarep/rational.hpp"
#include "planarep/word.hpp"

namespace planarep {

/// Presentation of a cocompact planar group
///
///   < x_1, y_1, ..., x_l, y_l, z_1, ..., z_n |
///     r = [x_1,y_1]...[x_l,y_l] z_1...z_n,  r_j = z_j^{m_j} >
///
/// Generators are indexed x_j -> 2(j-1), y_j -> 2(j-1)+1, z_j -> 2l+(j-1).
class PlanarPresentation {
 public:
  PlanarPresentation() = default;
  /// Throws TorsionOrderTooSmall if some m_j < 2.
  PlanarPresentation(int genus, std::vector<int> torsion);

  int genus() const { return genus_; }
  const std::vector<int>& torsion() const { return torsion_; }
  int torsion_count() const { return static_cast<int>(torsion_.size()); }
  int generator_count() const { return 2 * genus_ + torsion_count(); }
  int relator_count() const { return 1 + torsion_count(); }

  int x(int j) const { return 2 * j; }
  int y(int j) const { return 2 * j + 1; }
  int z(int j) const { return 2 * genus_ + j; }

  /// The long relator.
  const Word& relator() const { return relator_; }
  /// r_j = z_j^{m_j}.
  const Word& torsion_relator(int j) const { return torsion_relators_[j]; }
  /// All relators in the order r, r_1, ..., r_n.
  std::vector<Word> relators() const;

  /// Least common multiple of the torsion orders (1 when there is no torsion).
  std::int64_t lcm() const { return lcm_; }

  /// Display names. With a single handle the names are x, y; with a single
  /// torsion generator z; otherwise subscripted x1, y1, z1, ...
  const std::vector<std::string>& generator_names() const { return names_; }

  bool operator==(const PlanarPresentation& o) const {
    return genus_ == o.genus_ && torsion_ == o.torsion_;
  }

 private:
  int genus_ = 0;
  std::vector<int> torsion_;
  Word relator_;
  std::vector<Word> torsion_relators_;
  std::int64_t lcm_ = 1;
  std::vector<std::string> names_;
};

/// Accepts "genus=<int>; torsion=<comma list or empty>" or the explicit form
/// "< gens | relators >". The explicit form must list the handle generators
/// first and the torsion generators last, with the long relator first and the
/// torsion relators in generator order.
PlanarPresentation parse_presentation(std::string_view text);

/// Short form, "genus=1; torsion=2,3".
std::string render(const PlanarPresentation& p);
/// Explicit form, "< x,y,z | [x,y] z, z^2 >".
std::string render_explicit(const PlanarPresentation& p);

struct Warning {
  std::string kind;
  std::string message;
};

/// 2l - 2 + sum_j (1 - 1/m_j), exact. Appends a FiniteGroupWarning when the
/// value is negative.
Rational measure(const PlanarPresentation& p, std::vector<Warning>* warnings = nullptr);

nlohmann::json to_json(const PlanarPresentation& p);

/// Central extension with generator h and relators
///   [h,x_j], [h,y_j], [h,z_j],  r h^{-b},  r_j h^{-beta_j}.
class ExtensionPresentation {
 public:
  /// Throws ArityMismatch unless beta has one entry per torsion generator.
  ExtensionPresentation(PlanarPresentation base, std::int64_t b, std::vector<std::int64_t> beta);

  const PlanarPresentation& base() const { return base_; }
  std::int64_t b() const { return b_; }
  const std::vector<std::int64_t>& beta() const { return beta_; }

  int central_generator() const { return base_.generator_count(); }
  std::vector<std::string> generator_names() const;
  /// Relators as words in 2l+n+1 generators, in the order listed above.
  std::vector<Word> relators() const;

  /// "< x,y,z,h | [h,x], [h,y], [h,z], r h^-1, z^2 > where r = [x,y] z".
  std::string render() const;
  /// Same with r written out.
  std::string render_expanded() const;

  bool operator==(const ExtensionPresentation& o) const {
    return base_ == o.base_ && b_ == o.b_ && beta_ == o.beta_;
  }

 private:
  PlanarPresentation base_;
  std::int64_t b_;
  std::vector<std::int64_t> beta_;
};

ExtensionPresentation extension_presentation(const PlanarPresentation& p, std::int64_t b,
                                             std::vector<std::int64_t> beta);

/// Parses either rendering produced by ExtensionPresentation.
ExtensionPresentation parse_extension_presentation(std::string_view text);

}  // namespace planarep

#pragma once

#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "planarep/presentation.hpp"
#include "planarep/rational.hpp"
#include "planarep/word.hpp"

namespace planarep {

/// Element of the rational group ring of a free group. Zero coefficients are
/// never stored.
class GroupRingElt {
 public:
  GroupRingElt() = default;
  static GroupRingElt of(const Word& w, Rational q = 1);
  static GroupRingElt one() { return of(Word()); }

  const std::map<Word, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Word& w) const;

  /// Sum of coefficients (image under the augmentation map).
  Rational augmentation() const;

  void add(const Word& w, Rational q);
  GroupRingElt& operator+=(const GroupRingElt& o);
  GroupRingElt& operator-=(const GroupRingElt& o);
  GroupRingElt operator+(const GroupRingElt& o) const { auto r = *this; return r += o; }
  GroupRingElt operator-(const GroupRingElt& o) const { auto r = *this; return r -= o; }
  GroupRingElt operator*(const GroupRingElt& o) const;
  GroupRingElt operator*(const Rational& q) const;

  bool operator==(const GroupRingElt&) const = default;

 private:
  std::map<Word, Rational> terms_;
};

/// Fox derivative d w / d s_gen.
GroupRingElt fox_derivative(const Word& w, int gen);

/// Chain of the reduced normalized bar complex of a free group (or of its
/// quotient, for pi-labelled chains) with rational coefficients. A cell is a
/// list of words [g_1|...|g_k]; cells containing the identity are dropped.
class BarChain {
 public:
  using Cell = std::vector<Word>;

  explicit BarChain(int degree = 2, bool pi_labelled = false)
      : degree_(degree), pi_labelled_(pi_labelled) {}

  int degree() const { return degree_; }
  bool pi_labelled() const { return pi_labelled_; }
  const std::map<Cell, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Cell& c) const;

  void add(Cell cell, Rational q);
  BarChain& operator+=(const BarChain& o);
  BarChain& operator-=(const BarChain& o);
  BarChain operator*(const Rational& q) const;

  /// d[g_1|...|g_k] = [g_2|...|g_k] + sum_i (-1)^i [..|g_i g_{i+1}|..] + (-1)^k [g_1|...|g_{k-1}],
  /// so that d[g|h] = [h] - [gh] + [g].
  BarChain boundary() const;

  bool operator==(const BarChain& o) const { return degree_ == o.degree_ && terms_ == o.terms_; }

 private:
  int degree_;
  bool pi_labelled_;
  std::map<Cell, Rational> terms_;
};

BarChain bar_cell(std::vector<Word> cell, Rational q = 1);

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Matrix of the abelianized boundary on {r, r_1, ..., r_n}: one row per
/// relator, one column per generator.
RationalMatrix abelianized_boundary(const PlanarPresentation& p);

struct FundamentalCycle {
  /// b = m r - (m/m_1) r_1 - ... - (m/m_n) r_n, coefficients over {r, r_1, ...}.
  std::vector<Rational> b;
  /// kappa = b / m.
  std::vector<Rational> kappa;
  std::int64_t m = 1;
};

/// Throws FillVerificationFailed if the abelianized boundary of b is nonzero.
FundamentalCycle fundamental_cycle(const PlanarPresentation& p);

/// Telescoping filling: sum_{i<k} [s_1...s_i | s_{i+1}], with boundary
/// sum_i [s_i] - [w].
BarChain fill_word(const Word& w);

/// The 2-chain c with dc = [r] - sum_j (1/m_j)[r_j], checked exactly.
BarChain relator_filling_chain(const PlanarPresentation& p);

struct PiChain {
  BarChain chain;
  /// Words carrying the boundary of c; each is a relator, hence trivial in pi.
  std::vector<Word> boundary_support;
};

/// Reinterprets c as a chain of pi. Throws FillVerificationFailed if the
/// boundary of c is not carried by relators.
PiChain push_to_pi(const BarChain& c, const PlanarPresentation& p);

nlohmann::json chain_json(const BarChain& c);
nlohmann::json group_ring_json(const GroupRingElt& x);
/// "e - x y x^-1", coefficients shown unless they are 1.
std::string format_group_ring(const GroupRingElt& x, std::span<const std::string> names);

}  // namespace planarep

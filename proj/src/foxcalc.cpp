#include "planarep/foxcalc.hpp"

#include <algorithm>
#include <set>

#include "planarep/errors.hpp"

namespace planarep {

GroupRingElt GroupRingElt::of(const Word& w, Rational q) {
  GroupRingElt x;
  x.add(w, q);
  return x;
}

Rational GroupRingElt::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational GroupRingElt::augmentation() const {
  Rational sum = 0;
  for (const auto& [w, q] : terms_) sum += q;
  return sum;
}

void GroupRingElt::add(const Word& w, Rational q) {
  if (q.numerator() == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, q);
  if (!inserted) {
    it->second += q;
    if (it->second.numerator() == 0) terms_.erase(it);
  }
}

GroupRingElt& GroupRingElt::operator+=(const GroupRingElt& o) {
  for (const auto& [w, q] : o.terms_) add(w, q);
  return *this;
}

GroupRingElt& GroupRingElt::operator-=(const GroupRingElt& o) {
  for (const auto& [w, q] : o.terms_) add(w, -q);
  return *this;
}

GroupRingElt GroupRingElt::operator*(const GroupRingElt& o) const {
  GroupRingElt out;
  for (const auto& [a, p] : terms_) {
    for (const auto& [b, q] : o.terms_) out.add(a * b, p * q);
  }
  return out;
}

GroupRingElt GroupRingElt::operator*(const Rational& q) const {
  GroupRingElt out;
  for (const auto& [w, p] : terms_) out.add(w, p * q);
  return out;
}

GroupRingElt fox_derivative(const Word& w, int gen) {
  GroupRingElt out;
  Word prefix;
  for (Letter l : w.letters()) {
    if (generator_of(l) == gen) {
      if (is_inverse(l)) {
        out.add(prefix * Word({l}), -1);
      } else {
        out.add(prefix, 1);
      }
    }
    prefix *= Word({l});
  }
  return out;
}

Rational BarChain::coefficient(const Cell& c) const {
  auto it = terms_.find(c);
  return it == terms_.end() ? Rational(0) : it->second;
}

void BarChain::add(Cell cell, Rational q) {
  if (static_cast<int>(cell.size()) != degree_) {
    throw FillVerificationFailed("cell degree mismatch");
  }
  if (q.numerator() == 0) return;
  if (std::any_of(cell.begin(), cell.end(), [](const Word& w) { return w.empty(); })) return;
  auto [it, inserted] = terms_.try_emplace(std::move(cell), q);
  if (!inserted) {
    it->second += q;
    if (it->second.numerator() == 0) terms_.erase(it);
  }
}

BarChain& BarChain::operator+=(const BarChain& o) {
  for (const auto& [c, q] : o.terms_) add(c, q);
  return *this;
}

BarChain& BarChain::operator-=(const BarChain& o) {
  for (const auto& [c, q] : o.terms_) add(c, -q);
  return *this;
}

BarChain BarChain::operator*(const Rational& q) const {
  BarChain out(degree_, pi_labelled_);
  for (const auto& [c, p] : terms_) out.add(c, p * q);
  return out;
}

BarChain BarChain::boundary() const {
  if (degree_ < 1) throw FillVerificationFailed("boundary of a 0-chain");
  BarChain out(degree_ - 1, pi_labelled_);
  if (degree_ == 1) return out;  // d[g] = 0 with trivial coefficients
  for (const auto& [cell, q] : terms_) {
    const int k = degree_;
    out.add(Cell(cell.begin() + 1, cell.end()), q);
    for (int i = 1; i < k; ++i) {
      Cell face;
      for (int j = 0; j < k; ++j) {
        if (j == i - 1) {
          face.push_back(cell[j] * cell[j + 1]);
          ++j;
        } else {
          face.push_back(cell[j]);
        }
      }
      out.add(std::move(face), (i % 2 == 0) ? q : -q);
    }
    out.add(Cell(cell.begin(), cell.end() - 1), (k % 2 == 0) ? q : -q);
  }
  return out;
}

BarChain bar_cell(std::vector<Word> cell, Rational q) {
  BarChain c(static_cast<int>(cell.size()));
  c.add(std::move(cell), q);
  return c;
}

RationalMatrix abelianized_boundary(const PlanarPresentation& p) {
  const auto rels = p.relators();
  RationalMatrix m(rels.size(), std::vector<Rational>(p.generator_count(), Rational(0)));
  for (std::size_t i = 0; i < rels.size(); ++i) {
    for (int g = 0; g < p.generator_count(); ++g) m[i][g] = signed_count(rels[i], g);
  }
  return m;
}

FundamentalCycle fundamental_cycle(const PlanarPresentation& p) {
  FundamentalCycle fc;
  fc.m = p.lcm();
  fc.b.push_back(Rational(fc.m));
  for (int mj : p.torsion()) fc.b.push_back(Rational(-(fc.m / mj)));
  for (const auto& q : fc.b) fc.kappa.push_back(q / fc.m);

  const auto d = abelianized_boundary(p);
  for (int g = 0; g < p.generator_count(); ++g) {
    Rational sum = 0;
    for (std::size_t i = 0; i < fc.b.size(); ++i) sum += fc.b[i] * d[i][g];
    if (sum.numerator() != 0) throw FillVerificationFailed("abelianized boundary of b is nonzero");
  }
  return fc;
}

BarChain fill_word(const Word& w) {
  BarChain c(2);
  for (std::size_t i = 1; i < w.length(); ++i) {
    c.add({w.prefix(i), Word({w.letters()[i]})}, 1);
  }
  return c;
}

BarChain relator_filling_chain(const PlanarPresentation& p) {
  BarChain c = fill_word(p.relator()) * Rational(-1);
  for (int j = 0; j < p.torsion_count(); ++j) {
    c += fill_word(p.torsion_relator(j)) * Rational(1, p.torsion()[j]);
  }

  BarChain target(1);
  target.add({p.relator()}, 1);
  for (int j = 0; j < p.torsion_count(); ++j) {
    target.add({p.torsion_relator(j)}, -Rational(1, p.torsion()[j]));
  }

  // Leftover single-letter cells come in pairs [s] + [s^-1]; d[s|s^-1] = [s] + [s^-1].
  BarChain residual = c.boundary();
  residual -= target;
  for (int g = 0; g < p.generator_count(); ++g) {
    const Word s = Word::generator(g);
    const Rational a = residual.coefficient({s});
    if (a.numerator() != 0) c.add({s, s.inverse()}, -a);
  }

  BarChain check = c.boundary();
  check -= target;
  if (!check.is_zero()) {
    throw FillVerificationFailed("boundary of the filling chain differs from [r] - sum (1/m_j)[r_j]");
  }
  return c;
}

PiChain push_to_pi(const BarChain& c, const PlanarPresentation& p) {
  PiChain out{BarChain(c.degree(), true), {}};
  out.chain += c;
  const auto rels = p.relators();
  const BarChain boundary = c.boundary();
  for (const auto& [cell, q] : boundary.terms()) {
    if (std::find(rels.begin(), rels.end(), cell.front()) == rels.end()) {
      throw FillVerificationFailed("boundary of c is not carried by relators");
    }
    out.boundary_support.push_back(cell.front());
  }
  return out;
}

nlohmann::json chain_json(const BarChain& c) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& [cell, q] : c.terms()) {
    nlohmann::json words = nlohmann::json::array();
    for (const auto& w : cell) words.push_back(word_json(w));
    cells.push_back({{"cell", words}, {"coeff", rational_json(q)}});
  }
  return {{"degree", c.degree()}, {"pi_labelled", c.pi_labelled()}, {"cells", cells}};
}

nlohmann::json group_ring_json(const GroupRingElt& x) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [w, q] : x.terms()) terms.push_back({{"word", word_json(w)}, {"coeff", rational_json(q)}});
  return terms;
}

std::string format_group_ring(const GroupRingElt& x, std::span<const std::string> names) {
  if (x.terms().empty()) return "0";
  std::string out;
  for (const auto& [w, q] : x.terms()) {
    const bool negative = q.numerator() < 0;
    const Rational a = negative ? -q : q;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (a.numerator() != a.denominator()) out += to_string(a) + " ";
    out += format_word(w, names);
  }
  return out;
}

}  // namespace planarep

#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace planarep {

// A letter is a signed 1-based generator index: +k is generator k-1 and -k its
// inverse. Generators themselves are indexed 0..N-1.
using Letter = int;

inline constexpr Letter letter_of(int generator) { return generator + 1; }
inline constexpr Letter inverse_letter_of(int generator) { return -(generator + 1); }
inline constexpr int generator_of(Letter l) { return (l > 0 ? l : -l) - 1; }
inline constexpr bool is_inverse(Letter l) { return l < 0; }

/// Freely reduced word in a free group. The empty word is the identity.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);
  static Word generator(int g) { return Word({letter_of(g)}); }

  std::span<const Letter> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  Word pow(int e) const;
  Word operator*(const Word& other) const;
  Word& operator*=(const Word& other) { return *this = *this * other; }

  /// Prefix consisting of the first k letters.
  Word prefix(std::size_t k) const;

  auto operator<=>(const Word&) const = default;
  bool operator==(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

Word commutator(const Word& a, const Word& b);

/// Exponent sum of generator g in w.
int signed_count(const Word& w, int g);

/// Renders w with the given generator names, e.g. "x y x^-1 y^-1 z".
/// Runs of the same letter are collapsed into powers.
std::string format_word(const Word& w, std::span<const std::string> names);

nlohmann::json word_json(const Word& w);
Word word_from_json(const nlohmann::json& j);

}  // namespace planarep

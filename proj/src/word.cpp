#include "planarep/word.hpp"

#include <cstdlib>

#include "planarep/errors.hpp"

namespace planarep {

Word::Word(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (Letter l : letters) {
    if (l == 0) throw MalformedInput("letter 0 is not a generator");
    if (!letters_.empty() && letters_.back() == -l) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& l : out) l = -l;
  Word w;
  w.letters_ = std::move(out);
  return w;
}

Word Word::pow(int e) const {
  const Word base = e >= 0 ? *this : inverse();
  Word out;
  for (int i = 0; i < std::abs(e); ++i) out *= base;
  return out;
}

Word Word::operator*(const Word& other) const {
  Word out = *this;
  for (Letter l : other.letters_) {
    if (!out.letters_.empty() && out.letters_.back() == -l) {
      out.letters_.pop_back();
    } else {
      out.letters_.push_back(l);
    }
  }
  return out;
}

Word Word::prefix(std::size_t k) const {
  Word w;
  w.letters_.assign(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(k));
  return w;
}

Word commutator(const Word& a, const Word& b) {
  return a * b * a.inverse() * b.inverse();
}

int signed_count(const Word& w, int g) {
  int count = 0;
  for (Letter l : w.letters()) {
    if (generator_of(l) == g) count += is_inverse(l) ? -1 : 1;
  }
  return count;
}

std::string format_word(const Word& w, std::span<const std::string> names) {
  if (w.empty()) return "e";
  std::string out;
  auto letters = w.letters();
  std::size_t i = 0;
  while (i < letters.size()) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    const int run = static_cast<int>(j - i);
    const int g = generator_of(letters[i]);
    const int exponent = is_inverse(letters[i]) ? -run : run;
    if (!out.empty()) out += ' ';
    out += g < static_cast<int>(names.size()) ? names[g] : "g" + std::to_string(g);
    if (exponent != 1) out += "^" + std::to_string(exponent);
    i = j;
  }
  return out;
}

nlohmann::json word_json(const Word& w) {
  return nlohmann::json(std::vector<Letter>(w.letters().begin(), w.letters().end()));
}

Word word_from_json(const nlohmann::json& j) {
  return Word(j.get<std::vector<Letter>>());
}

}  // namespace planarep

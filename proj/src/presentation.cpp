#include "planarep/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "planarep/errors.hpp"

namespace planarep {

PlanarPresentation::PlanarPresentation(int genus, std::vector<int> torsion)
    : genus_(genus), torsion_(std::move(torsion)) {
  if (genus_ < 0) throw MalformedInput("genus must be nonnegative");
  for (int m : torsion_) {
    if (m < 2) throw TorsionOrderTooSmall("torsion order " + std::to_string(m) + " < 2");
  }
  for (int j = 0; j < genus_; ++j) {
    relator_ *= commutator(Word::generator(x(j)), Word::generator(y(j)));
  }
  for (int j = 0; j < torsion_count(); ++j) {
    relator_ *= Word::generator(z(j));
    torsion_relators_.push_back(Word::generator(z(j)).pow(torsion_[j]));
    lcm_ = std::lcm(lcm_, static_cast<std::int64_t>(torsion_[j]));
  }
  const bool single_handle = genus_ == 1;
  const bool single_torsion = torsion_count() == 1;
  for (int j = 0; j < genus_; ++j) {
    names_.push_back(single_handle ? "x" : "x" + std::to_string(j + 1));
    names_.push_back(single_handle ? "y" : "y" + std::to_string(j + 1));
  }
  for (int j = 0; j < torsion_count(); ++j) {
    names_.push_back(single_torsion ? "z" : "z" + std::to_string(j + 1));
  }
}

std::vector<Word> PlanarPresentation::relators() const {
  std::vector<Word> out{relator_};
  out.insert(out.end(), torsion_relators_.begin(), torsion_relators_.end());
  return out;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_top_level(std::string_view s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

int parse_int(std::string_view s, const char* what) {
  const std::string t = trim(s);
  if (t.empty()) throw MalformedInput(std::string("empty ") + what);
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(t, &pos);
  } catch (const std::exception&) {
    throw MalformedInput(std::string("expected integer for ") + what + ", got '" + t + "'");
  }
  if (pos != t.size()) {
    throw MalformedInput(std::string("expected integer for ") + what + ", got '" + t + "'");
  }
  return value;
}

// Recursive-descent parser for words:
//   word   := factor*
//   factor := atom ('^' int)?
//   atom   := name | '[' word ',' word ']' | '(' word ')' | '1'
class WordParser {
 public:
  WordParser(std::string_view text, const std::map<std::string, int>& generators,
             const std::map<std::string, Word>& macros)
      : text_(text), generators_(generators), macros_(macros) {}

  Word parse() {
    Word w = word();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw MalformedInput(msg + " in word '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '*')) {
      ++pos_;
    }
  }

  bool at_factor_start() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return std::isalpha(static_cast<unsigned char>(c)) || c == '[' || c == '(' || c == '1';
  }

  Word word() {
    Word w;
    while (at_factor_start()) w *= factor();
    return w;
  }

  Word factor() {
    Word a = atom();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_space();
      std::size_t start = pos_;
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("missing exponent");
      const std::string digits(text_.substr(start, pos_ - start));
      if (digits == "-" || digits == "+") fail("missing exponent");
      a = a.pow(std::stoi(digits));
    }
    return a;
  }

  Word atom() {
    skip_space();
    const char c = text_[pos_];
    if (c == '1') {
      ++pos_;
      return Word();
    }
    if (c == '(') {
      ++pos_;
      Word w = word();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word a = word();
      expect(',');
      Word b = word();
      expect(']');
      return commutator(a, b);
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    if (auto it = generators_.find(name); it != generators_.end()) {
      return Word::generator(it->second);
    }
    if (auto it = macros_.find(name); it != macros_.end()) return it->second;
    fail("unknown generator '" + name + "'");
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  const std::map<std::string, int>& generators_;
  const std::map<std::string, Word>& macros_;
};

struct RawPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  std::map<std::string, int> index;
};

// "< gens | relators > [where r = word]"
RawPresentation parse_raw(std::string_view text, bool allow_where) {
  std::string body = trim(text);
  std::string where_clause;
  if (const auto close = body.rfind('>'); close != std::string::npos) {
    where_clause = trim(std::string_view(body).substr(close + 1));
    body = body.substr(0, close + 1);
  }
  if (body.size() < 2 || body.front() != '<' || body.back() != '>') {
    throw MalformedInput("explicit presentation must be enclosed in < >");
  }
  body = body.substr(1, body.size() - 2);
  auto bar = body.find('|');
  if (bar == std::string::npos) bar = body.find(';');
  if (bar == std::string::npos) throw MalformedInput("missing '|' between generators and relators");

  RawPresentation raw;
  for (const auto& name : split_top_level(std::string_view(body).substr(0, bar), ',')) {
    if (name.empty()) continue;
    for (char c : name) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
        throw MalformedInput("bad generator name '" + name + "'");
      }
    }
    if (!std::isalpha(static_cast<unsigned char>(name.front()))) {
      throw MalformedInput("bad generator name '" + name + "'");
    }
    if (raw.index.count(name)) throw MalformedInput("duplicate generator '" + name + "'");
    raw.index[name] = static_cast<int>(raw.generators.size());
    raw.generators.push_back(name);
  }

  std::map<std::string, Word> macros;
  if (!where_clause.empty()) {
    if (!allow_where || where_clause.rfind("where", 0) != 0) {
      throw MalformedInput("unexpected trailing text '" + where_clause + "'");
    }
    const std::string def = trim(std::string_view(where_clause).substr(5));
    const auto eq = def.find('=');
    if (eq == std::string::npos) throw MalformedInput("where-clause needs '='");
    const std::string name = trim(std::string_view(def).substr(0, eq));
    if (raw.index.count(name)) throw MalformedInput("where-clause shadows a generator");
    macros[name] = WordParser(std::string_view(def).substr(eq + 1), raw.index, {}).parse();
  }

  std::string_view rels = std::string_view(body).substr(bar + 1);
  if (!trim(rels).empty()) {
    for (const auto& rel : split_top_level(rels, ',')) {
      if (rel.empty()) throw MalformedInput("empty relator");
      raw.relators.push_back(WordParser(rel, raw.index, macros).parse());
    }
  }
  return raw;
}

// If w = g^k for a single generator g with k >= 1, returns (g, k).
std::optional<std::pair<int, int>> as_generator_power(const Word& w) {
  if (w.empty()) return std::nullopt;
  const Letter first = w.letters().front();
  for (Letter l : w.letters()) {
    if (l != first) return std::nullopt;
  }
  if (is_inverse(first)) return std::nullopt;
  return std::make_pair(generator_of(first), static_cast<int>(w.length()));
}

PlanarPresentation parse_short(std::string_view text) {
  int genus = -1;
  std::optional<std::vector<int>> torsion;
  for (const auto& part : split_top_level(text, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw MalformedInput("expected key=value, got '" + part + "'");
    const std::string key = trim(std::string_view(part).substr(0, eq));
    const std::string value = trim(std::string_view(part).substr(eq + 1));
    if (key == "genus") {
      if (genus >= 0) throw MalformedInput("genus given twice");
      genus = parse_int(value, "genus");
      if (genus < 0) throw MalformedInput("genus must be nonnegative");
    } else if (key == "torsion") {
      if (torsion) throw MalformedInput("torsion given twice");
      torsion.emplace();
      if (!value.empty()) {
        for (const auto& m : split_top_level(value, ',')) torsion->push_back(parse_int(m, "torsion order"));
      }
    } else {
      throw MalformedInput("unknown key '" + key + "'");
    }
  }
  if (genus < 0) throw MalformedInput("missing genus");
  if (!torsion) throw MalformedInput("missing torsion");
  return PlanarPresentation(genus, *torsion);
}

PlanarPresentation parse_explicit(std::string_view text) {
  const RawPresentation raw = parse_raw(text, false);
  const int total = static_cast<int>(raw.generators.size());
  if (raw.relators.empty()) throw RelatorShapeMismatch("no relators");

  std::vector<int> torsion;
  for (std::size_t i = 1; i < raw.relators.size(); ++i) {
    auto power = as_generator_power(raw.relators[i]);
    if (!power) throw RelatorShapeMismatch("relator " + std::to_string(i + 1) + " is not a generator power");
    const int expected_gen = total - static_cast<int>(raw.relators.size() - 1) + static_cast<int>(i - 1);
    if (power->first != expected_gen) {
      throw RelatorShapeMismatch("torsion relators must be powers of the trailing generators, in order");
    }
    if (power->second < 2) {
      throw TorsionOrderTooSmall("torsion order " + std::to_string(power->second) + " < 2");
    }
    torsion.push_back(power->second);
  }
  const int handles = total - static_cast<int>(torsion.size());
  if (handles < 0 || handles % 2 != 0) {
    throw RelatorShapeMismatch("need an even number of handle generators");
  }
  PlanarPresentation p(handles / 2, torsion);
  if (raw.relators.front() != p.relator()) {
    throw RelatorShapeMismatch("long relator is not [x1,y1]...[xl,yl] z1...zn");
  }
  return p;
}

std::string render_long_relator(const PlanarPresentation& p) {
  const auto& names = p.generator_names();
  std::string out;
  for (int j = 0; j < p.genus(); ++j) out += "[" + names[p.x(j)] + "," + names[p.y(j)] + "]";
  for (int j = 0; j < p.torsion_count(); ++j) {
    if (!out.empty()) out += ' ';
    out += names[p.z(j)];
  }
  return out.empty() ? "1" : out;
}

std::string render_torsion_relator(const PlanarPresentation& p, int j) {
  return p.generator_names()[p.z(j)] + "^" + std::to_string(p.torsion()[j]);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string h_power(std::int64_t exponent) {
  if (exponent == 0) return "";
  return " h^" + std::to_string(exponent);
}

}  // namespace

PlanarPresentation parse_presentation(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw MalformedInput("empty presentation");
  if (t.front() == '<') return parse_explicit(t);
  return parse_short(t);
}

std::string render(const PlanarPresentation& p) {
  std::string out = "genus=" + std::to_string(p.genus()) + "; torsion=";
  for (int j = 0; j < p.torsion_count(); ++j) {
    if (j) out += ',';
    out += std::to_string(p.torsion()[j]);
  }
  return out;
}

std::string render_explicit(const PlanarPresentation& p) {
  std::vector<std::string> rels{render_long_relator(p)};
  for (int j = 0; j < p.torsion_count(); ++j) rels.push_back(render_torsion_relator(p, j));
  return "< " + join(p.generator_names(), ",") + " | " + join(rels, ", ") + " >";
}

Rational measure(const PlanarPresentation& p, std::vector<Warning>* warnings) {
  Rational mu(2 * p.genus() - 2);
  for (int m : p.torsion()) mu += Rational(1) - Rational(1, m);
  if (mu.numerator() < 0 && warnings) {
    warnings->push_back({"FiniteGroupWarning",
                         "measure " + to_string(mu) + " is negative: the group is finite"});
  }
  return mu;
}

nlohmann::json to_json(const PlanarPresentation& p) {
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& w : p.relators()) rels.push_back(word_json(w));
  return {
      {"genus", p.genus()},
      {"torsion", p.torsion()},
      {"generators", p.generator_names()},
      {"lcm", p.lcm()},
      {"measure", rational_json(measure(p))},
      {"relators", rels},
      {"text", render(p)},
      {"explicit", render_explicit(p)},
  };
}

ExtensionPresentation::ExtensionPresentation(PlanarPresentation base, std::int64_t b,
                                             std::vector<std::int64_t> beta)
    : base_(std::move(base)), b_(b), beta_(std::move(beta)) {
  if (static_cast<int>(beta_.size()) != base_.torsion_count()) {
    throw ArityMismatch("beta has " + std::to_string(beta_.size()) + " entries, expected " +
                        std::to_string(base_.torsion_count()));
  }
}

std::vector<std::string> ExtensionPresentation::generator_names() const {
  auto names = base_.generator_names();
  names.push_back("h");
  return names;
}

std::vector<Word> ExtensionPresentation::relators() const {
  const Word h = Word::generator(central_generator());
  std::vector<Word> out;
  for (int g = 0; g < base_.generator_count(); ++g) out.push_back(commutator(h, Word::generator(g)));
  out.push_back(base_.relator() * h.pow(static_cast<int>(-b_)));
  for (int j = 0; j < base_.torsion_count(); ++j) {
    out.push_back(base_.torsion_relator(j) * h.pow(static_cast<int>(-beta_[j])));
  }
  return out;
}

namespace {

std::string render_extension(const ExtensionPresentation& e, bool abbreviate) {
  const auto& base = e.base();
  const auto names = e.generator_names();
  std::vector<std::string> rels;
  for (int g = 0; g < base.generator_count(); ++g) rels.push_back("[h," + names[g] + "]");
  rels.push_back((abbreviate ? std::string("r") : render_long_relator(base)) + h_power(-e.b()));
  for (int j = 0; j < base.torsion_count(); ++j) {
    rels.push_back(render_torsion_relator(base, j) + h_power(-e.beta()[j]));
  }
  std::string out = "< " + join(names, ",") + " | " + join(rels, ", ") + " >";
  if (abbreviate) out += " where r = " + render_long_relator(base);
  return out;
}

}  // namespace

std::string ExtensionPresentation::render() const { return render_extension(*this, true); }
std::string ExtensionPresentation::render_expanded() const { return render_extension(*this, false); }

ExtensionPresentation extension_presentation(const PlanarPresentation& p, std::int64_t b,
                                             std::vector<std::int64_t> beta) {
  return ExtensionPresentation(p, b, std::move(beta));
}

ExtensionPresentation parse_extension_presentation(std::string_view text) {
  const RawPresentation raw = parse_raw(text, true);
  const int total = static_cast<int>(raw.generators.size());
  if (total < 1 || raw.generators.back() != "h") {
    throw RelatorShapeMismatch("the central generator h must be listed last");
  }
  const int base_count = total - 1;
  const int h = base_count;
  const int n = static_cast<int>(raw.relators.size()) - base_count - 1;
  if (n < 0) throw RelatorShapeMismatch("too few relators for an extension presentation");
  const Word hw = Word::generator(h);
  for (int g = 0; g < base_count; ++g) {
    if (raw.relators[g] != commutator(hw, Word::generator(g))) {
      throw RelatorShapeMismatch("expected [h," + raw.generators[g] + "] as relator " +
                                 std::to_string(g + 1));
    }
  }
  // Splits w = u h^e with u free of h.
  auto strip_h = [&](const Word& w) {
    auto letters = w.letters();
    std::size_t k = letters.size();
    int e = 0;
    while (k > 0 && generator_of(letters[k - 1]) == h) {
      e += is_inverse(letters[k - 1]) ? -1 : 1;
      --k;
    }
    Word u = w.prefix(k);
    if (std::any_of(u.letters().begin(), u.letters().end(),
                    [&](Letter l) { return generator_of(l) == h; })) {
      throw RelatorShapeMismatch("h may only appear as a trailing power");
    }
    return std::make_pair(u, e);
  };

  std::vector<int> torsion;
  std::vector<std::int64_t> beta;
  for (int j = 0; j < n; ++j) {
    auto [u, e] = strip_h(raw.relators[base_count + 1 + j]);
    auto power = as_generator_power(u);
    if (!power || power->first != base_count - n + j) {
      throw RelatorShapeMismatch("torsion relators must be powers of the trailing generators");
    }
    if (power->second < 2) throw TorsionOrderTooSmall("torsion order < 2");
    torsion.push_back(power->second);
    beta.push_back(-e);
  }
  const int handles = base_count - n;
  if (handles < 0 || handles % 2 != 0) throw RelatorShapeMismatch("need an even number of handle generators");
  PlanarPresentation base(handles / 2, torsion);
  auto [u, e] = strip_h(raw.relators[base_count]);
  if (u != base.relator()) throw RelatorShapeMismatch("long relator has the wrong shape");
  return ExtensionPresentation(base, -e, beta);
}

}  // namespace planarep

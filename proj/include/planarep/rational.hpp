#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include <boost/rational.hpp>
#include <nlohmann/json.hpp>

namespace planarep {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

inline nlohmann::json rational_json(const Rational& q) {
  return {{"num", q.numerator()}, {"den", q.denominator()}};
}

inline Rational rational_from_json(const nlohmann::json& j) {
  return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

inline double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

}  // namespace planarep

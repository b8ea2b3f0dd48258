#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sketchmc {

/// Exact rational arithmetic. Probabilities and thresholds stay exact until
/// the checker converts them to doubles.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Parses "3", "-2", "0.25" or "1/3" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational num(text.substr(0, slash));
    Rational den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return num / den;
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(text);
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  std::size_t frac_len = text.size() - dot - 1;
  Rational scale = 1;
  for (std::size_t i = 0; i < frac_len; ++i) scale *= 10;
  return Rational(digits) / scale;
}

}  // namespace sketchmc

#include "chebconvex/rational.hpp"

#include <cctype>
#include <cstddef>

#include "chebconvex/errors.hpp"

namespace chebconvex {

namespace {

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string trimmed(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const std::string s = trimmed(text);
  if (s.empty()) raise(ErrorCode::BadSpec, "empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = trimmed(s.substr(0, slash));
    const std::string den = trimmed(s.substr(slash + 1));
    if (!is_integer_literal(num) || !is_integer_literal(den))
      raise(ErrorCode::BadSpec, "rational literal must be integer/integer: '" + text + "'");
    Integer n(num), d(den);
    if (d == 0) raise(ErrorCode::BadSpec, "zero denominator in '" + text + "'");
    return Rational(n, d);
  }

  if (is_integer_literal(s)) return Rational(Integer(s));

  // Finite decimal: digits '.' digits.
  const auto dot = s.find('.');
  if (dot == std::string::npos) raise(ErrorCode::BadSpec, "malformed rational literal '" + text + "'");
  std::string ipart = s.substr(0, dot);
  const std::string fpart = s.substr(dot + 1);
  bool negative = false;
  if (!ipart.empty() && (ipart[0] == '+' || ipart[0] == '-')) {
    negative = ipart[0] == '-';
    ipart = ipart.substr(1);
  }
  if (ipart.empty() && fpart.empty()) raise(ErrorCode::BadSpec, "malformed rational literal '" + text + "'");
  for (char c : ipart + fpart)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      raise(ErrorCode::BadSpec, "malformed rational literal '" + text + "'");

  Integer scale = 1;
  for (std::size_t i = 0; i < fpart.size(); ++i) scale *= 10;
  Integer units = ipart.empty() ? Integer(0) : Integer(ipart);
  Integer frac = fpart.empty() ? Integer(0) : Integer(fpart);
  Rational value = Rational(units * scale + frac, scale);
  return negative ? Rational(-value) : value;
}

std::string to_fraction_string(const Rational& r) {
  const Integer num = numerator(r);
  const Integer den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace chebconvex

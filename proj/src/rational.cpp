#include "linf/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace linf {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer_literal(num, true) || (slash != std::string_view::npos && !is_integer_literal(den, false))) {
    throw std::invalid_argument("not an exact rational: \"" + std::string(text) + "\"");
  }
  if (num.front() == '+') num.remove_prefix(1);
  using Integer = boost::multiprecision::mpz_int;
  const Integer n{std::string(num)};
  if (slash == std::string_view::npos) return Rational(n);
  const Integer d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
  return Rational(n) / Rational(d);
}

std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
  return q.str();
}

Rational inverse_factorial(int k) {
  Rational f(1);
  for (int i = 2; i <= k; ++i) f *= i;
  return Rational(1) / f;
}

}  // namespace linf

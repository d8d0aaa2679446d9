#include "twospace/rational.hpp"

#include <cctype>
#include <ostream>

namespace twospace {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty())
    return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size())
    return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      return false;
  return true;
}

} // namespace

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(text))
      throw ParseError("rational: bad integer string '" + text + "'");
    return Rational(mpz_class(text), mpz_class(1));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den))
    throw ParseError("rational: bad fraction string '" + text + "'");
  mpz_class d(den);
  if (d == 0)
    throw ParseError("rational: zero denominator in '" + text + "'");
  return Rational(mpz_class(num), std::move(d));
}

std::string Rational::str() const {
  if (den() == 1)
    return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

double Rational::to_double() const {
  // IEEE division of the two (truncated) parts rounds to nearest, which is
  // exact whenever numerator and denominator fit in 53 bits.
  return num().get_d() / den().get_d();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

Rational abs(const Rational& r) {
  return r.sign() < 0 ? -r : r;
}

} // namespace twospace

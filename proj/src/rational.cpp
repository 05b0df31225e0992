#include "wcl/rational.hpp"

namespace wcl {

Rational parse_rational(const std::string& text) {
  auto bad = [&] { throw std::invalid_argument("malformed rational: '" + text + "'"); };
  if (text.empty()) bad();
  std::size_t slash = text.find('/');
  auto digits_ok = [](const std::string& s, bool sign_ok) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (sign_ok && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!digits_ok(text, true)) bad();
    return Rational(BigInt(text));
  }
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) bad();
  BigInt d(den);
  if (d == 0) bad();
  return Rational(BigInt(num), d);
}

std::string format_rational(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace wcl

#include "ddim/arith.hpp"

#include <cctype>

#include "ddim/errors.hpp"

namespace ddim {

Integer binomial_poly(const Integer& x, int k) {
  if (k < 0) return 0;
  Integer num = 1;
  Integer den = 1;
  for (int i = 0; i < k; ++i) {
    num *= x - i;
    den *= i + 1;
  }
  return num / den;  // exact: k consecutive integers are divisible by k!
}

Rational parse_rational(const std::string& text) {
  auto valid_int = [](const std::string& s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw ArgumentError("malformed rational '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  Rational q{Integer(num), Integer(den)};
  if (q.get_den() == 0) throw ArgumentError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Integer& v) { return v.get_str(); }
std::string to_string(const Rational& v) { return v.get_str(); }

std::string to_string(const IntVec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

std::string to_string(const MultiIndex& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

}  // namespace ddim

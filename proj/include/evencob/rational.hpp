#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace evencob {

// GMP keeps mpq_class values canonical after every arithmetic operation:
// positive denominator, coprime parts, zero stored as 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

class RationalFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses `p/q` or a bare integer. Rejects decimals and zero denominators.
inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw RationalFormatError("empty rational literal");
  auto valid_int = [](std::string_view s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string num(text.substr(0, slash));
  std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  if (!valid_int(num, true) || !valid_int(den, false))
    throw RationalFormatError("malformed rational literal '" + std::string(text) + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer d(den);
  if (d == 0) throw RationalFormatError("zero denominator in '" + std::string(text) + "'");
  Rational r{Integer(num), d};
  r.canonicalize();
  return r;
}

/// Integers print bare, everything else as `p/q`.
inline std::string format_rational(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline int sign(const Rational& r) { return sgn(r); }

}  // namespace evencob

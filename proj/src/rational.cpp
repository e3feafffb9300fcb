#include "openchain/rational.hpp"

#include <ostream>

namespace openchain {

Rational Rational::parse(const std::string& text) {
  if (text.empty()) fail("ParseError", "empty rational literal");
  std::string s = text;
  // mpq_class accepts "num/den" directly but tolerates junk like "1/".
  auto slash = s.find('/');
  auto check_int = [&](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!check_int(s)) fail("ParseError", "bad rational literal '" + text + "'");
  } else {
    if (!check_int(s.substr(0, slash)) || !check_int(s.substr(slash + 1)))
      fail("ParseError", "bad rational literal '" + text + "'");
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0) fail("ParseError", "bad rational literal '" + text + "'");
  if (q.get_den() == 0) fail("DivisionByZero", "rational with zero denominator");
  q.canonicalize();
  Rational r;
  r.v_ = q;
  return r;
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace openchain

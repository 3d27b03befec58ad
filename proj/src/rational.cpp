#include "filiform/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace filiform {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  q_ /= o.q_;
  return *this;
}

static bool all_digits(const std::string& s, size_t from) {
  if (from >= s.size()) return false;
  for (size_t i = from; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Rational Rational::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  size_t off = (!num.empty() && (num[0] == '-' || num[0] == '+')) ? 1 : 0;
  if (!all_digits(num, off)) throw std::invalid_argument("not a rational: '" + text + "'");
  if (num[0] == '+') num = num.substr(1);
  mpz_class n(num, 10);
  if (slash == std::string::npos) return Rational(n);
  std::string den = s.substr(slash + 1);
  if (!all_digits(den, 0)) throw std::invalid_argument("not a rational: '" + text + "'");
  mpz_class d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  return Rational(mpq_class(n, d));
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& r, unsigned e) {
  Rational out(1);
  for (unsigned i = 0; i < e; ++i) out *= r;
  return out;
}

}  // namespace filiform

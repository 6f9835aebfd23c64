#include "t5/rational.hpp"

#include <cmath>
#include <ostream>

#include "t5/errors.hpp"

namespace t5 {

Rational::Rational(long num, long den) {
  if (den == 0) throw SingularMatrix("Rational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational Rational::inv() const {
  if (is_zero()) throw SingularMatrix("Rational: division by zero");
  return Rational(mpq_class(1 / v_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw SingularMatrix("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("not a rational: '" + std::string(whole) + "'");
  mpz_class z(std::string(s), 10);
  return neg ? mpz_class(-z) : z;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty rational");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class n = parse_integer(s.substr(0, slash), text);
    std::string_view ds = s.substr(slash + 1);
    if (!ds.empty() && ds[0] == '+') ds.remove_prefix(1);
    if (!all_digits(ds)) throw ParseError("not a rational: '" + std::string(text) + "'");
    mpz_class d(std::string(ds), 10);
    if (d == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    return Rational(mpq_class(n, d));
  }

  // Decimal with optional exponent.
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    const mpz_class ez = parse_integer(s.substr(e + 1), text);
    if (!ez.fits_slong_p() || ::abs(ez) > 4096) throw ParseError("exponent out of range: '" + std::string(text) + "'");
    exponent = ez.get_si();
    s = s.substr(0, e);
  }
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
      throw ParseError("not a rational: '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) throw ParseError("not a rational: '" + std::string(text) + "'");
    digits = std::string(s);
  }
  mpz_class n(digits, 10);
  if (neg) n = -n;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  mpq_class q = exponent < 0 ? mpq_class(n, p10) : mpq_class(n * p10);
  return Rational(std::move(q));
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw ParseError("non-finite double has no rational value");
  return Rational(mpq_class(x));
}

std::string Rational::str() const { return v_.get_str(10); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace t5

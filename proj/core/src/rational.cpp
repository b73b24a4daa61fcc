#include "lipmod/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace lipmod {

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_.canonicalize();
}

Rational Rational::from_double(double d) {
  if (!std::isfinite(d)) throw std::domain_error("non-finite double to rational");
  mpq_class q(d);
  q.canonicalize();
  return Rational(q);
}

double Rational::to_double() const {
  // mpq_get_d truncates; take a 55-bit quotient plus a sticky bit instead.
  if (v_ == 0) return 0.0;
  const mpz_class num = ::abs(v_.get_num());
  const mpz_class& den = v_.get_den();
  const long shift = 55 - (static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
  mpz_class a = num, b = den;
  if (shift >= 0) a <<= static_cast<mp_bitcnt_t>(shift);
  else b <<= static_cast<mp_bitcnt_t>(-shift);
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  long s = shift;
  if (mpz_sizeinbase(q.get_mpz_t(), 2) > 55) {  // quotient came out with 56 bits
    if (mpz_odd_p(q.get_mpz_t())) r = 1;
    q >>= 1;
    --s;
  }
  const bool sticky = r != 0;
  const unsigned long low = mpz_get_ui(q.get_mpz_t()) & 3UL;
  q >>= 2;
  if ((low & 2UL) && ((low & 1UL) || sticky || mpz_odd_p(q.get_mpz_t()))) ++q;
  const double d = std::ldexp(q.get_d(), static_cast<int>(2 - s));
  return sgn(v_) < 0 ? -d : d;
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    mpz_class n, d;
    if (n.set_str(s.substr(0, slash), 10) != 0 || d.set_str(s.substr(slash + 1), 10) != 0)
      throw std::invalid_argument("malformed rational literal '" + s + "'");
    return Rational(n, d);
  }
  if (s.find_first_of(".eE") == std::string::npos) {
    mpz_class n;
    if (n.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
      throw std::invalid_argument("malformed integer literal '" + s + "'");
    return Rational(n, 1);
  }
  // Decimal: mantissa digits with optional point, optional exponent.
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') neg = s[pos++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; pos < s.size() && s[pos] != 'e' && s[pos] != 'E'; ++pos) {
    if (s[pos] == '.') {
      if (seen_point) throw std::invalid_argument("malformed decimal '" + s + "'");
      seen_point = true;
    } else if (s[pos] >= '0' && s[pos] <= '9') {
      digits.push_back(s[pos]);
      if (seen_point) ++frac_digits;
    } else {
      throw std::invalid_argument("malformed decimal '" + s + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("malformed decimal '" + s + "'");
  long exponent = 0;
  if (pos < s.size()) {
    const std::string e = s.substr(pos + 1);
    if (e.empty()) throw std::invalid_argument("malformed decimal '" + s + "'");
    try {
      std::size_t used = 0;
      exponent = std::stol(e, &used);
      if (used != e.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed decimal exponent '" + s + "'");
    }
  }
  mpz_class mant(digits, 10);
  if (neg) mant = -mant;
  const long shift = exponent - frac_digits;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  return shift >= 0 ? Rational(mant * ten_pow, 1) : Rational(mant, ten_pow);
}

std::string Rational::str() const { return v_.get_str(10); }

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational");
  return Rational(v_.get_den(), v_.get_num());
}

Rational Rational::pow(unsigned e) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), e);
  return Rational(n, d);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational");
  v_ /= o.v_;
  return *this;
}

Rational rationalize(double d, std::int64_t max_den) {
  if (!std::isfinite(d)) throw std::domain_error("non-finite double to rationalize");
  // Convergents h/k of the continued fraction of a (computed exactly from d).
  mpq_class x(d);
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    mpz_class h2 = a * h1 + h0;
    mpz_class k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    mpq_class frac = x - mpq_class(a);
    if (sgn(frac) == 0) break;
    x = 1 / frac;
  }
  if (k1 == 0) return Rational(0);
  return Rational(h1, k1);
}

bool exact_sqrt(const Rational& q, Rational& root) {
  if (q.sign() < 0) return false;
  mpz_class n = q.num(), d = q.den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0)
    return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  root = Rational(rn, rd);
  return true;
}

}  // namespace lipmod

#include "lipmod/quadext.hpp"

#include <cmath>
#include <stdexcept>

namespace lipmod {

QuadExt::QuadExt(const Rational& u, const Rational& v, const Rational& d) : u_(u), v_(v), d_(d) {
  normalize();
}

void QuadExt::normalize() {
  if (v_.is_zero()) {
    d_ = Rational(0);
    return;
  }
  Rational root;
  if (exact_sqrt(d_, root)) {
    u_ += v_ * root;
    v_ = Rational(0);
    d_ = Rational(0);
  }
}

QuadExt QuadExt::sqrt(const Rational& d) { return QuadExt(Rational(0), Rational(1), d); }

Rational QuadExt::common_field(const QuadExt& a, const QuadExt& b) {
  if (a.v_.is_zero()) return b.d_;
  if (b.v_.is_zero()) return a.d_;
  if (a.d_ != b.d_) throw std::domain_error("QuadExt: operands from different fields");
  return a.d_;
}

QuadExt QuadExt::conj() const { return QuadExt(u_, -v_, d_); }

Rational QuadExt::norm() const { return u_ * u_ - v_ * v_ * d_; }

int QuadExt::sign() const {
  if (v_.is_zero()) return u_.sign();
  if (d_.sign() < 0) throw std::domain_error("QuadExt::sign on a non-real element");
  const int su = u_.sign(), sv = v_.sign();
  if (su == 0) return sv;
  if (su == sv) return su;
  // Opposite signs: compare u² with v²d.
  const Rational lhs = u_ * u_, rhs = v_ * v_ * d_;
  if (lhs == rhs) return 0;
  return lhs > rhs ? su : sv;
}

Complex QuadExt::to_complex() const {
  if (v_.is_zero()) return {u_.to_double(), 0.0};
  const Complex root = std::sqrt(Complex(d_.to_double(), 0.0));
  if (d_.sign() > 0 && u_.sign() * v_.sign() < 0) {
    // u + v√d = norm / (u − v√d) avoids cancellation between opposite signs.
    return Complex(norm().to_double() / (u_.to_double() - v_.to_double() * root.real()), 0.0);
  }
  return Complex(u_.to_double(), 0.0) + v_.to_double() * root;
}

std::string QuadExt::str() const {
  if (v_.is_zero()) return u_.str();
  std::string rad = "sqrt(" + d_.str() + ")";
  std::string vpart;
  if (v_ == Rational(1)) vpart = rad;
  else if (v_ == Rational(-1)) vpart = "-" + rad;
  else vpart = v_.str() + "*" + rad;
  if (u_.is_zero()) return vpart;
  return u_.str() + (v_.sign() > 0 ? "+" : "") + vpart;
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  d_ = common_field(*this, o);
  u_ += o.u_;
  v_ += o.v_;
  normalize();
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
  d_ = common_field(*this, o);
  u_ -= o.u_;
  v_ -= o.v_;
  normalize();
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
  const Rational d = common_field(*this, o);
  const Rational u = u_ * o.u_ + v_ * o.v_ * d;
  const Rational v = u_ * o.v_ + v_ * o.u_;
  u_ = u;
  v_ = v;
  d_ = d;
  normalize();
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
  if (o.is_zero()) throw std::domain_error("QuadExt division by zero");
  const Rational n = o.norm();
  QuadExt num = *this * o.conj();
  u_ = num.u_ / n;
  v_ = num.v_ / n;
  d_ = num.d_;
  normalize();
  return *this;
}

bool operator==(const QuadExt& a, const QuadExt& b) {
  if (!a.v_.is_zero() && !b.v_.is_zero() && a.d_ != b.d_) return real_algebraic_equal(a, b);
  return a.u_ == b.u_ && a.v_ == b.v_;
}

int real_algebraic_compare(const QuadExt& a, const QuadExt& b) {
  if (a.is_rational() || b.is_rational() || a.d() == b.d()) return (a - b).sign();
  // a − b = A − C with A = (u1 − u2) + v1√d1 and C = v2√d2.
  const QuadExt big_a = QuadExt(a.u() - b.u(), a.v(), a.d());
  const int sa = big_a.sign();
  const int sc = b.v().sign();
  if (sa != sc) return sa > sc ? 1 : -1;
  if (sa == 0) return 0;
  const QuadExt diff_sq = big_a * big_a - QuadExt(b.v() * b.v() * b.d());
  return sa > 0 ? diff_sq.sign() : -diff_sq.sign();
}

bool real_algebraic_equal(const QuadExt& a, const QuadExt& b) { return real_algebraic_compare(a, b) == 0; }

}  // namespace lipmod

#include "lipmod/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "lipmod/error.hpp"

namespace lipmod {

bool Scalar::is_zero() const {
  if (const auto* r = std::get_if<Rational>(&v_)) return r->is_zero();
  const Complex z = std::get<Complex>(v_);
  return z.real() == 0.0 && z.imag() == 0.0;
}

const Rational& Scalar::rational() const {
  if (const auto* r = std::get_if<Rational>(&v_)) return *r;
  throw DomainError("complex_in_exact_operation",
                    "exact operation received complex value " + str());
}

Complex Scalar::complex() const {
  if (const auto* r = std::get_if<Rational>(&v_)) return {r->to_double(), 0.0};
  return std::get<Complex>(v_);
}

std::string format_double(double d) {
  if (d == 0.0) return "0";
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, d);
    if (std::strtod(buf, nullptr) == d) break;
  }
  return buf;
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_double(z.real());
  std::string s = "(" + format_double(z.real());
  s += z.imag() < 0 ? "-" : "+";
  s += format_double(std::abs(z.imag())) + "i)";
  return s;
}

std::string Scalar::str() const {
  if (const auto* r = std::get_if<Rational>(&v_)) return r->str();
  return format_complex(std::get<Complex>(v_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_exact() && o.is_exact())
    v_ = std::get<Rational>(v_) + std::get<Rational>(o.v_);
  else
    v_ = complex() + o.complex();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_exact() && o.is_exact())
    v_ = std::get<Rational>(v_) - std::get<Rational>(o.v_);
  else
    v_ = complex() - o.complex();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_exact() && o.is_exact())
    v_ = std::get<Rational>(v_) * std::get<Rational>(o.v_);
  else
    v_ = complex() * o.complex();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("scalar division by zero");
  if (is_exact() && o.is_exact())
    v_ = std::get<Rational>(v_) / std::get<Rational>(o.v_);
  else
    v_ = complex() / o.complex();
  return *this;
}

Scalar operator-(const Scalar& a) {
  if (a.is_exact()) return Scalar(-std::get<Rational>(a.v_));
  return Scalar(-std::get<Complex>(a.v_));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return std::get<Rational>(a.v_) == std::get<Rational>(b.v_);
  if (a.is_exact() || b.is_exact()) {
    // Compare the exact side against the exact binary value of the other.
    const Scalar& ex = a.is_exact() ? a : b;
    const Complex z = (a.is_exact() ? b : a).complex();
    if (z.imag() != 0.0 || !std::isfinite(z.real())) return false;
    return ex.rational() == Rational::from_double(z.real());
  }
  return a.complex() == b.complex();
}

Scalar Scalar::pow(unsigned e) const {
  if (const auto* r = std::get_if<Rational>(&v_)) return Scalar(r->pow(e));
  Complex acc(1.0, 0.0), base = std::get<Complex>(v_);
  for (; e != 0; e >>= 1) {
    if (e & 1U) acc *= base;
    base *= base;
  }
  return Scalar(acc);
}

bool scalar_less(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() < b.rational();
  const Complex x = a.complex(), y = b.complex();
  if (x.real() != y.real()) return x.real() < y.real();
  if (x.imag() != y.imag()) return x.imag() < y.imag();
  return a.is_exact() && !b.is_exact();
}

bool scalar_close(const Scalar& a, const Scalar& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
  const Complex x = a.complex(), y = b.complex();
  const double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) <= tol * scale;
}

}  // namespace lipmod

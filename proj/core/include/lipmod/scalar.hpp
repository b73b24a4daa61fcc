#pragma once

#include <complex>
#include <string>
#include <variant>

#include "lipmod/rational.hpp"

namespace lipmod {

using Complex = std::complex<double>;

/// Coefficient type: an exact Rational or a complex double. Mixed arithmetic
/// promotes to complex; exact-only operations reject the complex tag.
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(const Rational& r) : v_(r) {}  // NOLINT(google-explicit-constructor)
  Scalar(long r) : v_(Rational(r)) {}   // NOLINT(google-explicit-constructor)
  Scalar(Complex z) : v_(z) {}          // NOLINT(google-explicit-constructor)

  bool is_exact() const { return std::holds_alternative<Rational>(v_); }
  bool is_zero() const;
  /// Throws DomainError("complex_in_exact_operation") on the complex tag.
  const Rational& rational() const;
  Complex complex() const;
  double magnitude() const { return std::abs(complex()); }

  /// "p" / "p/q" for exact values, "(re+imi)" with round-trip precision otherwise.
  std::string str() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a);

  /// Exact equality for two rationals, bitwise equality of complex values
  /// otherwise (a rational compares equal to its exact complex image).
  friend bool operator==(const Scalar& a, const Scalar& b);

  Scalar pow(unsigned e) const;

 private:
  std::variant<Rational, Complex> v_;
};

/// Deterministic total order: exact values by value, then by (re, im).
bool scalar_less(const Scalar& a, const Scalar& b);

/// |a - b| <= tol * max(1, |a|, |b|) for complex, exact equality otherwise.
bool scalar_close(const Scalar& a, const Scalar& b, double tol);

std::string format_double(double d);
std::string format_complex(Complex z);

}  // namespace lipmod

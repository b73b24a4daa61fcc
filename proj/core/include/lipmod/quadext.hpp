#pragma once

#include <string>

#include "lipmod/rational.hpp"
#include "lipmod/scalar.hpp"

namespace lipmod {

/// Element u + v·√d of Q(√d), d a non-square rational. Values with v = 0
/// are plain rationals and mix freely with any field; combining two
/// irrational elements over different d is an error.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(const Rational& u) : u_(u) {}  // NOLINT(google-explicit-constructor)
  QuadExt(long u) : u_(u) {}             // NOLINT(google-explicit-constructor)
  QuadExt(const Rational& u, const Rational& v, const Rational& d);

  /// The principal square root of d: rational when d is a rational square.
  static QuadExt sqrt(const Rational& d);

  const Rational& u() const { return u_; }
  const Rational& v() const { return v_; }
  /// Radicand; 0 when the value is rational.
  const Rational& d() const { return d_; }

  bool is_rational() const { return v_.is_zero(); }
  bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
  QuadExt conj() const;
  /// u² − v²d, the field norm.
  Rational norm() const;
  /// Sign of the real number u + v√d (requires d > 0 or v = 0).
  int sign() const;
  Complex to_complex() const;
  double to_double() const { return to_complex().real(); }
  /// "u", "v*sqrt(d)" or "u+v*sqrt(d)" with u, v in p/q form.
  std::string str() const;

  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);
  QuadExt& operator/=(const QuadExt& o);
  friend QuadExt operator+(QuadExt a, const QuadExt& b) { return a += b; }
  friend QuadExt operator-(QuadExt a, const QuadExt& b) { return a -= b; }
  friend QuadExt operator*(QuadExt a, const QuadExt& b) { return a *= b; }
  friend QuadExt operator/(QuadExt a, const QuadExt& b) { return a /= b; }
  friend QuadExt operator-(const QuadExt& a) { return QuadExt(Rational(0)) - a; }
  friend bool operator==(const QuadExt& a, const QuadExt& b);

 private:
  Rational u_{0};
  Rational v_{0};
  Rational d_{0};

  void normalize();
  static Rational common_field(const QuadExt& a, const QuadExt& b);
};

/// Exact test of u1 + v1√d1 == u2 + v2√d2 over the reals when the radicands
/// may differ (both d1, d2 > 0).
bool real_algebraic_equal(const QuadExt& a, const QuadExt& b);

/// Exact order of two real elements of possibly different fields.
int real_algebraic_compare(const QuadExt& a, const QuadExt& b);

}  // namespace lipmod

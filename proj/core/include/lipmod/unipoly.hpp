#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lipmod/scalar.hpp"

namespace lipmod {

/// Dense univariate polynomial, coefficients low to high, never with a
/// stored zero leading coefficient.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Scalar> coeffs);
  static UniPoly constant(const Scalar& c);
  static UniPoly monomial(unsigned k, const Scalar& c);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_exact() const;
  Scalar coeff(unsigned k) const { return k < c_.size() ? c_[k] : Scalar(0); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar lead() const { return c_.empty() ? Scalar(0) : c_.back(); }
  /// Order of vanishing at 0; -1 for the zero polynomial.
  int low_degree() const;

  Scalar eval(const Scalar& t) const;
  Complex eval_complex(Complex t) const;
  UniPoly monic() const;
  /// Drops complex coefficients with |c| <= tol * max|c|.
  UniPoly chop(double tol) const;
  std::string str(const std::string& var = "t") const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator-(const UniPoly& a);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const Scalar& s, const UniPoly& a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

 private:
  std::vector<Scalar> c_;
  void trim();
};

/// Euclidean division a = q·b + r with deg r < deg b.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
/// Quotient of a division expected to be exact; a nonzero exact remainder throws.
UniPoly exact_quotient(const UniPoly& a, const UniPoly& b);
UniPoly derivative(const UniPoly& p);
/// Monic gcd. Complex inputs use remainders chopped at relative `tol`.
UniPoly gcd(const UniPoly& a, const UniPoly& b, double tol = 1e-9);
/// Yun decomposition p = lead · Π f_k^k, returning (f_k, k) for nonconstant f_k.
std::vector<std::pair<UniPoly, int>> squarefree(const UniPoly& p);
bool is_squarefree(const UniPoly& p);

struct Root {
  /// Exact rational when the root was verified exactly, complex otherwise.
  Scalar value;
  int multiplicity = 1;
};

/// All complex roots with multiplicity. Exact inputs are split square-free
/// first; each factor's roots come from companion-matrix eigenvalues with a
/// Newton polish, and real roots that are exact rationals are snapped.
std::vector<Root> roots(const UniPoly& p);

}  // namespace lipmod

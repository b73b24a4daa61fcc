#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lipmod/scalar.hpp"

namespace lipmod {

/// Exponent pair (i, j) of x^i y^j.
struct Monomial {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::uint32_t degree() const { return i + j; }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Graded-lex descending: higher total degree first, then higher x-power.
struct GrlexDesc {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return a.i > b.i;
  }
};

using VarNames = std::array<std::string, 2>;

/// Maximal exponent allowed in any term.
inline constexpr std::uint32_t kMaxExponent = 1U << 16;

/// Sparse bivariate polynomial with Scalar coefficients. Zero coefficients
/// are never stored; the empty term map is the zero polynomial.
class BiPoly {
 public:
  using Terms = std::map<Monomial, Scalar, GrlexDesc>;

  explicit BiPoly(VarNames names = {"x", "y"}) : names_(std::move(names)) {}

  static BiPoly constant(const Scalar& c, VarNames names = {"x", "y"});
  static BiPoly variable(int index, VarNames names = {"x", "y"});
  static BiPoly monomial(Monomial m, const Scalar& c, VarNames names = {"x", "y"});

  const Terms& terms() const { return terms_; }
  const VarNames& varnames() const { return names_; }
  BiPoly with_varnames(VarNames names) const;

  bool is_zero() const { return terms_.empty(); }
  bool is_exact() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Degree in variable `var` (0 or 1); -1 for the zero polynomial.
  int degree_in(int var) const;
  /// Smallest exponent of `var` over all terms; -1 for the zero polynomial.
  int low_degree_in(int var) const;
  Scalar coeff(Monomial m) const;
  Scalar constant_term() const { return coeff({0, 0}); }

  /// Canonical text: graded-lex descending, explicit '*' and '^'.
  std::string str() const;

  /// Drops complex coefficients with |c| <= tol * max|c|; exact terms kept.
  BiPoly chop(double tol) const;

  void add_term(Monomial m, const Scalar& c);

  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  BiPoly& operator*=(const Scalar& c);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(BiPoly a, const Scalar& c) { return a *= c; }
  friend BiPoly operator*(const Scalar& c, BiPoly a) { return a *= c; }
  friend BiPoly operator-(const BiPoly& a);
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

  BiPoly pow(unsigned e) const;

 private:
  Terms terms_;
  VarNames names_;
};

/// Generic sparse Horner evaluation; `conv` maps a Scalar coefficient to T.
template <class T, class Conv>
T evaluate(const BiPoly& p, const T& x, const T& y, Conv conv) {
  // Rows of equal x-power, each evaluated by Horner in y, then Horner in x.
  std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, Scalar>>, std::greater<>> rows;
  for (const auto& [m, c] : p.terms()) rows[m.i].emplace_back(m.j, c);
  auto power = [](T base, std::uint32_t e) {
    T acc = T(1);
    for (; e != 0; e >>= 1) {
      if (e & 1U) acc = acc * base;
      base = base * base;
    }
    return acc;
  };
  T outer = T(0);
  bool first_row = true;
  std::uint32_t prev_i = 0;
  for (auto& [i, row] : rows) {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    T inner = T(0);
    bool first = true;
    std::uint32_t prev_j = 0;
    for (const auto& [j, c] : row) {
      inner = first ? conv(c) : inner * power(y, prev_j - j) + conv(c);
      first = false;
      prev_j = j;
    }
    inner = inner * power(y, prev_j);
    outer = first_row ? inner : outer * power(x, prev_i - i) + inner;
    first_row = false;
    prev_i = i;
  }
  if (!first_row) outer = outer * power(x, prev_i);
  return outer;
}

/// Exact when the polynomial and both arguments are exact.
Scalar eval(const BiPoly& p, const Scalar& x, const Scalar& y);
Complex eval_complex(const BiPoly& p, Complex x, Complex y);

BiPoly partial(const BiPoly& p, int var);
/// p(x + dx, y + dy).
BiPoly shift(const BiPoly& p, const Scalar& dx, const Scalar& dy);
/// p(y, x), variable names swapped as well.
BiPoly swap_variables(const BiPoly& p);

// ---------------------------------------------------------------------------
// Projective side

struct Monomial3 {
  std::uint32_t i = 0, j = 0, k = 0;
  friend auto operator<=>(const Monomial3&, const Monomial3&) = default;
};

struct Monomial3Desc {
  bool operator()(const Monomial3& a, const Monomial3& b) const {
    if (a.i != b.i) return a.i > b.i;
    if (a.j != b.j) return a.j > b.j;
    return a.k > b.k;
  }
};

/// Homogeneous polynomial in three variables; every stored exponent
/// triple sums to total_degree.
class HomPoly {
 public:
  using Terms = std::map<Monomial3, Scalar, Monomial3Desc>;
  HomPoly(unsigned total_degree, std::array<std::string, 3> names)
      : total_degree_(total_degree), names_(std::move(names)) {}

  void add_term(Monomial3 m, const Scalar& c);
  const Terms& terms() const { return terms_; }
  unsigned total_degree() const { return total_degree_; }
  const std::array<std::string, 3>& varnames() const { return names_; }
  Scalar eval(const Scalar& x, const Scalar& y, const Scalar& z) const;
  std::string str() const;
  friend bool operator==(const HomPoly& a, const HomPoly& b) {
    return a.total_degree_ == b.total_degree_ && a.terms_ == b.terms_;
  }

 private:
  Terms terms_;
  unsigned total_degree_;
  std::array<std::string, 3> names_;
};

/// Projective point, normalized so the first nonzero coordinate is 1.
class ProjPoint {
 public:
  ProjPoint(const Scalar& a, const Scalar& b, const Scalar& c);
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  bool at_infinity() const { return coords_[2].is_zero(); }
  std::string str() const;
  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords_ == b.coords_; }

 private:
  std::array<Scalar, 3> coords_;
};

/// Each term (i, j) gets z-exponent deg − i − j. Requires deg >= degree(p).
HomPoly homogenize(const BiPoly& p, unsigned deg, const std::string& zname = "z");

/// Dehomogenizes at P and translates P to the origin. Supported points have
/// their first nonzero coordinate in position 0 or 1: (1:b:c) yields a
/// polynomial in (y, z), (0:1:c) one in (x, z).
BiPoly localize_at_infinity(const HomPoly& F, const ProjPoint& P);

}  // namespace lipmod

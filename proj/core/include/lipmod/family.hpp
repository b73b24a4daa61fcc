#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "lipmod/bipoly.hpp"
#include "lipmod/quadext.hpp"
#include "lipmod/scalar.hpp"

namespace lipmod {

enum class FamilyKind { Cubic, Quartic };

/// Cubic: x(x²y² − sxy − 1). Quartic: x(x⁴y⁴ − 3sx²y² + 1).
struct FamilySpec {
  FamilyKind kind = FamilyKind::Cubic;
  Scalar s;
};

BiPoly family_poly(const FamilySpec& spec);

/// Polar roots α, β of 3z² − 2sz − 1 (α with the principal +√), branch
/// value coefficients A = α(α² − sα − 1), B likewise, and R = A/B. For
/// rational s the exact values in Q(√(s²+3)) are kept alongside.
struct PolarData {
  Scalar alpha, beta, A, B, R;
  std::optional<QuadExt> alpha_exact, beta_exact, A_exact, B_exact, R_exact;
};

/// Real roots −α < −β < β < α of 5z⁴ − 9sz² + 1 and the branch values
/// c = −α(α⁴ − 3sα² + 1), d = β(β⁴ − 3sβ² + 1).
struct QuarticData {
  std::array<double, 4> roots{};
  double c = 0.0, d = 0.0, ratio = 0.0;
  /// Set when s lies outside the range s > 1 where positivity is guaranteed.
  bool flagged = false;
};

/// Throws DomainError with locus "s^2+3=0"; complex s uses complex doubles.
PolarData cubic_polar(const Scalar& s);

/// Throws DomainError: locus "81s^2-20=0" (double roots), "81s^2<=20" (fewer
/// than four real roots), "positivity" (c or d not positive), "complex_s".
QuarticData quartic_invariant(const Scalar& s);

std::variant<PolarData, QuarticData> polar_roots(const FamilySpec& spec);

enum class Branch { Alpha, Beta };

/// A·t or B·t, cross-checked against f_s(γt, 1/t); exact when s and t are
/// rational and the value is rational, complex double otherwise.
Scalar branch_value(const FamilySpec& spec, Branch which, const Scalar& t);
/// Exact branch value in Q(√(s²+3)), verified by exact substitution.
QuadExt branch_value_exact(const Rational& s, Branch which, const Rational& t);

/// R(s) = A/B in root form after checking the closed form
/// (2(s²+3)α + s)/(2(s²+3)β + s): identical in exact mode, within 1e-12
/// relative otherwise. Raises on s²+3 = 0 and on s²+4 = 0, where A·B = 0.
Scalar invariant_ratio(const FamilySpec& spec);

struct RatioForms {
  Scalar root_form;
  Scalar closed_form;
  std::optional<QuadExt> root_exact, closed_exact;
};
RatioForms invariant_ratio_forms(const Scalar& s);

struct Separation {
  Scalar s, s_prime;
  Scalar R_s, R_s_prime;
  std::optional<QuadExt> R_s_exact, R_s_prime_exact;
  bool separated = false;
};

/// R(s) ≠ R(s′): exact for rational inputs, 1e-12 relative otherwise.
Separation separates(const Scalar& s, const Scalar& s_prime);

struct ExceptionalRoot {
  Scalar value;  // exact when a rational root
  int multiplicity = 1;
  bool real = false;
};

struct ExceptionalSet {
  /// Coefficients of k·XY − (X + Y)² in s′, where X, Y are the closed-form
  /// numerator and denominator of R(s′) and k = R(s) + 1/R(s) + 2.
  std::vector<Scalar> cleared;
  std::vector<ExceptionalRoot> roots;
};

/// Parameters s′ with R(s′) ∈ {R(s), 1/R(s)} inside |Re|, |Im| <= box;
/// R(s′) = 1 only on the excluded locus and contributes nothing.
ExceptionalSet exceptional_set(const Scalar& s, double box = 1e300);

/// R strictly decreasing on lo, lo+step, ..., <= hi, compared exactly.
/// Throws std::invalid_argument on an empty or degenerate grid.
bool monotonicity_check(const Rational& lo, const Rational& hi, const Rational& step);
bool monotonicity_check(double lo, double hi, double step);

/// c_s/d_s strictly monotone on the grid; rejects grids outside 81s² > 20.
bool quartic_injectivity_check(double lo, double hi, double step);

}  // namespace lipmod

#include "lipmod/family.hpp"

#include <cmath>
#include <stdexcept>

#include "lipmod/error.hpp"
#include "lipmod/unipoly.hpp"

namespace lipmod {

namespace {

Scalar to_scalar(const QuadExt& q) {
  if (q.is_rational()) return Scalar(q.u());
  return Scalar(q.to_complex());
}

void require_cubic(const FamilySpec& spec) {
  if (spec.kind != FamilyKind::Cubic) throw std::invalid_argument("operation defined for the cubic family only");
}

bool near_zero(Complex z, double scale) { return std::abs(z) <= 1e-14 * std::max(1.0, scale); }

// f_s(γ, 1) / 1 = γ(γ² − sγ − 1): the branch value coefficient.
template <class T>
T branch_coefficient(const T& g, const T& s) {
  return g * (g * g - s * g - T(1));
}

DomainError excluded_polar() {
  return DomainError("excluded_parameter", "polar roots collide: s^2+3 = 0", "s^2+3=0");
}

DomainError vanishing_branch() {
  return DomainError("excluded_parameter", "a branch value vanishes: s^2+4 = 0", "s^2+4=0");
}

}  // namespace

BiPoly family_poly(const FamilySpec& spec) {
  BiPoly p;
  if (spec.kind == FamilyKind::Cubic) {
    p.add_term({3, 2}, Scalar(1));
    p.add_term({2, 1}, -spec.s);
    p.add_term({1, 0}, Scalar(-1));
  } else {
    p.add_term({5, 4}, Scalar(1));
    p.add_term({3, 2}, Scalar(-3) * spec.s);
    p.add_term({1, 0}, Scalar(1));
  }
  return p;
}

PolarData cubic_polar(const Scalar& s) {
  PolarData d;
  if (s.is_exact()) {
    const Rational& r = s.rational();
    const QuadExt w = QuadExt::sqrt(r * r + Rational(3));
    const QuadExt qs(r);
    const QuadExt a = (qs + w) / QuadExt(3), b = (qs - w) / QuadExt(3);
    const QuadExt A = branch_coefficient(a, qs), B = branch_coefficient(b, qs);
    // Over Q, A·B = −(s²+4)/27 never vanishes.
    d.alpha_exact = a;
    d.beta_exact = b;
    d.A_exact = A;
    d.B_exact = B;
    d.R_exact = A / B;
    d.alpha = to_scalar(a);
    d.beta = to_scalar(b);
    d.A = to_scalar(A);
    d.B = to_scalar(B);
    d.R = to_scalar(*d.R_exact);
    return d;
  }
  const Complex z = s.complex();
  const Complex delta = z * z + 3.0;
  if (near_zero(delta, std::norm(z))) throw excluded_polar();
  if (near_zero(z * z + 4.0, std::norm(z))) throw vanishing_branch();
  const Complex w = std::sqrt(delta);
  Complex a = (z + w) / 3.0, b = (z - w) / 3.0;
  // The smaller root from Vieta (αβ = −1/3) avoids cancellation.
  if (std::abs(a) < std::abs(b)) a = -1.0 / (3.0 * b);
  else b = -1.0 / (3.0 * a);
  const Complex A = branch_coefficient(a, z), B = branch_coefficient(b, z);
  d.alpha = Scalar(a);
  d.beta = Scalar(b);
  d.A = Scalar(A);
  d.B = Scalar(B);
  d.R = Scalar(A / B);
  return d;
}

QuarticData quartic_invariant(const Scalar& s) {
  if (!s.is_exact() && s.complex().imag() != 0.0)
    throw DomainError("excluded_parameter", "quartic invariant needs a real parameter", "complex_s");
  const double v = s.complex().real();
  const double disc = 81.0 * v * v - 20.0;
  if (std::abs(disc) <= 1e-14 * 81.0 * std::max(1.0, v * v))
    throw DomainError("excluded_parameter", "5z^4 - 9sz^2 + 1 has double roots", "81s^2-20=0");
  if (disc < 0.0 || v < 0.0)
    throw DomainError("excluded_parameter", "5z^4 - 9sz^2 + 1 has fewer than four real roots", "81s^2<=20");
  QuarticData q;
  q.flagged = v <= 1.0;
  const double a2 = (9.0 * v + std::sqrt(disc)) / 10.0;
  const double b2 = 1.0 / (5.0 * a2);  // product of the two values of z² is 1/5
  const double a = std::sqrt(a2), b = std::sqrt(b2);
  q.roots = {-a, -b, b, a};
  q.c = -a * (a2 * a2 - 3.0 * v * a2 + 1.0);
  q.d = b * (b2 * b2 - 3.0 * v * b2 + 1.0);
  if (!(q.c > 0.0) || !(q.d > 0.0))
    throw DomainError("positivity_violated", "quartic branch values are not both positive", "positivity");
  q.ratio = q.c / q.d;
  if (!q.flagged && !(q.ratio > 1.0))
    throw DomainError("positivity_violated", "quartic ratio c/d is not above 1", "positivity");
  return q;
}

std::variant<PolarData, QuarticData> polar_roots(const FamilySpec& spec) {
  if (spec.kind == FamilyKind::Cubic) return cubic_polar(spec.s);
  return quartic_invariant(spec.s);
}

QuadExt branch_value_exact(const Rational& s, Branch which, const Rational& t) {
  if (t.is_zero()) throw DomainError("invalid_argument", "branch value needs t != 0", "t=0");
  const PolarData d = cubic_polar(Scalar(s));
  const QuadExt g = which == Branch::Alpha ? *d.alpha_exact : *d.beta_exact;
  const QuadExt coef = which == Branch::Alpha ? *d.A_exact : *d.B_exact;
  const QuadExt value = coef * QuadExt(t);
  const BiPoly f = family_poly({FamilyKind::Cubic, Scalar(s)});
  const QuadExt direct = evaluate<QuadExt>(f, g * QuadExt(t), QuadExt(t.inverse()),
                                           [](const Scalar& c) { return QuadExt(c.rational()); });
  if (!(direct == value)) throw std::logic_error("branch value disagrees with direct substitution");
  return value;
}

Scalar branch_value(const FamilySpec& spec, Branch which, const Scalar& t) {
  require_cubic(spec);
  if (t.is_zero()) throw DomainError("invalid_argument", "branch value needs t != 0", "t=0");
  if (spec.s.is_exact() && t.is_exact()) return to_scalar(branch_value_exact(spec.s.rational(), which, t.rational()));
  const PolarData d = cubic_polar(spec.s);
  const Complex g = (which == Branch::Alpha ? d.alpha : d.beta).complex();
  const Complex value = (which == Branch::Alpha ? d.A : d.B).complex() * t.complex();
  const Complex direct = eval_complex(family_poly(spec), g * t.complex(), 1.0 / t.complex());
  if (std::abs(direct - value) > 1e-9 * std::max(1.0, std::abs(value)))
    throw std::logic_error("branch value disagrees with direct substitution");
  return Scalar(value);
}

RatioForms invariant_ratio_forms(const Scalar& s) {
  const PolarData d = cubic_polar(s);
  RatioForms f;
  f.root_form = d.R;
  if (s.is_exact()) {
    const Rational& r = s.rational();
    const QuadExt two_delta(Rational(2) * (r * r + Rational(3)));
    const QuadExt qs(r);
    f.root_exact = d.R_exact;
    f.closed_exact = (two_delta * *d.alpha_exact + qs) / (two_delta * *d.beta_exact + qs);
    f.closed_form = to_scalar(*f.closed_exact);
    return f;
  }
  const Complex z = s.complex();
  const Complex two_delta = 2.0 * (z * z + 3.0);
  f.closed_form = Scalar((two_delta * d.alpha.complex() + z) / (two_delta * d.beta.complex() + z));
  return f;
}

Scalar invariant_ratio(const FamilySpec& spec) {
  require_cubic(spec);
  const RatioForms f = invariant_ratio_forms(spec.s);
  if (f.root_exact) {
    if (!(*f.root_exact == *f.closed_exact))
      throw DomainError("internal_inconsistency", "root and closed forms of R differ: " + f.root_exact->str() +
                                                      " vs " + f.closed_exact->str());
    return f.root_form;
  }
  const Complex a = f.root_form.complex(), b = f.closed_form.complex();
  if (std::abs(a - b) > 1e-12 * std::abs(a))
    throw DomainError("internal_inconsistency",
                      "root and closed forms of R differ: " + format_complex(a) + " vs " + format_complex(b));
  return f.root_form;
}

Separation separates(const Scalar& s, const Scalar& s_prime) {
  Separation out;
  out.s = s;
  out.s_prime = s_prime;
  out.R_s = invariant_ratio({FamilyKind::Cubic, s});
  out.R_s_prime = invariant_ratio({FamilyKind::Cubic, s_prime});
  if (s.is_exact() && s_prime.is_exact()) {
    out.R_s_exact = cubic_polar(s).R_exact;
    out.R_s_prime_exact = cubic_polar(s_prime).R_exact;
    out.separated = !real_algebraic_equal(*out.R_s_exact, *out.R_s_prime_exact);
    return out;
  }
  const Complex a = out.R_s.complex(), b = out.R_s_prime.complex();
  out.separated = std::abs(a - b) > 1e-12 * std::max(std::abs(a), std::abs(b));
  return out;
}

ExceptionalSet exceptional_set(const Scalar& s, double box) {
  const PolarData d = cubic_polar(s);
  Scalar k;
  if (d.R_exact) {
    const QuadExt kq = *d.R_exact + QuadExt(1) / *d.R_exact + QuadExt(2);
    if (!kq.is_rational()) throw std::logic_error("R + 1/R is not rational for rational s");
    k = Scalar(kq.u());
  } else {
    const Complex R = d.R.complex();
    k = Scalar(R + 1.0 / R + 2.0);
  }
  // X = 2Δ′α′ + s′, Y = 2Δ′β′ + s′ with α′ + β′ = 2s′/3 and α′β′ = −1/3:
  // X + Y = (2s′/3)(2Δ′ + 3), XY = −(4/3)Δ′² + (4/3)Δ′s′² + s′².
  const UniPoly sp({Scalar(0), Scalar(1)});
  const UniPoly sp2 = sp * sp;
  const UniPoly delta = sp2 + UniPoly::constant(Scalar(3));
  const Scalar four_thirds(Rational(mpz_class(4), mpz_class(3)));
  const UniPoly sum = Scalar(Rational(mpz_class(2), mpz_class(3))) * sp *
                      (Scalar(2) * delta + UniPoly::constant(Scalar(3)));
  const UniPoly prod = Scalar(-1) * four_thirds * delta * delta + four_thirds * delta * sp2 + sp2;
  const UniPoly cleared = k * prod - sum * sum;

  ExceptionalSet out;
  out.cleared = cleared.coeffs();
  const Complex R = d.R.complex();
  for (const auto& r : roots(cleared)) {
    const Complex z = r.value.complex();
    if (std::abs(z.real()) > box || std::abs(z.imag()) > box) continue;
    const double scale = std::max(1.0, std::norm(z));
    if (near_zero(z * z + 3.0, scale) || near_zero(z * z + 4.0, scale)) continue;
    const Complex Rp = cubic_polar(Scalar(z)).R.complex();
    const bool hit = std::abs(Rp - R) <= 1e-6 * std::abs(R) || std::abs(Rp - 1.0 / R) <= 1e-6 * std::abs(1.0 / R);
    if (!hit) continue;
    ExceptionalRoot er;
    er.value = r.value;
    er.multiplicity = r.multiplicity;
    er.real = r.value.is_exact() || std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z));
    out.roots.push_back(er);
  }
  return out;
}

bool monotonicity_check(const Rational& lo, const Rational& hi, const Rational& step) {
  if (!(lo < hi) || step.sign() <= 0) throw std::invalid_argument("monotonicity_check: need lo < hi and step > 0");
  std::optional<QuadExt> prev;
  for (Rational s = lo; s <= hi; s += step) {
    const QuadExt R = *cubic_polar(Scalar(s)).R_exact;
    if (prev && real_algebraic_compare(R, *prev) >= 0) return false;
    prev = R;
  }
  return true;
}

bool monotonicity_check(double lo, double hi, double step) {
  if (!(lo < hi) || !(step > 0.0)) throw std::invalid_argument("monotonicity_check: need lo < hi and step > 0");
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  double prev = 0.0;
  for (long k = 0; k <= n; ++k) {
    const double R = cubic_polar(Scalar(Complex(lo + static_cast<double>(k) * step, 0.0))).R.complex().real();
    if (k > 0 && !(R < prev)) return false;
    prev = R;
  }
  return true;
}

bool quartic_injectivity_check(double lo, double hi, double step) {
  if (!(lo < hi) || !(step > 0.0)) throw std::invalid_argument("quartic_injectivity_check: need lo < hi and step > 0");
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  double prev = 0.0;
  int direction = 0;
  for (long k = 0; k <= n; ++k) {
    const double r = quartic_invariant(Scalar(Complex(lo + static_cast<double>(k) * step, 0.0))).ratio;
    if (k > 0) {
      const int dir = r > prev ? 1 : (r < prev ? -1 : 0);
      if (dir == 0 || (direction != 0 && dir != direction)) return false;
      direction = dir;
    }
    prev = r;
  }
  return true;
}

}  // namespace lipmod

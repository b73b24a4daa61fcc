#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "../support/gen.hpp"
#include "lipmod/bipoly.hpp"
#include "lipmod/error.hpp"
#include "lipmod/parse.hpp"
#include "lipmod/projective.hpp"
#include "lipmod/quadext.hpp"
#include "lipmod/resultant.hpp"
#include "lipmod/unipoly.hpp"

using namespace lipmod;

namespace {

Rational q(long p, long d = 1) { return Rational(mpz_class(p), mpz_class(d)); }

BiPoly family(const Rational& s) { return parse_poly("x*(x^2*y^2 - s*x*y - 1)", {{"s", s}}); }

}  // namespace

TEST_CASE("rational canonical form and parsing") {
  CHECK(q(6, -4).str() == "-3/2");
  CHECK(q(0, 7).str() == "0");
  CHECK(q(0, 7).den() == 1);
  CHECK(Rational::parse("1.25") == q(5, 4));
  CHECK(Rational::parse("-3e-2") == q(-3, 100));
  CHECK(Rational::parse("7/2") == q(7, 2));
  CHECK(rationalize(0.3333333333333333, 1000) == q(1, 3));
  Rational r;
  CHECK(exact_sqrt(q(9, 4), r));
  CHECK(r == q(3, 2));
  CHECK_FALSE(exact_sqrt(q(2), r));
}

TEST_CASE("property: rational to double rounds to nearest") {
  // With |p|, |q| < 2^53 both convert exactly and IEEE division rounds correctly.
  gen::Engine g(11);
  for (int n = 0; n < 2000; ++n) {
    const long p = gen::integer(g, -(1L << 52), 1L << 52), d = gen::integer(g, 1, 1L << 40);
    CHECK(q(p, d).to_double() == static_cast<double>(p) / static_cast<double>(d));
  }
  CHECK(q(1, 100).to_double() == 0.01);
  CHECK(Rational::parse("1e-5").to_double() == 1e-5);
  CHECK(q(0).to_double() == 0.0);
  const Rational huge(mpz_class(1) << 200, mpz_class(3));
  CHECK(huge.to_double() == std::ldexp(1.0, 200) / 3.0);
}

TEST_CASE("scalar rejects complex input to exact operations") {
  Scalar z(Complex(1.0, 2.0));
  CHECK_THROWS_AS((void)z.rational(), DomainError);
  Scalar mixed = Scalar(q(1, 2)) + z;
  CHECK_FALSE(mixed.is_exact());
  CHECK(mixed.complex() == Complex(1.5, 2.0));
}

TEST_CASE("quadratic extension arithmetic") {
  const QuadExt w = QuadExt::sqrt(q(7));
  const QuadExt a = (QuadExt(q(2)) + w) / QuadExt(q(3));
  CHECK(a.str() == "2/3+1/3*sqrt(7)");
  CHECK((w * w) == QuadExt(q(7)));
  CHECK((a * a.conj()).is_rational());
  CHECK(QuadExt::sqrt(q(4)) == QuadExt(q(2)));
  CHECK(w.sign() == 1);
  CHECK((QuadExt(q(3)) - w).sign() == 1);
  CHECK((QuadExt(q(2)) - w).sign() == -1);
  CHECK(real_algebraic_compare(QuadExt::sqrt(q(2)), QuadExt::sqrt(q(3))) == -1);
  CHECK(real_algebraic_equal(QuadExt::sqrt(q(8)), QuadExt(q(0), q(2), q(2))));
}

TEST_CASE("parse examples") {
  const BiPoly p = parse_poly("x^3*y^2 - x");
  CHECK(p.terms().size() == 2);
  CHECK(p.coeff({3, 2}) == Scalar(1));
  CHECK(p.coeff({1, 0}) == Scalar(-1));

  const BiPoly f = family(q(1));
  CHECK(f.terms().size() == 3);
  CHECK(f.coeff({3, 2}) == Scalar(1));
  CHECK(f.coeff({2, 1}) == Scalar(-1));
  CHECK(f.coeff({1, 0}) == Scalar(-1));
  CHECK(f.str() == "x^3*y^2 - x^2*y - x");

  CHECK(parse_poly("0").is_zero());
  CHECK(parse_poly(" 3/6 * x ").coeff({1, 0}) == Scalar(q(1, 2)));
}

TEST_CASE("parse errors carry kind and offset") {
  auto kind_of = [](const std::string& text) {
    try {
      (void)parse_poly(text);
    } catch (const ParseError& e) {
      return std::make_pair(e.kind(), e.offset());
    }
    FAIL("no error for " << text);
    return std::make_pair(ParseErrorKind::Syntax, std::size_t{0});
  };
  CHECK(kind_of("x + u").first == ParseErrorKind::UnboundIdentifier);
  CHECK(kind_of("x + u").second == 4);
  CHECK(kind_of("x^70000").first == ParseErrorKind::ExponentOverflow);
  CHECK(kind_of("x*(y").first == ParseErrorKind::Syntax);
  CHECK(kind_of("x/2").first == ParseErrorKind::Syntax);
  CHECK(kind_of("1.5*x").first == ParseErrorKind::Syntax);
  CHECK(kind_of("").first == ParseErrorKind::Syntax);
  CHECK(kind_of("x y").second == 2);
}

TEST_CASE("eval examples") {
  const BiPoly f = family(q(1));
  CHECK(eval(f, Scalar(1), Scalar(1)) == Scalar(-1));
  CHECK(eval(f, Scalar(0), Scalar(0)) == f.constant_term());
  // alpha_1 = 1: f(t, 1/t) = -t.
  CHECK(eval(f, Scalar(q(1, 10)), Scalar(10)) == Scalar(q(-1, 10)));
  // Oracle: direct substitution without Horner.
  const Rational x = q(3, 7), y = q(-5, 2);
  CHECK(eval(f, Scalar(x), Scalar(y)) == Scalar(x * (x * x * y * y - x * y - Rational(1))));
}

TEST_CASE("partial derivatives") {
  const BiPoly fs = parse_poly("x*(x^2*y^2 - s*x*y - 1)", {{"s", q(3, 2)}});
  CHECK(partial(fs, 0) == parse_poly("3*x^2*y^2 - 2*s*x*y - 1", {{"s", q(3, 2)}}));
  CHECK(partial(fs, 1) == parse_poly("2*x^3*y - s*x^2", {{"s", q(3, 2)}}));
  CHECK(partial(parse_poly("17"), 0).is_zero());
}

TEST_CASE("homogenize and localize examples") {
  const Rational s = q(1), c = q(3);
  const BiPoly fc = family(s) - BiPoly::constant(Scalar(c));
  const HomPoly F = homogenize(fc, 5);
  HomPoly expected(5, {"x", "y", "z"});
  expected.add_term({3, 2, 0}, Scalar(1));
  expected.add_term({2, 1, 2}, Scalar(-s));
  expected.add_term({1, 0, 4}, Scalar(-1));
  expected.add_term({0, 0, 5}, Scalar(-c));
  CHECK(F == expected);

  const Bindings b{{"s", s}, {"c", c}};
  const BiPoly g = localize_at_infinity(F, ProjPoint(Scalar(0), Scalar(1), Scalar(0)));
  CHECK(g == parse_poly("x^3 - s*x^2*z^2 - x*z^4 - c*z^5", b, {"x", "z"}));
  const BiPoly h = localize_at_infinity(F, ProjPoint(Scalar(1), Scalar(0), Scalar(0)));
  CHECK(h == parse_poly("y^2 - s*y*z^2 - z^4 - c*z^5", b, {"y", "z"}));

  const HomPoly X = homogenize(parse_poly("x"), 1);
  CHECK(localize_at_infinity(X, ProjPoint(Scalar(0), Scalar(1), Scalar(0))) == parse_poly("x", {}, {"x", "z"}));
  CHECK(homogenize(parse_poly("x + 1"), 2).str() == "x*z + z^2");
  CHECK_THROWS(homogenize(parse_poly("x^3"), 2));
  CHECK_THROWS(localize_at_infinity(F, ProjPoint(Scalar(0), Scalar(0), Scalar(1))));
}

TEST_CASE("infinity points") {
  auto pts = infinity_points(family(q(1)));
  REQUIRE(pts.size() == 2);
  CHECK(pts[0] == ProjPoint(Scalar(0), Scalar(1), Scalar(0)));
  CHECK(pts[1] == ProjPoint(Scalar(1), Scalar(0), Scalar(0)));

  pts = infinity_points(parse_poly("x^2 + y^2"));
  REQUIRE(pts.size() == 2);
  for (const auto& p : pts) {
    CHECK(p[0] == Scalar(1));
    CHECK(std::abs(std::abs(p[1].complex().imag()) - 1.0) < 1e-12);
    CHECK(std::abs(p[1].complex().real()) < 1e-12);
  }
  CHECK(pts[0][1].complex().imag() * pts[1][1].complex().imag() < 0);

  pts = infinity_points(parse_poly("x"));
  REQUIRE(pts.size() == 1);
  CHECK(pts[0] == ProjPoint(Scalar(0), Scalar(1), Scalar(0)));

  // Rational residual roots are exact: (x - 2y)(x + 3y) -> t = 1/2, -1/3.
  const auto ips = infinity_points_with_multiplicity(parse_poly("(x - 2*y)^2*(x + 3*y)"));
  REQUIRE(ips.size() == 2);
  CHECK(ips[0].point == ProjPoint(Scalar(1), Scalar(q(-1, 3)), Scalar(0)));
  CHECK(ips[1].point == ProjPoint(Scalar(1), Scalar(q(1, 2)), Scalar(0)));
  CHECK(ips[1].multiplicity == 2);
}

TEST_CASE("resultant examples") {
  const Rational a = q(5, 3), b = q(-2);
  const BiPoly pa = parse_poly("x - a", {{"a", a}});
  const BiPoly pb = parse_poly("x - b", {{"b", b}});
  // Sylvester with p-rows first: det [[1, -a], [1, -b]] = a - b.
  CHECK(resultant(pa, pb, 0) == BiPoly::constant(Scalar(a - b)));
  CHECK(resultant(parse_poly("x^2 + 1"), parse_poly("x"), 0) == BiPoly::constant(Scalar(1)));
  CHECK_THROWS(resultant(BiPoly(), pa, 0));

  // Classical identity Res(p, q) = lead(p)^deg q * prod q(roots of p).
  const BiPoly p = parse_poly("(x - 1)*(x - 2)");
  const BiPoly r = parse_poly("x^2 + y");
  CHECK(resultant(p, r, 0) == parse_poly("(1 + y)*(4 + y)"));
}

TEST_CASE("f_1 has no affine critical point: resultant against a grid oracle") {
  const BiPoly f = family(q(1));
  const BiPoly fx = partial(f, 0), fy = partial(f, 1);
  const BiPoly res = resultant(fx, fy, 0);
  CHECK(res.degree_in(0) <= 0);
  const UniPoly ry = to_unipoly(res, 1);
  CHECK(ry.degree() > 0);
  // Every real root of the eliminant is spurious: no common root of fx, fy above it.
  for (const auto& root : roots(ry)) {
    if (std::abs(root.value.complex().imag()) > 1e-9) continue;
    const double y = root.value.complex().real();
    CHECK(std::abs(y) < 1e-12);
    CHECK(eval_complex(fx, 0.0, y) == Complex(-1.0));
  }
  // Independent oracle: |fx| + |fy| stays away from zero on a grid over [-3,3]^2.
  double lo = 1e9;
  for (int i = 0; i <= 600; ++i)
    for (int j = 0; j <= 600; ++j) {
      const double x = -3.0 + 0.01 * i, y = -3.0 + 0.01 * j;
      lo = std::min(lo, std::abs(3 * x * x * y * y - 2 * x * y - 1) + std::abs(2 * x * x * x * y - x * x));
    }
  CHECK(lo > 0.01);
}

TEST_CASE("univariate roots and square-free decomposition") {
  const UniPoly p = to_unipoly(parse_poly("(x - 1)^3*(x + 2)*(x^2 + 2)"), 0);
  const auto sf = squarefree(p);
  REQUIRE(sf.size() == 2);
  CHECK(sf[0].second == 1);
  CHECK(sf[0].first.degree() == 3);
  CHECK(sf[1].second == 3);
  CHECK(sf[1].first == to_unipoly(parse_poly("x - 1"), 0));
  const auto rs = roots(p);
  int total = 0;
  for (const auto& r : rs) total += r.multiplicity;
  CHECK(total == 6);
  bool found_exact_one = false;
  for (const auto& r : rs)
    if (r.value.is_exact() && r.value.rational() == q(1)) found_exact_one = r.multiplicity == 3;
  CHECK(found_exact_one);
  CHECK_FALSE(is_squarefree(p));
  CHECK(is_squarefree(sf[0].first));
}

// ---------------------------------------------------------------------------
// Properties

TEST_CASE("property: parse . print . parse == parse on a 60-expression corpus") {
  gen::Engine g(101);
  std::vector<std::string> corpus = {"0", "x", "-y", "x^3*y^2 - x", "x*(x^2*y^2 - s*x*y - 1)", "(x+y)^5",
                                     "1/2*x - 3/4*y^2", "-(x - 1)^2", "x^0", "7/14"};
  while (corpus.size() < 60) corpus.push_back(gen::expression(g, 4, true));
  const Bindings b{{"s", q(7, 2)}};
  for (const auto& text : corpus) {
    const BiPoly p = parse_poly(text, b);
    const BiPoly again = parse_poly(p.str(), b);
    CHECK_MESSAGE(again == p, text);
    CHECK(again.str() == p.str());
  }
}

TEST_CASE("property: homogenize then dehomogenize at z=1 agrees exactly") {
  gen::Engine g(202);
  for (int n = 0; n < 40; ++n) {
    const BiPoly p = gen::poly(g, 5, 6);
    if (p.is_zero()) continue;
    const unsigned deg = static_cast<unsigned>(p.degree()) + static_cast<unsigned>(gen::integer(g, 0, 2));
    const HomPoly F = homogenize(p, deg);
    for (int k = 0; k < 5; ++k) {
      const Scalar x(gen::rational(g)), y(gen::rational(g));
      CHECK(F.eval(x, y, Scalar(1)) == eval(p, x, y));
    }
  }
}

TEST_CASE("property: partial is linear and obeys the product rule") {
  gen::Engine g(303);
  for (int n = 0; n < 40; ++n) {
    const BiPoly p = gen::poly(g, 4, 5), r = gen::poly(g, 4, 5);
    const Scalar a(gen::rational(g)), b(gen::rational(g));
    for (int v = 0; v < 2; ++v) {
      CHECK(partial(a * p + b * r, v) == a * partial(p, v) + b * partial(r, v));
      CHECK(partial(p * r, v) == partial(p, v) * r + p * partial(r, v));
    }
  }
}

TEST_CASE("property: resultant vanishes iff there is a planted common factor") {
  gen::Engine g(404);
  const BiPoly x = BiPoly::variable(0), y = BiPoly::variable(1);
  int planted = 0, clean = 0;
  for (int n = 0; n < 30; ++n) {
    // Factors monic in x so their degree in x is fixed.
    auto monic_in_x = [&](int d) {
      BiPoly f = x.pow(static_cast<unsigned>(d));
      for (int k = 0; k < d; ++k)
        f += BiPoly::monomial({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(gen::integer(g, 0, 2))},
                              Scalar(gen::nonzero_rational(g, 6)));
      return f;
    };
    const BiPoly common = monic_in_x(static_cast<int>(gen::integer(g, 1, 2)));
    const BiPoly u = monic_in_x(static_cast<int>(gen::integer(g, 1, 3)));
    const BiPoly v = monic_in_x(static_cast<int>(gen::integer(g, 1, 3)));
    CHECK(resultant(common * u, common * v, 0).is_zero());
    ++planted;
    // Without the common factor, coprimality holds unless Res(u, v) vanishes by accident.
    const BiPoly r = resultant(u, v, 0);
    if (!r.is_zero()) {
      ++clean;
      // Evaluate at a point where the specializations are coprime and check with gcd.
      const Scalar y0(gen::rational(g));
      const Scalar ry = eval(r, Scalar(0), y0);
      auto spec = [&](const BiPoly& f) {
        std::vector<Scalar> c;
        for (const auto& cu : coefficients_in(f, 0)) c.push_back(cu.eval(y0));
        return UniPoly(c);
      };
      const bool coprime = gcd(spec(u), spec(v)).degree() == 0;
      CHECK(coprime == !ry.is_zero());
    }
  }
  CHECK(planted == 30);
  CHECK(clean > 20);
  (void)y;
}

TEST_CASE("property: localizing F_s at (0:1:0) reproduces g_s for 20 random (s, c)") {
  gen::Engine g(505);
  for (int n = 0; n < 20; ++n) {
    const Rational s = gen::rational(g), c = gen::rational(g);
    const BiPoly fc = family(s) - BiPoly::constant(Scalar(c));
    const BiPoly gs = localize_at_infinity(homogenize(fc, 5), ProjPoint(Scalar(0), Scalar(1), Scalar(0)));
    CHECK(gs == parse_poly("x*(x^2 - s*x*z^2 - z^4) - c*z^5", {{"s", s}, {"c", c}}, {"x", "z"}));
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "../support/gen.hpp"
#include "lipmod/error.hpp"
#include "lipmod/metricinf.hpp"

using namespace lipmod;

namespace {

Rational q(long p, long d = 1) { return Rational(mpz_class(p), mpz_class(d)); }

Complex random_complex(gen::Engine& g, double r) { return {gen::real(g, -r, r), gen::real(g, -r, r)}; }

Complex curve(Complex s, Complex c, Complex x, Complex y) { return x * x * x * y * y - s * x * x * y - x - c; }

}  // namespace

TEST_CASE("sheets at simple fibers") {
  const auto a = sheets_at(0.0, 0.0, 2.0);
  CHECK(a[0] == Complex(-0.5));
  CHECK(a[1] == Complex(0.0));
  CHECK(a[2] == Complex(0.5));

  const double sigma = (1 + std::sqrt(5.0)) / 2;
  const auto b = sheets_at(1.0, 0.0, 1.0);
  CHECK(std::abs(b[0] - Complex(1 - sigma)) <= 1e-15);
  CHECK(b[1] == Complex(0.0));
  CHECK(std::abs(b[2] - Complex(sigma)) <= 1e-15);

  CHECK_THROWS_AS(sheets_at(1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("sheet roots solve the curve and obey Vieta") {
  gen::Engine g(301);
  for (int n = 0; n < 300; ++n) {
    const Complex s = random_complex(g, 3.0), c = random_complex(g, 2.0);
    const Complex y = std::polar(std::exp(gen::real(g, -3.0, 6.0)), gen::real(g, -3.2, 3.2));
    const auto r = sheets_at(s, c, y);
    const double scale = std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
    CHECK(std::abs(r[0] + r[1] + r[2] - s / y) <= 1e-10 * std::max(std::abs(s / y), scale));
    CHECK(std::abs(r[0] * r[1] * r[2] - c / (y * y)) <= 1e-10 * std::max(std::abs(c / (y * y)), scale * scale * scale));
    for (const Complex x : r) {
      const double terms = std::abs(x * x * x * y * y) + std::abs(s * x * x * y) + std::abs(x) + std::abs(c);
      CHECK(std::abs(curve(s, c, x, y)) <= 1e-10 * terms);
    }
    // Sorted by real part.
    CHECK(r[0].real() <= r[1].real());
    CHECK(r[1].real() <= r[2].real());
  }
}

TEST_CASE("ramification points") {
  const auto rp = ramification_points(1.0, 1e-3);
  const Complex t = 1.0 / rp[0].y;
  CHECK(std::abs(t - Complex(-1e-3)) <= 1e-15);
  CHECK(std::abs(rp[0].x - Complex(-1e-3)) <= 1e-15);
  const Complex tp = 1.0 / rp[1].y;
  CHECK(std::abs(tp - Complex(27.0 / 5.0 * 1e-3)) <= 1e-15);
  // t/t′ = B/A for every c.
  gen::Engine g(302);
  for (int n = 0; n < 20; ++n) {
    const Complex c = random_complex(g, 1e-2);
    const auto r = ramification_points(1.0, c);
    CHECK(std::abs(r[1].y / r[0].y - Complex(-5.0 / 27.0)) <= 1e-13);
    // A double root of the fiber sits at the ramification point.
    const auto fiber = sheets_at(1.0, c, r[0].y);
    int near = 0;
    for (const Complex x : fiber) near += std::abs(x - r[0].x) <= 1e-6 * std::abs(r[0].x) ? 1 : 0;
    CHECK(near == 2);
  }
  CHECK_THROWS_AS(ramification_points(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(ramification_points(Complex(0, 2), 1e-3), DomainError);
}

TEST_CASE("U membership") {
  const PolarData d = cubic_polar(Scalar(Complex(1.0, 0.0)));
  const Complex t = 1e-3;
  CHECK(u_membership(1.0, d.alpha.complex() * t, 1.0 / t));
  CHECK_FALSE(u_membership(1.0, 0.0, 1e3));
  // At (10, 10): ∂x = 3·10⁴ − 200 − 1, ∂y = 100·(200 − 1).
  CHECK_FALSE(u_membership(1.0, 10.0, 10.0));
  CHECK(u_membership(1.0, 10.0, 0.5) == (std::abs(3.0 * 25 - 10 - 1) < 100.0 * 9.0));
}

TEST_CASE("branch ratio limit is independent of t") {
  std::vector<Complex> ts{1e-1, 1e-4, Complex(0, 3e-2), -7.0};
  for (const Complex r : branch_ratio_limit(1.0, ts)) CHECK(std::abs(r - Complex(-27.0 / 5.0)) <= 1e-12 * 27 / 5);
  for (const Complex r : branch_ratio_limit(0.0, ts)) CHECK(std::abs(r + 1.0) <= 1e-12);
  CHECK(std::abs(branch_ratio(1.0, Branch::Beta, 1e-3, Branch::Beta, 1e-3) - 1.0) <= 1e-15);
  for (const QuadExt& r : branch_ratio_limit_exact(q(1), {q(1, 10), q(-3), q(7, 2)})) CHECK(r == QuadExt(q(-27, 5)));

  gen::Engine g(303);
  for (int n = 0; n < 100; ++n) {
    const Complex s = random_complex(g, 3.0);
    if (std::abs(s * s + 3.0) < 0.05 || std::abs(s * s + 4.0) < 0.05) continue;
    const Complex R = invariant_ratio({FamilyKind::Cubic, Scalar(s)}).complex();
    const auto got = branch_ratio_limit(s, {random_complex(g, 1e-2), random_complex(g, 1.0)});
    for (const Complex r : got) CHECK(std::abs(r - R) <= 1e-12 * std::abs(R));
  }
  CHECK_THROWS_AS(branch_ratio_limit(1.0, {0.0}), DomainError);
}

TEST_CASE("monodromy") {
  gen::Engine g(304);
  for (int n = 0; n < 20; ++n) {
    const Complex s = random_complex(g, 2.0);
    if (std::abs(s * s + 3.0) < 0.1 || std::abs(s * s + 4.0) < 0.1) continue;
    const Complex c = std::polar(std::exp(gen::real(g, std::log(1e-4), std::log(1e-1))), gen::real(g, -3.2, 3.2));
    const auto rp = ramification_points(s, c);
    const double sep = std::abs(rp[0].y - rp[1].y);
    const double radius = 0.25 * std::min(sep, std::abs(rp[0].y));
    CHECK(is_transposition(monodromy(s, c, rp[0].y, radius)));
    CHECK(is_transposition(monodromy(s, c, rp[1].y, 0.25 * std::min(sep, std::abs(rp[1].y)))));
    // A small loop around a regular value of y does nothing.
    const Complex off = rp[0].y + 0.5 * sep * (rp[0].y / std::abs(rp[0].y));
    const auto id = monodromy(s, c, off, 0.05 * sep);
    CHECK(id == std::array<int, 3>{0, 1, 2});
  }
}

TEST_CASE("witness ratio near the ramification point") {
  const std::vector<Complex> sweep{1e-2, 1e-3, 1e-4, 1e-5};
  for (double delta : {0.25, 0.5}) {
    double prev_ratio = 0.0;
    for (const Complex c : sweep) {
      const RatioSample r = inner_outer_ratio(1.0, c, delta);
      CHECK(r.inner_lower == doctest::Approx(std::pow(std::abs(r.y0), delta - 1.0)).epsilon(1e-8));
      CHECK(r.inner_lower <= r.inner_upper * (1.0 + 1e-12));
      CHECK(r.inner_upper <= 1.01 * r.inner_lower);
      CHECK(r.outer <= std::abs(r.t));
      CHECK(r.ratio_lower > prev_ratio);
      prev_ratio = r.ratio_lower;
    }
  }
  CHECK_THROWS_AS(inner_outer_ratio(1.0, 1e-3, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(inner_outer_ratio(1.0, 10.0, 0.5), DomainError);
}

TEST_CASE("witness growth follows the square-root branch law") {
  // Two sheets merging at a simple branch point separate like √(y − y₀),
  // so outer ~ |t|^{2−δ/2} and ratio_lower ~ |t|^{−1−δ/2}.
  const std::vector<Complex> sweep{1e-2, 1e-3, 1e-4, 1e-5};
  for (double delta : {0.25, 0.5}) {
    const GrowthFit f = growth_fit(1.0, delta, sweep);
    CHECK(f.slope == doctest::Approx(-1.0 - delta / 2).epsilon(0.02));
    CHECK(f.r2 >= 0.999);
  }
  const GrowthFit c = growth_fit(Complex(0.3, 0.8), 0.5, {Complex(0, 1e-2), Complex(0, 1e-3), Complex(0, 1e-4)});
  CHECK(c.slope == doctest::Approx(-1.25).epsilon(0.02));
}

TEST_CASE("log-log fit sanity") {
  const GrowthFit flat = fit_loglog({1, 2, 3, 4}, {5, 5, 5, 5});
  CHECK(flat.slope == 0.0);
  CHECK(flat.intercept == 5.0);
  const GrowthFit line = fit_loglog({-1, -2, -3}, {2.5, 3.0, 3.5});
  CHECK(line.slope == doctest::Approx(-0.5));
  CHECK(line.r2 == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_loglog({1, 2}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(growth_fit(1.0, 0.5, {1e-2, 1e-3}), std::invalid_argument);
}

TEST_CASE("expansion check") {
  const PolarData d = cubic_polar(Scalar(Complex(1.0, 0.0)));
  std::vector<std::array<Complex, 2>> polar;
  for (double t : {1e-2, 1e-3, -1e-4}) {
    polar.push_back({d.alpha.complex() * t, 1.0 / t});
    polar.push_back({d.beta.complex() * t, 1.0 / t});
  }
  const ExpansionReport exact = expansion_check(1.0, polar);
  for (const auto& row : exact.rows) CHECK(row.residual <= 1e-15);

  std::vector<double> lt, lr;
  for (double t : {1e-2, 1e-3}) {
    const auto pts = boundary_points(1.0, Branch::Alpha, t, 8);
    const ExpansionReport rep = expansion_check(1.0, pts);
    double worst = 0.0;
    for (const auto& row : rep.rows) worst = std::max(worst, row.residual);
    lt.push_back(std::log(t));
    lr.push_back(std::log(worst));
    CHECK(std::isfinite(rep.C2));
    CHECK(std::isfinite(rep.C3));
  }
  CHECK(fit_loglog({lt[0], lt[1], 0.5 * (lt[0] + lt[1])}, {lr[0], lr[1], 0.5 * (lr[0] + lr[1])}).slope ==
        doctest::Approx(2.0).epsilon(0.1));
  // Value deviation from A·t stays within C|t|³.
  const auto far = boundary_points(1.0, Branch::Beta, 1e-2, 4);
  const auto near = boundary_points(1.0, Branch::Beta, 1e-3, 4);
  const double c_far = expansion_check(1.0, far).C3, c_near = expansion_check(1.0, near).C3;
  CHECK(c_near <= 2.0 * c_far + 1e-12);

  CHECK_THROWS_AS(expansion_check(1.0, {{Complex(0.0), Complex(1e3)}}), DomainError);
}

TEST_CASE("ratio csv") {
  const std::vector<Complex> cs{1e-2, 1e-3, 1e-4};
  const GrowthFit f = growth_fit(1.0, 0.5, cs);
  std::ostringstream out;
  write_ratio_csv(out, 1.0, cs, f.samples);
  const std::string text = out.str();
  CHECK(text.rfind("s,c,t,y0,probe_y,outer,inner_lower,inner_upper,ratio_lower\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

#include "lipmod/newton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "lipmod/error.hpp"
#include "lipmod/projective.hpp"
#include "lipmod/resultant.hpp"

namespace lipmod {

namespace {

using i64 = std::int64_t;

BiPoly without_constant(const BiPoly& p) {
  BiPoly q = p;
  q.add_term({0, 0}, -p.constant_term());
  return q;
}

// p / (x^k z^l), assuming the division is exact.
BiPoly divide_monomial(const BiPoly& p, std::uint32_t k, std::uint32_t l) {
  BiPoly out(p.varnames());
  for (const auto& [m, c] : p.terms()) out.add_term({m.i - k, m.j - l}, c);
  return out;
}

// Restriction to {second variable = 0} as a polynomial in the first.
UniPoly on_first_axis(const BiPoly& p) {
  std::vector<Scalar> v;
  for (const auto& [m, c] : p.terms()) {
    if (m.j != 0) continue;
    if (v.size() <= m.i) v.resize(m.i + 1, Scalar(0));
    v[m.i] += c;
  }
  return UniPoly(std::move(v));
}

UniPoly on_second_axis(const BiPoly& p) { return on_first_axis(swap_variables(p)); }

bool is_coordinate(const BiPoly& f, int var) {
  if (f.terms().size() != 1) return false;
  const Monomial m = f.terms().begin()->first;
  return var == 0 ? (m.i == 1 && m.j == 0) : (m.i == 0 && m.j == 1);
}

std::optional<std::uint32_t> order_or_none(const UniPoly& u) {
  if (u.is_zero()) return std::nullopt;
  return static_cast<std::uint32_t>(u.low_degree());
}

bool same_scalar(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a == b;
  return std::abs(a.complex() - b.complex()) <= 1e-9 * std::max({1.0, a.magnitude(), b.magnitude()});
}

void push_unique(std::vector<Scalar>& v, const Scalar& s) {
  for (const auto& t : v)
    if (same_scalar(t, s)) return;
  v.push_back(s);
}

double max_coeff(const BiPoly& p) {
  double m = 0.0;
  for (const auto& [mono, c] : p.terms()) m = std::max(m, c.magnitude());
  return m;
}

bool numerically_zero(const UniPoly& u, double scale) {
  if (u.is_zero()) return true;
  if (u.is_exact()) return false;
  for (const auto& c : u.coeffs())
    if (c.magnitude() > 1e-9 * scale) return false;
  return true;
}

std::uint32_t kouchnirenko_value(const NewtonDiagram& d) {
  const Rational mu = Rational(2) * d.under_area - Rational(static_cast<long>(*d.x_intercept)) -
                      Rational(static_cast<long>(*d.z_intercept)) + Rational(1);
  if (!mu.is_integer() || mu.sign() < 0) throw std::logic_error("Kouchnirenko value is not a natural number");
  return static_cast<std::uint32_t>(mu.num().get_ui());
}

}  // namespace

std::uint32_t NewtonFace::lattice_length() const {
  return static_cast<std::uint32_t>(std::gcd(static_cast<i64>(start.i) - end.i, static_cast<i64>(end.j) - start.j));
}

NewtonDiagram diagram(const BiPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("diagram of the zero polynomial");
  NewtonDiagram d;
  for (const auto& [m, c] : p.terms())
    if (m.i + m.j > 0) d.support.push_back(m);
  std::sort(d.support.begin(), d.support.end());
  if (d.support.empty()) return d;

  for (const auto& m : d.support) {
    if (m.j == 0 && (!d.x_intercept || m.i < *d.x_intercept)) d.x_intercept = m.i;
    if (m.i == 0 && (!d.z_intercept || m.j < *d.z_intercept)) d.z_intercept = m.j;
  }

  // Start at the lowest point (leftmost among those), walk left along the lower hull.
  Monomial v = d.support.front();
  for (const auto& m : d.support)
    if (m.j < v.j || (m.j == v.j && m.i < v.i)) v = m;
  std::vector<Monomial> chain{v};
  for (;;) {
    std::optional<Monomial> best;
    for (const auto& w : d.support) {
      if (w.i >= v.i) continue;
      if (!best) {
        best = w;
        continue;
      }
      // Compare slopes (w.j - v.j)/(v.i - w.i); farther point wins ties.
      const i64 lhs = (static_cast<i64>(w.j) - v.j) * (static_cast<i64>(v.i) - best->i);
      const i64 rhs = (static_cast<i64>(best->j) - v.j) * (static_cast<i64>(v.i) - w.i);
      if (lhs < rhs || (lhs == rhs && w.i < best->i)) best = w;
    }
    if (!best) break;
    const Monomial w = *best;
    NewtonFace f;
    f.start = v;
    f.end = w;
    const i64 di = static_cast<i64>(v.i) - w.i, dj = static_cast<i64>(w.j) - v.j;
    const i64 g = std::gcd(di, dj);
    f.na = dj / g;
    f.nb = di / g;
    f.level = f.na * v.i + f.nb * v.j;
    d.faces.push_back(f);
    chain.push_back(w);
    v = w;
  }

  if (d.convenient()) {
    // Polygon (0,0), (a,0), chain..., (0,b).
    std::vector<std::pair<i64, i64>> poly{{0, 0}};
    for (const auto& m : chain) poly.emplace_back(m.i, m.j);
    i64 twice = 0;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const auto& a = poly[k];
      const auto& b = poly[(k + 1) % poly.size()];
      twice += a.first * b.second - b.first * a.second;
    }
    d.under_area = Rational(mpz_class(static_cast<long>(std::llabs(twice))), mpz_class(2));
  }
  return d;
}

UniPoly face_polynomial(const BiPoly& p, const NewtonFace& face) {
  const std::uint32_t g = face.lattice_length();
  const std::uint32_t di = (face.start.i - face.end.i) / g, dj = (face.end.j - face.start.j) / g;
  std::vector<Scalar> v;
  for (std::uint32_t k = 0; k <= g; ++k) v.push_back(p.coeff({face.start.i - k * di, face.start.j + k * dj}));
  return UniPoly(std::move(v));
}

bool nondegenerate(const BiPoly& p) {
  const NewtonDiagram d = diagram(p);
  for (const auto& face : d.faces) {
    const UniPoly fp = face_polynomial(p, face);
    if (fp.is_exact()) {
      if (!is_squarefree(fp)) return false;
    } else {
      for (const auto& r : roots(fp))
        if (r.multiplicity > 1) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Intersection multiplicities

namespace {

BiPoly truncate_above(const BiPoly& p, std::uint32_t n) {
  BiPoly out(p.varnames());
  for (const auto& [m, c] : p.terms())
    if (m.degree() <= n) out.add_term(m, c);
  return out;
}

// Terms of order > n may be dropped once n bounds the multiplicity, since
// then the maximal ideal to the power n lies in (F, G) locally.
std::optional<std::uint32_t> fulton(BiPoly F, BiPoly G, std::uint32_t n, int& budget) {
  std::uint32_t acc = 0;
  F = truncate_above(F, n);
  G = truncate_above(G, n);
  for (;;) {
    if (--budget < 0) throw std::runtime_error("intersection multiplicity: step budget exhausted");
    if (!F.constant_term().is_zero() || !G.constant_term().is_zero()) return acc;
    if (F.is_zero() || G.is_zero()) return std::nullopt;
    const UniPoly f0 = on_first_axis(F), g0 = on_first_axis(G);
    const int r = f0.degree(), s = g0.degree();
    if (r < 0 && s < 0) return std::nullopt;  // both divisible by the second variable
    if (r < 0 || s < 0) {
      if (r >= 0) {
        std::swap(F, G);
      }
      // F = y·H: I(F, G) = ord G(x, 0) + I(H, G).
      const UniPoly gx = on_first_axis(G);
      acc += static_cast<std::uint32_t>(gx.low_degree());
      F = divide_monomial(F, 0, 1);
      continue;
    }
    if (r > s) {
      std::swap(F, G);
      continue;
    }
    const Scalar lf = f0.lead(), lg = g0.lead();
    const BiPoly shiftF = BiPoly::monomial({static_cast<std::uint32_t>(s - r), 0}, lg, F.varnames()) * F;
    G = truncate_above(lf * G - shiftF, n);
    // Rescaling by a unit does not change the multiplicity; it keeps the rationals small.
    const UniPoly gnew = on_first_axis(G);
    if (!G.is_zero()) G *= Scalar(1) / (gnew.is_zero() ? G.terms().begin()->second : gnew.lead());
  }
}

}  // namespace

namespace {

// True when p and q provably share no factor of positive degree in `var`:
// some specialization of the other variable keeps both leading
// coefficients and has coprime images.
bool coprime_certificate(const BiPoly& p, const BiPoly& q, int var) {
  const auto cp = coefficients_in(p, var), cq = coefficients_in(q, var);
  if (cp.size() <= 1 || cq.size() <= 1) return true;
  for (long k = 0; k < 8; ++k) {
    const Scalar t(Rational(mpz_class(2 * k + 3), mpz_class(k + 2)));
    if (cp.back().eval(t).is_zero() || cq.back().eval(t).is_zero()) continue;
    std::vector<Scalar> a, b;
    for (const auto& c : cp) a.push_back(c.eval(t));
    for (const auto& c : cq) b.push_back(c.eval(t));
    if (gcd(UniPoly(a), UniPoly(b)).degree() == 0) return true;
  }
  return false;
}

}  // namespace

std::optional<std::uint32_t> intersection_multiplicity(const BiPoly& p, const BiPoly& q) {
  if (!p.is_exact() || !q.is_exact())
    throw DomainError("inexact_intersection", "intersection multiplicity needs exact coefficients");
  if (p.is_zero() || q.is_zero()) return std::nullopt;
  int budget = 200000;
  // Without a common component, Bezout bounds the local multiplicity and
  // truncation is safe; with one, run untruncated.
  const bool common = !coprime_certificate(p, q, 0) || !coprime_certificate(p, q, 1);
  const auto n = common ? std::numeric_limits<std::uint32_t>::max()
                        : static_cast<std::uint32_t>(std::max(p.degree(), 1) * std::max(q.degree(), 1));
  return fulton(p, q, n, budget);
}

std::optional<std::uint32_t> local_intersection(const BiPoly& q1, const BiPoly& q2) {
  if (!q1.constant_term().is_zero() || !q2.constant_term().is_zero()) return 0u;
  const auto c1 = coefficients_in(q1, 0), c2 = coefficients_in(q2, 0);
  bool local = !c1.empty() && !c2.empty() && !c1.back().eval(Scalar(0)).is_zero() &&
               !c2.back().eval(Scalar(0)).is_zero();
  if (local) {
    const UniPoly g = gcd(on_first_axis(q1), on_first_axis(q2));
    local = g.degree() == g.low_degree();
  }
  if (local) {
    const UniPoly r = resultant(c1, c2);
    if (!r.is_zero()) return static_cast<std::uint32_t>(r.low_degree());
  }
  return intersection_multiplicity(q1, q2);
}

// ---------------------------------------------------------------------------
// Milnor numbers

namespace {

MilnorResult convenient_milnor(const BiPoly& q, const MilnorOptions& opts) {
  MilnorResult res;
  const NewtonDiagram d = diagram(q);
  res.convenient = true;
  res.nondegenerate = nondegenerate(q);
  if (res.nondegenerate) {
    res.mu = kouchnirenko_value(d);
    res.method = "kouchnirenko";
    return res;
  }
  if (!opts.force)
    throw DomainError("degenerate_face", "Newton diagram of " + q.str() + " has a degenerate face",
                      "face polynomial with a repeated nonzero root");
  res.mu = intersection_multiplicity(partial(q, 0), partial(q, 1));
  res.method = "intersection";
  return res;
}

}  // namespace

MilnorResult milnor_newton(const BiPoly& p_in, const MilnorOptions& opts) {
  const BiPoly p = without_constant(p_in);
  MilnorResult res;
  if (p.is_zero()) {
    res.method = "non_isolated";
    return res;
  }
  if (!p.coeff({1, 0}).is_zero() || !p.coeff({0, 1}).is_zero()) {
    res.mu = 0;
    res.smooth = true;
    res.method = "smooth";
    const NewtonDiagram d = diagram(p);
    res.convenient = d.convenient();
    res.nondegenerate = true;
    return res;
  }
  const auto k = static_cast<std::uint32_t>(p.low_degree_in(0));
  const auto l = static_cast<std::uint32_t>(p.low_degree_in(1));
  if (k == 0 && l == 0) return convenient_milnor(p, opts);
  if (k >= 2 || l >= 2) {
    res.method = "non_isolated";
    return res;
  }
  std::vector<BiPoly> factors;
  const VarNames& n = p.varnames();
  if (k == 1) factors.push_back(BiPoly::variable(0, n));
  if (l == 1) factors.push_back(BiPoly::variable(1, n));
  factors.push_back(divide_monomial(p, k, l));
  res = recombine(factors, opts);
  res.method = "split";
  return res;
}

MilnorResult recombine(const std::vector<BiPoly>& all_factors, const MilnorOptions& opts) {
  std::vector<BiPoly> factors;
  for (const auto& f : all_factors)
    if (f.constant_term().is_zero() && !f.is_zero()) factors.push_back(f);
  MilnorResult res;
  res.method = "split";
  res.convenient = false;
  res.nondegenerate = true;
  bool finite = true;
  std::int64_t total = 0;
  for (std::size_t a = 0; a < factors.size(); ++a) {
    SplitFactor sf;
    sf.factor = factors[a].str();
    const MilnorResult m = milnor_newton(factors[a], opts);
    res.nondegenerate = res.nondegenerate && m.nondegenerate;
    sf.mu = m.mu;
    if (m.mu) total += *m.mu;
    else finite = false;
    for (std::size_t b = 0; b < factors.size(); ++b) {
      if (b == a) continue;
      std::optional<std::uint32_t> i;
      if (is_coordinate(factors[a], 0)) i = order_or_none(on_second_axis(factors[b]));
      else if (is_coordinate(factors[b], 0)) i = order_or_none(on_second_axis(factors[a]));
      else if (is_coordinate(factors[a], 1)) i = order_or_none(on_first_axis(factors[b]));
      else if (is_coordinate(factors[b], 1)) i = order_or_none(on_first_axis(factors[a]));
      else i = local_intersection(factors[a], factors[b]);
      sf.intersections.push_back({factors[b].str(), i});
      if (b > a) {
        if (i) total += 2 * static_cast<std::int64_t>(*i);
        else finite = false;
      }
    }
    res.splitting_trace.push_back(std::move(sf));
  }
  if (factors.empty()) {
    res.mu = 0;
    res.smooth = true;
    return res;
  }
  total -= static_cast<std::int64_t>(factors.size()) - 1;
  if (finite) res.mu = static_cast<std::uint32_t>(total);
  else res.method = "non_isolated";
  return res;
}

// ---------------------------------------------------------------------------
// Jumps at infinity

namespace {

Rational draw_generic(std::mt19937_64& g) {
  for (;;) {
    const long p = std::uniform_int_distribution<long>(-97, 97)(g);
    const long q = std::uniform_int_distribution<long>(1, 97)(g);
    if (p != 0) return Rational(mpz_class(p), mpz_class(q));
  }
}

std::uint32_t finite_mu(const MilnorResult& m, const std::string& what) {
  if (!m.mu) throw DomainError("non_isolated_at_infinity", what + " has a non-isolated singularity at infinity");
  return *m.mu;
}

}  // namespace

LambdaResult lambda_at_infinity(const BiPoly& p, const ProjPoint& P, std::uint64_t seed) {
  if (!P.at_infinity()) throw std::invalid_argument("lambda_at_infinity: " + P.str() + " is not at infinity");
  const auto d = static_cast<std::uint32_t>(p.degree());
  BiPoly g0 = localize_at_infinity(homogenize(p, d), P);
  if (!g0.constant_term().is_zero() && !g0.is_exact()) g0.add_term({0, 0}, -g0.constant_term());
  g0 = g0.chop(1e-12);
  if (!g0.constant_term().is_zero())
    throw std::invalid_argument("lambda_at_infinity: " + P.str() + " is not on the curve at infinity");
  const VarNames& n = g0.varnames();
  const Monomial zd{0, d};
  auto level = [&](const Scalar& c) { return g0 - BiPoly::monomial(zd, c, n); };

  LambdaResult res;
  const Scalar cz = g0.coeff(zd);
  push_unique(res.candidates, cz);

  std::mt19937_64 engine(seed);
  auto fresh = [&]() {
    for (;;) {
      const Rational c = draw_generic(engine);
      bool clash = false;
      for (const auto& k : res.candidates) clash = clash || same_scalar(k, Scalar(c));
      if (!clash) return c;
    }
  };

  // Faces of the generic diagram through (0, d) degenerate where their
  // discriminant in t, a polynomial in c, vanishes.
  const Rational c_probe = fresh();
  const BiPoly generic_probe = level(Scalar(c_probe));
  for (const auto& face : diagram(generic_probe).faces) {
    const std::uint32_t g = face.lattice_length();
    const std::uint32_t di = (face.start.i - face.end.i) / g, dj = (face.end.j - face.start.j) / g;
    BiPoly T({"t", "c"});
    bool depends = false;
    for (std::uint32_t k = 0; k <= g; ++k) {
      const Monomial m{face.start.i - k * di, face.start.j + k * dj};
      T.add_term({k, 0}, g0.coeff(m));
      if (m == zd) {
        T.add_term({k, 1}, Scalar(-1));
        depends = true;
      }
    }
    if (!depends || T.degree_in(0) < 2) continue;
    const BiPoly disc = resultant(T, partial(T, 0), 0);
    if (disc.is_zero() || disc.degree_in(1) <= 0) continue;
    for (const auto& r : roots(to_unipoly(disc, 1))) push_unique(res.candidates, r.value);
  }

  const Rational c1 = c_probe, c2 = fresh();
  res.generic_c = {c1, c2};
  const std::uint32_t mu1 = finite_mu(milnor_newton(level(Scalar(c1))), "generic fiber");
  const std::uint32_t mu2 = finite_mu(milnor_newton(level(Scalar(c2))), "generic fiber");
  if (mu1 != mu2)
    throw DomainError("generic_mismatch", "generic Milnor numbers at " + P.str() + " disagree: " +
                                              std::to_string(mu1) + " vs " + std::to_string(mu2));
  res.mu_generic = mu1;

  MilnorOptions force;
  force.force = true;
  std::sort(res.candidates.begin(), res.candidates.end(), scalar_less);
  for (const auto& c : res.candidates) {
    const std::uint32_t mu = finite_mu(milnor_newton(level(c), force), "fiber c = " + c.str());
    if (mu > res.mu_generic) {
      res.special.emplace_back(c, mu);
      res.lambda += mu - res.mu_generic;
      res.local_irregular.push_back(c);
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Affine critical points and classification

namespace {

UniPoly specialize_second(const BiPoly& p, const Scalar& y0) {
  std::vector<Scalar> v;
  for (const auto& cu : coefficients_in(p, 0)) v.push_back(cu.eval(y0));
  return UniPoly(std::move(v));
}

// Newton iteration on (px, py) = 0.
void polish(const BiPoly& px, const BiPoly& py, Complex& x, Complex& y) {
  const BiPoly pxx = partial(px, 0), pxy = partial(px, 1), pyy = partial(py, 1);
  for (int it = 0; it < 20; ++it) {
    const Complex a = eval_complex(px, x, y), b = eval_complex(py, x, y);
    const Complex j11 = eval_complex(pxx, x, y), j12 = eval_complex(pxy, x, y), j22 = eval_complex(pyy, x, y);
    const Complex det = j11 * j22 - j12 * j12;
    if (std::abs(det) == 0.0) return;
    const Complex dx = (a * j22 - b * j12) / det, dy = (b * j11 - a * j12) / det;
    x -= dx;
    y -= dy;
    if (std::abs(dx) + std::abs(dy) <= 1e-15 * (1.0 + std::abs(x) + std::abs(y))) return;
  }
}

}  // namespace

std::vector<CriticalPoint> affine_critical(const BiPoly& p) {
  if (p.degree() <= 0) throw std::invalid_argument("affine_critical: polynomial is constant");
  const BiPoly px = partial(p, 0), py = partial(p, 1);
  const std::string locus = "common factor of the partial derivatives";
  auto non_isolated = [&]() {
    return DomainError("non_isolated_critical_locus", "critical locus of " + p.str() + " is not zero-dimensional",
                       locus);
  };
  if (px.is_zero() || py.is_zero()) {
    // p depends on one variable only: critical points come in whole lines.
    const BiPoly& other = px.is_zero() ? py : px;
    const int var = px.is_zero() ? 1 : 0;
    if (!roots(to_unipoly(other, var)).empty()) throw non_isolated();
    return {};
  }
  const double scale = std::pow(std::max(1.0, max_coeff(px)), std::max(1, py.degree_in(0))) *
                       std::pow(std::max(1.0, max_coeff(py)), std::max(1, px.degree_in(0)));
  const UniPoly ry = to_unipoly(resultant(px, py, 0), 1);
  const UniPoly rx = to_unipoly(resultant(px, py, 1), 0);
  if (numerically_zero(ry, scale) || numerically_zero(rx, scale)) throw non_isolated();

  const bool exact = p.is_exact();
  std::vector<CriticalPoint> out;
  for (const auto& yr : roots(ry)) {
    const UniPoly ux = specialize_second(px, yr.value), uy = specialize_second(py, yr.value);
    if (ux.is_zero() && uy.is_zero()) throw non_isolated();
    for (const auto& xr : roots(ux.is_zero() ? uy : ux)) {
      Scalar x0 = xr.value, y0 = yr.value;
      bool ok;
      if (exact && x0.is_exact() && y0.is_exact()) {
        ok = eval(px, x0, y0).is_zero() && eval(py, x0, y0).is_zero();
      } else {
        Complex cx = x0.complex(), cy = y0.complex();
        polish(px, py, cx, cy);
        const double res = std::abs(eval_complex(px, cx, cy)) + std::abs(eval_complex(py, cx, cy));
        ok = res <= 1e-8 * std::max(1.0, max_coeff(px) + max_coeff(py)) * (1.0 + std::pow(std::abs(cx) + std::abs(cy), p.degree()));
        x0 = Scalar(cx);
        y0 = Scalar(cy);
      }
      if (!ok) continue;
      bool dup = false;
      for (const auto& q : out) dup = dup || (same_scalar(q.x, x0) && same_scalar(q.y, y0));
      if (dup) continue;
      CriticalPoint cp{x0, y0, eval(p, x0, y0), 0};
      BiPoly local = shift(p, x0, y0);
      if (!local.is_exact()) local = local.chop(1e-10);
      MilnorOptions force;
      force.force = local.is_exact();
      const MilnorResult m = milnor_newton(local, force);
      if (!m.mu) throw non_isolated();
      cp.mu = *m.mu;
      out.push_back(cp);
    }
  }
  return out;
}

std::uint32_t ClassificationReport::lambda_total() const {
  std::uint32_t t = 0;
  for (const auto& ip : infinity_points) t += ip.lambda;
  return t;
}

ClassificationReport classify(const BiPoly& p, std::uint64_t seed) {
  ClassificationReport r;
  r.degree = static_cast<std::uint32_t>(std::max(p.degree(), 0));
  for (const auto& cp : affine_critical(p)) {
    r.affine_mu += cp.mu;
    push_unique(r.affine_critical_values, cp.value);
  }
  std::sort(r.affine_critical_values.begin(), r.affine_critical_values.end(), scalar_less);
  r.B = r.affine_critical_values;
  for (const auto& P : infinity_points(p)) {
    const LambdaResult lam = lambda_at_infinity(p, P, seed);
    r.infinity_points.push_back({P, lam.mu_generic, lam.lambda, lam.local_irregular});
    for (const auto& c : lam.local_irregular) push_unique(r.B, c);
  }
  std::sort(r.B.begin(), r.B.end(), scalar_less);
  r.chi_generic = 1 - static_cast<std::int64_t>(r.affine_mu) - static_cast<std::int64_t>(r.lambda_total());
  return r;
}

}  // namespace lipmod

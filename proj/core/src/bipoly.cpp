#include "lipmod/bipoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lipmod/error.hpp"

namespace lipmod {

namespace {

void check_exponent(std::uint64_t e) {
  if (e > kMaxExponent) throw std::overflow_error("exponent exceeds 2^16");
}

std::string monomial_text(const VarNames& names, Monomial m) {
  std::string s;
  auto put = [&](const std::string& v, std::uint32_t e) {
    if (e == 0) return;
    if (!s.empty()) s += "*";
    s += v;
    if (e > 1) s += "^" + std::to_string(e);
  };
  put(names[0], m.i);
  put(names[1], m.j);
  return s;
}

}  // namespace

BiPoly BiPoly::constant(const Scalar& c, VarNames names) {
  BiPoly p(std::move(names));
  p.add_term({0, 0}, c);
  return p;
}

BiPoly BiPoly::variable(int index, VarNames names) {
  if (index != 0 && index != 1) throw std::invalid_argument("variable index must be 0 or 1");
  BiPoly p(std::move(names));
  p.add_term(index == 0 ? Monomial{1, 0} : Monomial{0, 1}, Scalar(1));
  return p;
}

BiPoly BiPoly::monomial(Monomial m, const Scalar& c, VarNames names) {
  BiPoly p(std::move(names));
  p.add_term(m, c);
  return p;
}

BiPoly BiPoly::with_varnames(VarNames names) const {
  BiPoly p(*this);
  p.names_ = std::move(names);
  return p;
}

bool BiPoly::is_exact() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_exact(); });
}

int BiPoly::degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree()); }

int BiPoly::degree_in(int var) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(var == 0 ? m.i : m.j));
  return d;
}

int BiPoly::low_degree_in(int var) const {
  if (terms_.empty()) return -1;
  std::uint32_t d = UINT32_MAX;
  for (const auto& [m, c] : terms_) d = std::min(d, var == 0 ? m.i : m.j);
  return static_cast<int>(d);
}

Scalar BiPoly::coeff(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void BiPoly::add_term(Monomial m, const Scalar& c) {
  check_exponent(m.i);
  check_exponent(m.j);
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::string BiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const std::string mono = monomial_text(names_, m);
    std::string coef;
    bool negative = false;
    if (c.is_exact()) {
      Rational r = c.rational();
      negative = r.sign() < 0;
      r = r.abs();
      if (mono.empty()) coef = r.str();
      else if (r != Rational(1)) coef = r.str() + "*";
    } else {
      const Complex z = c.complex();
      coef = z.imag() == 0.0 ? "(" + format_double(z.real()) + ")" : format_complex(z);
      if (!mono.empty()) coef += "*";
    }
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    out += coef + mono;
    first = false;
  }
  return out;
}

BiPoly BiPoly::chop(double tol) const {
  double scale = 0.0;
  for (const auto& [m, c] : terms_) scale = std::max(scale, c.magnitude());
  BiPoly out(names_);
  for (const auto& [m, c] : terms_)
    if (c.is_exact() || c.magnitude() > tol * scale) out.terms_.emplace(m, c);
  return out;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

BiPoly& BiPoly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly out(a.names_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      check_exponent(std::uint64_t{ma.i} + mb.i);
      check_exponent(std::uint64_t{ma.j} + mb.j);
      out.add_term({ma.i + mb.i, ma.j + mb.j}, ca * cb);
    }
  return out;
}

BiPoly operator-(const BiPoly& a) {
  BiPoly out(a.names_);
  for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
  return out;
}

BiPoly BiPoly::pow(unsigned e) const {
  BiPoly acc = constant(Scalar(1), names_);
  BiPoly base = *this;
  for (; e != 0; e >>= 1) {
    if (e & 1U) acc = acc * base;
    if (e > 1) base = base * base;
  }
  return acc;
}

Scalar eval(const BiPoly& p, const Scalar& x, const Scalar& y) {
  if (p.is_exact() && x.is_exact() && y.is_exact()) {
    return Scalar(evaluate<Rational>(p, x.rational(), y.rational(),
                                     [](const Scalar& c) { return c.rational(); }));
  }
  return Scalar(eval_complex(p, x.complex(), y.complex()));
}

Complex eval_complex(const BiPoly& p, Complex x, Complex y) {
  return evaluate<Complex>(p, x, y, [](const Scalar& c) { return c.complex(); });
}

BiPoly partial(const BiPoly& p, int var) {
  if (var != 0 && var != 1) throw std::invalid_argument("partial: var must be 0 or 1");
  BiPoly out(p.varnames());
  for (const auto& [m, c] : p.terms()) {
    const std::uint32_t e = var == 0 ? m.i : m.j;
    if (e == 0) continue;
    Monomial d = var == 0 ? Monomial{m.i - 1, m.j} : Monomial{m.i, m.j - 1};
    out.add_term(d, c * Scalar(static_cast<long>(e)));
  }
  return out;
}

BiPoly shift(const BiPoly& p, const Scalar& dx, const Scalar& dy) {
  if (dx.is_zero() && dy.is_zero()) return p;
  const VarNames& n = p.varnames();
  const BiPoly X = BiPoly::variable(0, n) + BiPoly::constant(dx, n);
  const BiPoly Y = BiPoly::variable(1, n) + BiPoly::constant(dy, n);
  // Cache powers; the substitution is a polynomial identity.
  std::map<std::uint32_t, BiPoly> xp, yp;
  auto power_of = [](std::map<std::uint32_t, BiPoly>& cache, const BiPoly& base, std::uint32_t e) {
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    return cache.emplace(e, base.pow(e)).first->second;
  };
  BiPoly out(n);
  for (const auto& [m, c] : p.terms()) out += c * (power_of(xp, X, m.i) * power_of(yp, Y, m.j));
  return out;
}

BiPoly swap_variables(const BiPoly& p) {
  BiPoly out(VarNames{p.varnames()[1], p.varnames()[0]});
  for (const auto& [m, c] : p.terms()) out.add_term({m.j, m.i}, c);
  return out;
}

// ---------------------------------------------------------------------------

void HomPoly::add_term(Monomial3 m, const Scalar& c) {
  if (m.i + m.j + m.k != total_degree_) throw std::invalid_argument("HomPoly: term degree mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Scalar HomPoly::eval(const Scalar& x, const Scalar& y, const Scalar& z) const {
  Scalar acc(0);
  for (const auto& [m, c] : terms_) acc += c * x.pow(m.i) * y.pow(m.j) * z.pow(m.k);
  return acc;
}

std::string HomPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    auto put = [&](const std::string& v, std::uint32_t e) {
      if (e == 0) return;
      if (!mono.empty()) mono += "*";
      mono += v;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    put(names_[0], m.i);
    put(names_[1], m.j);
    put(names_[2], m.k);
    std::string coef;
    bool negative = false;
    if (c.is_exact()) {
      Rational r = c.rational();
      negative = r.sign() < 0;
      r = r.abs();
      if (mono.empty()) coef = r.str();
      else if (r != Rational(1)) coef = r.str() + "*";
    } else {
      coef = format_complex(c.complex());
      if (!mono.empty()) coef += "*";
    }
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    out += coef + mono;
    first = false;
  }
  return out;
}

ProjPoint::ProjPoint(const Scalar& a, const Scalar& b, const Scalar& c) : coords_{a, b, c} {
  for (std::size_t i = 0; i < 3; ++i) {
    if (coords_[i].is_zero()) continue;
    const Scalar lead = coords_[i];
    for (auto& x : coords_) x = x / lead;
    coords_[i] = Scalar(1);
    return;
  }
  throw std::invalid_argument("projective point with all coordinates zero");
}

std::string ProjPoint::str() const {
  return "(" + coords_[0].str() + ":" + coords_[1].str() + ":" + coords_[2].str() + ")";
}

HomPoly homogenize(const BiPoly& p, unsigned deg, const std::string& zname) {
  if (p.degree() > static_cast<int>(deg))
    throw std::invalid_argument("homogenize: target degree below polynomial degree");
  HomPoly F(deg, {p.varnames()[0], p.varnames()[1], zname});
  for (const auto& [m, c] : p.terms()) F.add_term({m.i, m.j, deg - m.i - m.j}, c);
  return F;
}

BiPoly localize_at_infinity(const HomPoly& F, const ProjPoint& P) {
  const auto& n = F.varnames();
  const bool x_chart = P[0] == Scalar(1);
  if (!x_chart && !(P[0].is_zero() && P[1] == Scalar(1)))
    throw std::invalid_argument("localize_at_infinity: point " + P.str() +
                                " needs a unit coordinate in position 0 or 1");
  // Remaining affine coordinates, translated so that P sits at the origin.
  const VarNames names = x_chart ? VarNames{n[1], n[2]} : VarNames{n[0], n[2]};
  const BiPoly u = BiPoly::variable(0, names) + BiPoly::constant(x_chart ? P[1] : P[0], names);
  const BiPoly z = BiPoly::variable(1, names) + BiPoly::constant(P[2], names);
  BiPoly out(names);
  for (const auto& [m, c] : F.terms()) {
    const std::uint32_t eu = x_chart ? m.j : m.i;
    out += c * (u.pow(eu) * z.pow(m.k));
  }
  return out;
}

}  // namespace lipmod

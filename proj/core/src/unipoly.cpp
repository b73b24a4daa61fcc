#include "lipmod/unipoly.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lipmod/rational.hpp"

namespace lipmod {

UniPoly::UniPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Scalar& c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(unsigned k, const Scalar& c) {
  std::vector<Scalar> v(k + 1, Scalar(0));
  v[k] = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool UniPoly::is_exact() const {
  return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.is_exact(); });
}

int UniPoly::low_degree() const {
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (!c_[k].is_zero()) return static_cast<int>(k);
  return -1;
}

Scalar UniPoly::eval(const Scalar& t) const {
  Scalar acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Complex UniPoly::eval_complex(Complex t) const {
  Complex acc(0.0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + it->complex();
  return acc;
}

UniPoly UniPoly::monic() const {
  if (c_.empty()) return *this;
  const Scalar l = lead();
  std::vector<Scalar> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c / l);
  v.back() = l.is_exact() ? Scalar(1) : Scalar(Complex(1.0));
  return UniPoly(std::move(v));
}

UniPoly UniPoly::chop(double tol) const {
  double scale = 0.0;
  for (const auto& c : c_) scale = std::max(scale, c.magnitude());
  std::vector<Scalar> v = c_;
  for (auto& c : v)
    if (!c.is_exact() && c.magnitude() <= tol * scale) c = Scalar(0);
  return UniPoly(std::move(v));
}

std::string UniPoly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k].is_zero()) continue;
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    std::string coef = c_[k].str();
    bool negative = false;
    if (c_[k].is_exact()) {
      negative = c_[k].rational().sign() < 0;
      coef = c_[k].rational().abs().str();
      if (!mono.empty() && coef == "1") coef.clear();
    }
    if (!mono.empty() && !coef.empty()) coef += "*";
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    out += coef + mono;
  }
  return out;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

UniPoly operator-(const UniPoly& a) {
  std::vector<Scalar> v;
  v.reserve(a.c_.size());
  for (const auto& c : a.c_) v.push_back(-c);
  return UniPoly(std::move(v));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Scalar> v(a.c_.size() + b.c_.size() - 1, Scalar(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(std::move(v));
}

UniPoly operator*(const Scalar& s, const UniPoly& a) {
  std::vector<Scalar> v;
  v.reserve(a.c_.size());
  for (const auto& c : a.c_) v.push_back(s * c);
  return UniPoly(std::move(v));
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::domain_error("UniPoly division by zero");
  const int db = b.degree();
  std::vector<Scalar> r = a.coeffs();
  if (a.degree() < db) return {UniPoly(), a};
  std::vector<Scalar> q(static_cast<std::size_t>(a.degree() - db + 1), Scalar(0));
  const Scalar lb = b.lead();
  for (int k = a.degree() - db; k >= 0; --k) {
    const Scalar f = r[static_cast<std::size_t>(k + db)] / lb;
    q[static_cast<std::size_t>(k)] = f;
    if (f.is_zero()) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= f * b.coeff(static_cast<unsigned>(j));
    // The cancelled coefficient is zero by construction; avoid roundoff residue.
    r[static_cast<std::size_t>(k + db)] = Scalar(0);
  }
  r.resize(static_cast<std::size_t>(db));
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

UniPoly exact_quotient(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero() && r.is_exact()) throw std::logic_error("exact_quotient: nonzero remainder");
  return q;
}

UniPoly derivative(const UniPoly& p) {
  if (p.degree() <= 0) return {};
  std::vector<Scalar> v;
  v.reserve(static_cast<std::size_t>(p.degree()));
  for (int k = 1; k <= p.degree(); ++k) v.push_back(p.coeff(static_cast<unsigned>(k)) * Scalar(static_cast<long>(k)));
  return UniPoly(std::move(v));
}

UniPoly gcd(const UniPoly& a, const UniPoly& b, double tol) {
  UniPoly x = a, y = b;
  const bool exact = a.is_exact() && b.is_exact();
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second;
    if (!exact) {
      double scale = 0.0;
      for (const auto& c : x.coeffs()) scale = std::max(scale, c.magnitude());
      std::vector<Scalar> v = r.coeffs();
      for (auto& c : v)
        if (c.magnitude() <= tol * scale) c = Scalar(0);
      r = UniPoly(std::move(v));
    }
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::vector<std::pair<UniPoly, int>> squarefree(const UniPoly& p) {
  std::vector<std::pair<UniPoly, int>> out;
  if (p.degree() <= 0) return out;
  const UniPoly dp = derivative(p);
  UniPoly a = gcd(p, dp);
  UniPoly b = exact_quotient(p, a);
  UniPoly c = exact_quotient(dp, a);
  UniPoly d = c - derivative(b);
  for (int k = 1; b.degree() > 0; ++k) {
    a = gcd(b, d);
    if (a.degree() > 0) out.emplace_back(a, k);
    b = exact_quotient(b, a);
    c = exact_quotient(d, a);
    d = c - derivative(b);
  }
  return out;
}

bool is_squarefree(const UniPoly& p) { return p.degree() <= 0 || gcd(p, derivative(p)).degree() == 0; }

namespace {

std::vector<Complex> numeric_roots(const UniPoly& p) {
  const int n = p.degree();
  std::vector<Complex> out;
  if (n <= 0) return out;
  const UniPoly m = p.monic();
  std::vector<Complex> c(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = m.coeff(static_cast<unsigned>(k)).complex();
  // Zero roots are split off exactly rather than left to the eigensolver.
  int z = 0;
  while (z < n && c[static_cast<std::size_t>(z)] == Complex(0.0)) ++z;
  out.assign(static_cast<std::size_t>(z), Complex(0.0));
  const int deg = n - z;
  if (deg == 0) return out;
  if (deg == 1) {
    out.push_back(-c[static_cast<std::size_t>(z)]);
    return out;
  }
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[static_cast<std::size_t>(z + i)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
  const UniPoly dm = derivative(m);
  for (int i = 0; i < deg; ++i) {
    Complex r = solver.eigenvalues()[i];
    for (int it = 0; it < 8; ++it) {
      const Complex fd = dm.eval_complex(r);
      if (fd == Complex(0.0)) break;
      const Complex step = m.eval_complex(r) / fd;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      r -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(r))) break;
    }
    out.push_back(r);
  }
  return out;
}

// Clean near-real values and snap to rationals that are exact roots.
Scalar settle(const UniPoly& factor, Complex r) {
  const double scale = std::max(1.0, std::abs(r));
  if (std::abs(r.imag()) <= 1e-10 * scale) {
    if (factor.is_exact() && std::abs(r.real()) < 1e12) {
      const Rational q = rationalize(r.real(), 1000000);
      if (factor.eval(Scalar(q)).is_zero()) return Scalar(q);
    }
    return Scalar(Complex(r.real(), 0.0));
  }
  return Scalar(r);
}

}  // namespace

std::vector<Root> roots(const UniPoly& p) {
  std::vector<Root> out;
  if (p.degree() <= 0) return out;
  if (p.is_exact()) {
    for (const auto& [factor, k] : squarefree(p))
      for (Complex r : numeric_roots(factor)) out.push_back({settle(factor, r), k});
  } else {
    // No exact square-free split: merge clustered roots instead.
    std::vector<Complex> rs = numeric_roots(p);
    std::vector<bool> used(rs.size(), false);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      if (used[i]) continue;
      Complex sum = rs[i];
      int mult = 1;
      for (std::size_t j = i + 1; j < rs.size(); ++j) {
        if (!used[j] && std::abs(rs[j] - rs[i]) <= 1e-6 * std::max(1.0, std::abs(rs[i]))) {
          used[j] = true;
          sum += rs[j];
          ++mult;
        }
      }
      out.push_back({settle(p, sum / static_cast<double>(mult)), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) { return scalar_less(a.value, b.value); });
  return out;
}

}  // namespace lipmod

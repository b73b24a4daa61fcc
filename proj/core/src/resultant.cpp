#include "lipmod/resultant.hpp"

#include <stdexcept>

namespace lipmod {

std::vector<UniPoly> coefficients_in(const BiPoly& p, int var) {
  const int d = p.degree_in(var);
  std::vector<std::vector<Scalar>> raw(static_cast<std::size_t>(d + 1));
  for (const auto& [m, c] : p.terms()) {
    const std::uint32_t e = var == 0 ? m.i : m.j;
    const std::uint32_t o = var == 0 ? m.j : m.i;
    auto& row = raw[e];
    if (row.size() <= o) row.resize(o + 1, Scalar(0));
    row[o] += c;
  }
  std::vector<UniPoly> out;
  out.reserve(raw.size());
  for (auto& row : raw) out.emplace_back(std::move(row));
  return out;
}

UniPoly to_unipoly(const BiPoly& p, int var) {
  if (p.degree_in(1 - var) > 0) throw std::invalid_argument("to_unipoly: polynomial involves both variables");
  std::vector<Scalar> v(static_cast<std::size_t>(std::max(p.degree_in(var), 0) + 1), Scalar(0));
  for (const auto& [m, c] : p.terms()) v[var == 0 ? m.i : m.j] += c;
  return UniPoly(std::move(v));
}

BiPoly from_unipoly(const UniPoly& u, int var, const VarNames& names) {
  BiPoly out(names);
  for (int k = 0; k <= u.degree(); ++k) {
    const auto e = static_cast<std::uint32_t>(k);
    out.add_term(var == 0 ? Monomial{e, 0} : Monomial{0, e}, u.coeff(e));
  }
  return out;
}

UniPoly resultant(const std::vector<UniPoly>& p, const std::vector<UniPoly>& q) {
  auto degree_of = [](const std::vector<UniPoly>& v) {
    int d = static_cast<int>(v.size()) - 1;
    while (d >= 0 && v[static_cast<std::size_t>(d)].is_zero()) --d;
    return d;
  };
  const int m = degree_of(p), n = degree_of(q);
  if (m < 0 || n < 0) throw std::invalid_argument("resultant of a zero polynomial");
  const int size = m + n;
  if (size == 0) return UniPoly::constant(Scalar(1));

  bool exact = true;
  for (const auto& c : p) exact = exact && c.is_exact();
  for (const auto& c : q) exact = exact && c.is_exact();

  std::vector<std::vector<UniPoly>> M(static_cast<std::size_t>(size), std::vector<UniPoly>(static_cast<std::size_t>(size)));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) M[r][r + m - k] = p[static_cast<std::size_t>(k)];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) M[n + r][r + n - k] = q[static_cast<std::size_t>(k)];

  int sign = 1;
  UniPoly prev = UniPoly::constant(Scalar(1));
  for (int k = 0; k < size - 1; ++k) {
    if (M[k][k].is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < size; ++i)
        if (!M[i][k].is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return {};
      std::swap(M[k], M[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        UniPoly num = M[k][k] * M[i][j] - M[i][k] * M[k][j];
        M[i][j] = exact ? exact_quotient(num, prev) : divmod(num, prev).first.chop(1e-13);
      }
      M[i][k] = UniPoly();
    }
    prev = M[k][k];
  }
  UniPoly det = M[size - 1][size - 1];
  return sign > 0 ? det : -det;
}

BiPoly resultant(const BiPoly& p, const BiPoly& q, int var) {
  if (p.is_zero() || q.is_zero()) throw std::invalid_argument("resultant of a zero polynomial");
  const UniPoly r = resultant(coefficients_in(p, var), coefficients_in(q, var));
  return from_unipoly(r, 1 - var, p.varnames());
}

}  // namespace lipmod

#include "lipmod/metricinf.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "lipmod/error.hpp"

namespace lipmod {

namespace {

Complex family_value(Complex s, Complex x, Complex y) {
  const Complex u = x * y;
  return x * (u * u - s * u - 1.0);
}

Complex dfdx(Complex s, Complex x, Complex y) {
  const Complex u = x * y;
  return 3.0 * u * u - 2.0 * s * u - 1.0;
}

Complex dfdy(Complex s, Complex x, Complex y) { return x * x * (2.0 * x * y - s); }

// Roots of ξ³ − sξ² − ξ − k, Newton-polished.
std::array<Complex, 3> xi_roots(Complex s, Complex k) {
  if (k == 0.0) {
    // ξ(ξ² − sξ − 1): the zero root is exact.
    const Complex r = std::sqrt(s * s + 4.0);
    const Complex q = 0.5 * (s + (std::real(std::conj(s) * r) >= 0.0 ? r : -r));
    return {Complex(0.0), q, -1.0 / q};
  }
  Eigen::Matrix3cd comp = Eigen::Matrix3cd::Zero();
  comp(1, 0) = 1.0;
  comp(2, 1) = 1.0;
  comp(0, 2) = k;
  comp(1, 2) = 1.0;
  comp(2, 2) = s;
  const Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(comp, false);
  std::array<Complex, 3> eig{};
  for (int i = 0; i < 3; ++i) eig[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  std::array<Complex, 3> r = eig;
  for (std::size_t i = 0; i < 3; ++i) {
    // Newton is ill-conditioned inside a near-double pair; the eigenvalues
    // are kept there as they are.
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < 3; ++j)
      if (j != i) gap = std::min(gap, std::abs(eig[i] - eig[j]));
    if (gap < 1e-3 * std::max(1.0, std::abs(eig[i]))) continue;
    Complex z = eig[i];
    for (int it = 0; it < 4; ++it) {
      const Complex p = ((z - s) * z - 1.0) * z - k;
      const Complex dp = (3.0 * z - 2.0 * s) * z - 1.0;
      if (dp == 0.0) break;
      const Complex next = z - p / dp;
      const Complex pn = ((next - s) * next - 1.0) * next - k;
      if (!(std::abs(pn) < std::abs(p)) || std::abs(next - eig[i]) > 0.1 * gap) break;
      z = next;
    }
    r[i] = z;
  }
  // Vieta: Σξ = s, Πξ = k.
  const double m = std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2]), 1e-300});
  if (std::abs(r[0] + r[1] + r[2] - s) > 1e-10 * std::max(1.0, 3.0 * m) ||
      std::abs(r[0] * r[1] * r[2] - k) > 1e-10 * std::max(std::abs(k), m * m * m))
    throw std::logic_error("sheet roots violate Vieta relations: k=" + format_complex(k) + " roots " + format_complex(r[0]) + " " + format_complex(r[1]) + " " + format_complex(r[2]) + " eig " + format_complex(eig[0]) + " " + format_complex(eig[1]) + " " + format_complex(eig[2]));
  return r;
}

bool sheet_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

std::array<Complex, 3> raw_sheets(Complex s, Complex c, Complex y) {
  if (y == 0.0) throw DomainError("degenerate_cover", "the projection to y degenerates at y = 0", "y=0");
  std::array<Complex, 3> r = xi_roots(s, c * y);
  for (auto& z : r) z /= y;
  return r;
}

// One matched step of sheet continuation; false when ambiguous.
bool match_step(const std::array<Complex, 3>& from, const std::array<Complex, 3>& to, std::array<Complex, 3>& out) {
  double sep = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) sep = std::min(sep, std::abs(to[static_cast<std::size_t>(i)] - to[static_cast<std::size_t>(j)]));
  std::array<bool, 3> used{};
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < 3; ++j) {
      const double d = std::abs(to[j] - from[i]);
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    if (used[best] || !(bd < 0.3 * sep)) return false;
    used[best] = true;
    out[i] = to[best];
  }
  return true;
}

void continue_arc(Complex s, Complex c, Complex center, double radius, double th0, double th1,
                  std::array<Complex, 3>& cur, int depth) {
  const std::array<Complex, 3> next = raw_sheets(s, c, center + radius * std::polar(1.0, th1));
  std::array<Complex, 3> out{};
  if (match_step(cur, next, out)) {
    cur = out;
    return;
  }
  if (depth >= 24) throw DomainError("ambiguous_sheets", "sheet continuation stays ambiguous after step halving");
  const double mid = 0.5 * (th0 + th1);
  continue_arc(s, c, center, radius, th0, mid, cur, depth + 1);
  continue_arc(s, c, center, radius, mid, th1, cur, depth + 1);
}

double path_length(Complex s, Complex c, Complex y0, Complex yp, Complex x_start, int n, double coincide,
                   Complex& x_end, bool& ambiguous) {
  // y(v) = y₀ + (y_p − y₀)v², v from 1 to −1: the merging sheets are analytic
  // in v. Even n puts p₀ itself on the path; there the two candidate roots
  // coincide up to roundoff and either one is the right point.
  ambiguous = false;
  double len = 0.0;
  Complex prev_x = x_start, prev_prev = x_start;
  // Offsets from y₀ are tracked separately: |y₀| is far larger than the probe radius.
  const Complex dy = yp - y0;
  Complex prev_off = dy;
  for (int k = 1; k <= n; ++k) {
    const double v = 1.0 - 2.0 * static_cast<double>(k) / static_cast<double>(n);
    const Complex off = dy * (v * v);
    const Complex y = y0 + off;
    const std::array<Complex, 3> r = raw_sheets(s, c, y);
    const Complex pred = k == 1 ? prev_x : prev_x + (prev_x - prev_prev);
    std::array<double, 3> d{};
    for (std::size_t j = 0; j < 3; ++j) d[j] = std::abs(r[j] - pred);
    const auto best = static_cast<std::size_t>(std::min_element(d.begin(), d.end()) - d.begin());
    double second = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < 3; ++j)
      if (j != best) second = std::min(second, d[j]);
    if (!(d[best] < 0.5 * second)) {
      std::size_t other = best;
      for (std::size_t j = 0; j < 3; ++j)
        if (j != best && d[j] == second) other = j;
      if (!(std::abs(r[best] - r[other]) <= coincide)) ambiguous = true;
    }
    len += std::sqrt(std::norm(r[best] - prev_x) + std::norm(off - prev_off));
    prev_prev = prev_x;
    prev_x = r[best];
    prev_off = off;
  }
  x_end = prev_x;
  return len;
}

std::string complex_csv(Complex z) { return format_double(z.real()) + (z.imag() < 0 ? "" : "+") + format_double(z.imag()) + "i"; }

}  // namespace

std::array<Complex, 3> sheets_at(Complex s, Complex c, Complex y) {
  std::array<Complex, 3> r = raw_sheets(s, c, y);
  std::sort(r.begin(), r.end(), sheet_less);
  return r;
}

std::array<SheetPoint, 2> ramification_points(Complex s, Complex c) {
  if (c == 0.0) throw DomainError("invalid_argument", "ramification points need c != 0", "c=0");
  const PolarData d = cubic_polar(Scalar(s));
  std::array<SheetPoint, 2> out;
  const std::array<std::pair<Complex, Complex>, 2> branches{{{d.alpha.complex(), d.A.complex()},
                                                             {d.beta.complex(), d.B.complex()}}};
  for (std::size_t k = 0; k < 2; ++k) {
    const auto [g, G] = branches[k];
    const Complex t = c / G;
    SheetPoint& p = out[k];
    p.x = g * t;
    p.y = 1.0 / t;
    p.c = c;
    if (std::abs(family_value(s, p.x, p.y) - c) > 1e-10 * std::abs(c) || std::abs(dfdx(s, p.x, p.y)) > 1e-10)
      throw std::logic_error("ramification point fails its defining equations");
    const auto sh = sheets_at(s, c, p.y);
    std::size_t best = 0;
    for (std::size_t j = 1; j < 3; ++j)
      if (std::abs(sh[j] - p.x) < std::abs(sh[best] - p.x)) best = j;
    p.sheet = static_cast<int>(best);
  }
  return out;
}

bool u_membership(Complex s, Complex x, Complex y) { return std::abs(dfdx(s, x, y)) < std::abs(dfdy(s, x, y)); }

Complex branch_ratio(Complex s, Branch b1, Complex t1, Branch b2, Complex t2) {
  const PolarData d = cubic_polar(Scalar(s));
  const Complex g1 = (b1 == Branch::Alpha ? d.alpha : d.beta).complex();
  const Complex g2 = (b2 == Branch::Alpha ? d.alpha : d.beta).complex();
  return family_value(s, g1 * t1, 1.0 / t1) / family_value(s, g2 * t2, 1.0 / t2);
}

std::vector<Complex> branch_ratio_limit(Complex s, const std::vector<Complex>& t_list) {
  std::vector<Complex> out;
  out.reserve(t_list.size());
  for (Complex t : t_list) {
    if (t == 0.0) throw DomainError("invalid_argument", "branch ratio needs t != 0", "t=0");
    out.push_back(branch_ratio(s, Branch::Alpha, t, Branch::Beta, t));
  }
  return out;
}

std::vector<QuadExt> branch_ratio_limit_exact(const Rational& s, const std::vector<Rational>& t_list) {
  std::vector<QuadExt> out;
  out.reserve(t_list.size());
  for (const Rational& t : t_list)
    out.push_back(branch_value_exact(s, Branch::Alpha, t) / branch_value_exact(s, Branch::Beta, t));
  return out;
}

std::array<int, 3> monodromy(Complex s, Complex c, Complex center, double radius, int steps) {
  if (!(radius > 0.0) || steps < 3) throw std::invalid_argument("monodromy: need radius > 0 and steps >= 3");
  const std::array<Complex, 3> base = sheets_at(s, c, center + radius);
  std::array<Complex, 3> cur = base;
  const double two_pi = 2.0 * std::numbers::pi;
  for (int k = 0; k < steps; ++k)
    continue_arc(s, c, center, radius, two_pi * k / steps, two_pi * (k + 1) / steps, cur, 0);
  std::array<int, 3> perm{};
  std::array<Complex, 3> matched{};
  if (!match_step(cur, base, matched)) throw DomainError("ambiguous_sheets", "loop does not close on the base fiber");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (matched[i] == base[j]) perm[i] = static_cast<int>(j);
  return perm;
}

bool is_transposition(const std::array<int, 3>& perm) {
  int fixed = 0;
  for (int i = 0; i < 3; ++i) fixed += perm[static_cast<std::size_t>(i)] == i ? 1 : 0;
  return fixed == 1;
}

RatioSample inner_outer_ratio(Complex s, Complex c, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("inner_outer_ratio: need 0 < delta < 1");
  const auto rp = ramification_points(s, c);
  RatioSample out;
  out.y0 = rp[0].y;
  out.t = 1.0 / out.y0;
  const double r = 0.5 * std::pow(std::abs(out.y0), delta - 1.0);
  if (std::abs(rp[1].y - out.y0) < 10.0 * r || std::abs(out.y0) < 10.0 * r)
    throw DomainError("probe_too_large", "c is too large to separate the ramification points at this radius", "c");
  out.probe_y = out.y0 + r;

  // The sheets swapped by the loop around y₀ are the two that merge at p₀.
  const std::array<int, 3> perm = monodromy(s, c, out.y0, r);
  if (!is_transposition(perm)) throw DomainError("ambiguous_sheets", "loop around the ramification point is not a transposition");
  std::array<int, 2> pair{};
  int m = 0;
  for (int i = 0; i < 3; ++i)
    if (perm[static_cast<std::size_t>(i)] != i) pair[static_cast<std::size_t>(m++)] = i;
  const auto fiber = sheets_at(s, c, out.probe_y);
  const Complex x1 = fiber[static_cast<std::size_t>(pair[0])], x2 = fiber[static_cast<std::size_t>(pair[1])];
  out.outer = std::abs(x1 - x2);
  // The stored probe differs from y₀ + r by the rounding of y₀.
  out.inner_lower = 2.0 * std::abs(out.probe_y - out.y0);

  double prev = -1.0;
  for (int n = 64; n <= (1 << 20); n *= 2) {
    Complex x_end;
    bool ambiguous = false;
    const double len = path_length(s, c, out.y0, out.probe_y, x1, n, 1e-3 * out.outer, x_end, ambiguous);
    if (ambiguous || std::abs(x_end - x2) > 0.1 * out.outer) {
      prev = -1.0;
      continue;
    }
    if (prev > 0.0 && std::abs(len - prev) <= 1e-4 * len) {
      out.inner_upper = len;
      out.ratio_lower = out.inner_lower / out.outer;
      return out;
    }
    prev = len;
  }
  throw DomainError("ambiguous_sheets", "path through the ramification point did not converge");
}

GrowthFit fit_loglog(const std::vector<double>& log_t, const std::vector<double>& log_ratio) {
  if (log_t.size() != log_ratio.size() || log_t.size() < 3)
    throw std::invalid_argument("growth fit needs at least three samples");
  const auto n = static_cast<double>(log_t.size());
  double sx = 0, sy = 0;
  for (std::size_t k = 0; k < log_t.size(); ++k) {
    sx += log_t[k];
    sy += log_ratio[k];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < log_t.size(); ++k) {
    sxx += (log_t[k] - mx) * (log_t[k] - mx);
    sxy += (log_t[k] - mx) * (log_ratio[k] - my);
    syy += (log_ratio[k] - my) * (log_ratio[k] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("growth fit needs distinct |t| values");
  GrowthFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

GrowthFit growth_fit(Complex s, double delta, const std::vector<Complex>& c_list) {
  if (c_list.size() < 3) throw std::invalid_argument("growth fit needs at least three samples");
  std::vector<RatioSample> samples;
  std::vector<double> lt, lr;
  for (Complex c : c_list) {
    samples.push_back(inner_outer_ratio(s, c, delta));
    lt.push_back(std::log(std::abs(samples.back().t)));
    lr.push_back(std::log(samples.back().ratio_lower));
  }
  GrowthFit f = fit_loglog(lt, lr);
  f.samples = std::move(samples);
  return f;
}

ExpansionReport expansion_check(Complex s, const std::vector<std::array<Complex, 2>>& points) {
  const PolarData d = cubic_polar(Scalar(s));
  const Complex a = d.alpha.complex(), b = d.beta.complex();
  ExpansionReport rep;
  for (const auto& [x, y] : points) {
    if (!u_membership(s, x, y)) throw DomainError("not_in_U", "point is not in U", "U");
    ExpansionRow row;
    row.t = 1.0 / y;
    const Complex u = x * y;
    const bool near_alpha = std::abs(u - a) <= std::abs(u - b);
    row.residual = std::min(std::abs(u - a), std::abs(u - b));
    const Complex G = near_alpha ? d.A.complex() : d.B.complex();
    row.value_deviation = std::abs(family_value(s, x, y) - G * row.t);
    const double at = std::abs(row.t);
    rep.C2 = std::max(rep.C2, row.residual / (at * at));
    rep.C3 = std::max(rep.C3, row.value_deviation / (at * at * at));
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<std::array<Complex, 2>> boundary_points(Complex s, Branch which, Complex t, int angles) {
  const PolarData d = cubic_polar(Scalar(s));
  const Complex g = (which == Branch::Alpha ? d.alpha : d.beta).complex();
  const Complex y = 1.0 / t;
  std::vector<std::array<Complex, 2>> out;
  for (int k = 0; k < angles; ++k) {
    const Complex dir = std::polar(1.0, 2.0 * std::numbers::pi * k / angles);
    auto h = [&](double eps) {
      const Complex x = (g + eps * dir) * t;
      return std::abs(dfdy(s, x, y)) - std::abs(dfdx(s, x, y));
    };
    double lo = 0.0, hi = std::norm(t);
    while (h(hi) > 0.0 && hi < 1.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (h(mid) > 0.0 ? lo : hi) = mid;
    }
    out.push_back({(g + 0.999 * lo * dir) * t, y});
  }
  return out;
}

void write_ratio_csv(std::ostream& out, Complex s, const std::vector<Complex>& c_list,
                     const std::vector<RatioSample>& samples) {
  if (c_list.size() != samples.size()) throw std::invalid_argument("write_ratio_csv: column lengths differ");
  out << "s,c,t,y0,probe_y,outer,inner_lower,inner_upper,ratio_lower\n";
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const RatioSample& r = samples[k];
    out << complex_csv(s) << ',' << complex_csv(c_list[k]) << ',' << complex_csv(r.t) << ',' << complex_csv(r.y0)
        << ',' << complex_csv(r.probe_y) << ',' << format_double(r.outer) << ',' << format_double(r.inner_lower)
        << ',' << format_double(r.inner_upper) << ',' << format_double(r.ratio_lower) << '\n';
  }
}

}  // namespace lipmod

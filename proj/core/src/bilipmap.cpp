#include "lipmod/bilipmap.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

#include "lipmod/error.hpp"

namespace lipmod {

namespace {

double f0(Point p) { return p.x * (p.x * p.x * p.y * p.y - 1.0); }
double f1(Point p) { return p.x * (p.x * p.x * p.y * p.y - p.x * p.y - 1.0); }

DomainError off_level(Point p, const char* level) {
  return DomainError("not_on_source_level",
                     "point (" + format_double(p.x) + ", " + format_double(p.y) + ") is not on " + level, level);
}

double log_uniform(std::mt19937_64& g, double lo, double hi) {
  return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(g));
}

double random_sign(std::mt19937_64& g) { return (g() & 1U) != 0U ? 1.0 : -1.0; }

}  // namespace

// ---------------------------------------------------------------------------
// Special level

PiecewiseBilip::PiecewiseBilip()
    : sigma_((std::sqrt(5.0) + 1.0) / 2.0),
      tau_((std::sqrt(5.0) - 1.0) / 2.0),
      sigma_q_(Rational(mpz_class(1), mpz_class(2)), Rational(mpz_class(1), mpz_class(2)), Rational(5)),
      tau_q_(Rational(mpz_class(-1), mpz_class(2)), Rational(mpz_class(1), mpz_class(2)), Rational(5)) {}

double PiecewiseBilip::weight(double u) {
  u = std::clamp(u, 0.0, 1.0);
  return 1.0 - u * u * (3.0 - 2.0 * u);
}

std::pair<double, double> PiecewiseBilip::factors(double x, bool plus) const {
  const double kappa = plus ? sigma_ : tau_;
  const double ax = std::abs(x);
  if (ax <= 0.5) return {kappa, 1.0};
  if (ax >= 2.0) return {1.0, kappa};
  const double a = std::pow(kappa, weight(std::log(2.0 * ax) / std::log(4.0)));
  return {a, kappa / a};
}

LevelPoint PiecewiseBilip::classify(Point p) const {
  if (!(std::abs(f0(p)) <= 1e-9 * std::max(1.0, std::abs(p.x)))) throw off_level(p, "f0=0");
  if (p.x == 0.0) return {p, Component::Axis};
  return {p, p.x * p.y > 0.0 ? Component::HyperbolaPlus : Component::HyperbolaMinus};
}

Point PiecewiseBilip::apply(Point p) const {
  const LevelPoint lp = classify(p);
  if (lp.component == Component::Axis) return p;
  const auto [a, b] = factors(p.x, lp.component == Component::HyperbolaPlus);
  return {a * p.x, b * p.y};
}

ExactImage PiecewiseBilip::apply_exact(const Rational& x, const Rational& y) const {
  ExactImage img;
  if (x.is_zero()) {
    img.X = QuadExt(x);
    img.Y = QuadExt(y);
    img.approx = {0.0, y.to_double()};
    img.product = QuadExt(0);
    return img;
  }
  const Rational xy = x * y;
  if (xy != Rational(1) && xy != Rational(-1))
    throw DomainError("not_on_source_level", "exact point is not on f0=0", "f0=0");
  const bool plus = xy == Rational(1);
  const QuadExt& kappa = plus ? sigma_q_ : tau_q_;
  img.approx = apply({x.to_double(), y.to_double()});
  img.product = kappa * QuadExt(xy);
  const Rational ax = x.abs();
  if (ax <= Rational(mpz_class(1), mpz_class(2))) {
    img.X = kappa * QuadExt(x);
    img.Y = QuadExt(y);
  } else if (ax >= Rational(2)) {
    img.X = QuadExt(x);
    img.Y = kappa * QuadExt(y);
  }
  return img;
}

PiecewiseBilip build_special_map() { return PiecewiseBilip(); }

double residual_on_target(const PiecewiseBilip& map, const std::vector<Point>& samples) {
  double worst = 0.0;
  for (const Point& p : samples) worst = std::max(worst, std::abs(f1(map.apply(p))));
  return worst;
}

std::vector<Scalar> residual_on_target_exact(const PiecewiseBilip& map,
                                             const std::vector<std::pair<Rational, Rational>>& samples) {
  const BiPoly g = family_poly({FamilyKind::Cubic, Scalar(1)});
  std::vector<Scalar> out;
  out.reserve(samples.size());
  for (const auto& [x, y] : samples) {
    const ExactImage img = map.apply_exact(x, y);
    if (img.X && img.Y) {
      const QuadExt v = evaluate<QuadExt>(g, *img.X, *img.Y, [](const Scalar& c) { return QuadExt(c.rational()); });
      out.emplace_back(v.is_rational() ? Scalar(v.u()) : Scalar(v.to_complex()));
      continue;
    }
    const QuadExt t = img.product;
    const QuadExt gt = t * t - t - QuadExt(1);
    out.emplace_back(gt.is_zero() ? Scalar(0) : Scalar(Complex(img.approx.x * gt.to_double(), 0.0)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generic level

double LevelMapGeneric::y_plus(double x) { return std::sqrt((x + 1.0) / (x * x * x)); }
double LevelMapGeneric::y_minus(double x) { return -y_plus(x); }
double LevelMapGeneric::Y_plus(double x) { return 0.5 / x + 0.5 * std::sqrt((5.0 * x + 4.0) / (x * x * x)); }
double LevelMapGeneric::Y_minus(double x) { return 0.5 / x - 0.5 * std::sqrt((5.0 * x + 4.0) / (x * x * x)); }

Point LevelMapGeneric::source_arc(double v) {
  const double q = 1.0 + v * v;
  return {-q, v / (q * std::sqrt(q))};
}

Point LevelMapGeneric::target_arc(double w) {
  const double x = -0.8 - w * w;
  const double ax = -x;
  return {x, 0.5 / x + 0.5 * std::sqrt(5.0) * w / (ax * std::sqrt(ax))};
}

double LevelMapGeneric::target_arc_half_width() { return std::sqrt(1.2); }

LevelMapGeneric::LevelMapGeneric(std::size_t segments) {
  if (segments < 2) throw std::invalid_argument("LevelMapGeneric: need at least two segments");
  auto table = [segments](const std::function<Point(double)>& curve, double half) {
    std::vector<double> len(segments + 1, 0.0);
    Point prev = curve(-half);
    for (std::size_t k = 1; k <= segments; ++k) {
      const Point cur = curve(-half + 2.0 * half * static_cast<double>(k) / static_cast<double>(segments));
      len[k] = len[k - 1] + std::hypot(cur.x - prev.x, cur.y - prev.y);
      prev = cur;
    }
    return len;
  };
  src_len_ = table(source_arc, 1.0);
  tgt_len_ = table(target_arc, target_arc_half_width());
}

double LevelMapGeneric::match_arc(double v) const {
  const double W = target_arc_half_width();
  const auto n = static_cast<double>(segments());
  v = std::clamp(v, -1.0, 1.0);
  if (v == 1.0) return W;
  if (v == -1.0) return -W;
  const double pos = (v + 1.0) / 2.0 * n;
  const auto k = std::min(static_cast<std::size_t>(pos), segments() - 1);
  const double t = pos - static_cast<double>(k);
  const double frac = (src_len_[k] + t * (src_len_[k + 1] - src_len_[k])) / src_len_.back();
  const double target = frac * tgt_len_.back();
  auto it = std::upper_bound(tgt_len_.begin(), tgt_len_.end(), target);
  auto j = static_cast<std::size_t>(std::distance(tgt_len_.begin(), it));
  j = std::clamp<std::size_t>(j, 1, segments()) - 1;
  const double tt = (target - tgt_len_[j]) / (tgt_len_[j + 1] - tgt_len_[j]);
  return -W + 2.0 * W * (static_cast<double>(j) + tt) / n;
}

LevelPoint LevelMapGeneric::classify(Point p) const {
  const double scale = std::max({1.0, std::abs(p.x * p.x * p.x * p.y * p.y), std::abs(p.x)});
  if (!(std::abs(f0(p) - 1.0) <= 1e-9 * scale)) throw off_level(p, "f0=1");
  if (p.x > 0.0 || p.x <= -2.0) return {p, p.y > 0.0 ? Component::BranchPlus : Component::BranchMinus};
  return {p, Component::Arc};
}

Point LevelMapGeneric::apply(Point p) const {
  const LevelPoint lp = classify(p);
  switch (lp.component) {
    case Component::BranchPlus: return {p.x, Y_plus(p.x)};
    case Component::BranchMinus: return {p.x, Y_minus(p.x)};
    default: break;
  }
  // Recover the arc parameter; near the turning point y determines v better than x.
  double v = std::copysign(std::sqrt(std::max(0.0, -1.0 - p.x)), p.y);
  if (std::abs(v) < 0.5) {
    v = p.y;
    for (int it = 0; it < 50; ++it) {
      const double q = 1.0 + v * v;
      const double g = v / (q * std::sqrt(q)) - p.y;
      const double dg = (1.0 - 2.0 * v * v) / (q * q * std::sqrt(q));
      const double step = g / dg;
      v -= step;
      if (std::abs(step) <= 1e-17) break;
    }
  }
  return target_arc(match_arc(v));
}

LevelMapGeneric build_generic_map(std::size_t segments) { return LevelMapGeneric(segments); }

std::vector<AsymptoticRow> asymptotic_ratios(const std::vector<double>& x_probes) {
  const PiecewiseBilip constants;
  std::vector<AsymptoticRow> rows;
  for (double x : x_probes) {
    if (x > -1.0 && x <= 0.0) throw std::invalid_argument("asymptotic_ratios: probe outside the parameterized domain");
    for (bool plus : {true, false}) {
      AsymptoticRow r;
      r.x = x;
      r.plus = plus;
      r.ratio = plus ? LevelMapGeneric::Y_plus(x) / LevelMapGeneric::y_plus(x)
                     : LevelMapGeneric::Y_minus(x) / LevelMapGeneric::y_minus(x);
      if (x > 0.0 && x < 1.0) r.predicted = 1.0;
      else if (x >= 1.0) r.predicted = plus ? constants.sigma() : constants.tau();
      else r.predicted = plus ? constants.tau() : constants.sigma();
      r.deviation = std::abs(r.ratio - r.predicted);
      rows.push_back(r);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Sampling

std::vector<Point> sample_level(const FamilySpec& family, double c, const SampleRegion& region, std::size_t n) {
  if (n == 0) throw std::invalid_argument("sample_level: n must be positive");
  if (family.kind != FamilyKind::Cubic) throw std::invalid_argument("sample_level: cubic family only");
  if (!(region.x_lo <= region.x_hi)) throw DomainError("empty_region", "sample region has x_lo > x_hi", "region");
  const double s = family.s.complex().real();
  std::vector<Point> out;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = n == 1 ? region.x_lo
                            : region.x_lo + (region.x_hi - region.x_lo) * static_cast<double>(k) /
                                                static_cast<double>(n - 1);
    if (x == 0.0) {
      if (c != 0.0) continue;
      for (std::size_t m = 0; m < n; ++m) {
        const double y = n == 1 ? region.y_lo
                                : region.y_lo + (region.y_hi - region.y_lo) * static_cast<double>(m) /
                                                    static_cast<double>(n - 1);
        out.push_back({0.0, y});
      }
      continue;
    }
    // x³y² − s x² y − (x + c) = 0.
    const double a = x * x * x, b = -s * x * x, cc = -(x + c);
    double disc = b * b - 4.0 * a * cc;
    const double disc_scale = 1e-14 * (b * b + std::abs(4.0 * a * cc));
    if (disc < -disc_scale) continue;
    if (disc <= disc_scale) disc = 0.0;  // double root within roundoff
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b == 0.0 ? 1.0 : b));
    const double r1 = q / a;
    const double r2 = q != 0.0 ? cc / q : r1;
    const double hi = std::max(r1, r2), lo = std::min(r1, r2);
    if (region.branch >= 0) out.push_back({x, hi});
    if (region.branch <= 0 && (disc > 0.0 || region.branch < 0)) out.push_back({x, lo});
  }
  if (out.empty()) throw DomainError("empty_region", "no real points of the level in the sample region", "region");
  return out;
}

std::vector<LevelPoint> sample_special_level(std::uint64_t seed, std::size_t n, double lo, double hi) {
  std::mt19937_64 g(seed);
  std::vector<LevelPoint> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double m = random_sign(g) * log_uniform(g, lo, hi);
    switch (k % 3) {
      case 0: out.push_back({{0.0, m}, Component::Axis}); break;
      case 1: out.push_back({{m, 1.0 / m}, Component::HyperbolaPlus}); break;
      default: out.push_back({{m, -1.0 / m}, Component::HyperbolaMinus}); break;
    }
  }
  return out;
}

std::vector<std::pair<Rational, Rational>> sample_special_level_exact(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 g(seed);
  std::uniform_int_distribution<long> num(1, 1000);
  std::vector<std::pair<Rational, Rational>> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Rational x(mpz_class(num(g)), mpz_class(num(g)));
    if ((g() & 1U) != 0U) x = -x;
    switch (k % 3) {
      case 0: out.emplace_back(Rational(0), x); break;
      case 1: out.emplace_back(x, x.inverse()); break;
      default: out.emplace_back(x, -x.inverse()); break;
    }
  }
  return out;
}

std::vector<LevelPoint> sample_generic_level(std::uint64_t seed, std::size_t n, double lo, double hi) {
  std::mt19937_64 g(seed);
  std::vector<LevelPoint> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k % 3 == 2) {
      const Point p = LevelMapGeneric::source_arc(std::uniform_real_distribution<double>(-1.0, 1.0)(g));
      out.push_back({p, Component::Arc});
      continue;
    }
    const double x = (g() & 1U) != 0U ? log_uniform(g, lo, hi) : -log_uniform(g, 2.0, std::max(2.0, hi));
    const bool plus = k % 3 == 0;
    out.push_back({{x, plus ? LevelMapGeneric::y_plus(x) : LevelMapGeneric::y_minus(x)},
                   plus ? Component::BranchPlus : Component::BranchMinus});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distortion

namespace {

DistortionReport scan(const std::vector<LevelPoint>& points, const std::vector<Point>& images,
                      const DistortionOptions& opt) {
  if (points.size() < 2) throw std::invalid_argument("distortion: need at least two samples");
  DistortionReport rep;
  rep.max_ratio = 0.0;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  auto wanted = [&](std::size_t i, std::size_t j) {
    switch (opt.strategy) {
      case PairStrategy::CrossBranch: return points[i].component != points[j].component;
      case PairStrategy::SameBranch: return points[i].component == points[j].component;
      default: return true;
    }
  };
  auto visit = [&](std::size_t i, std::size_t j) {
    const Point& p = points[i].p;
    const Point& q = points[j].p;
    const double d = std::hypot(p.x - q.x, p.y - q.y);
    if (d == 0.0) {
      ++rep.duplicates;
      return;
    }
    const double r = std::hypot(images[i].x - images[j].x, images[i].y - images[j].y) / d;
    ++rep.n_pairs;
    if (r > rep.max_ratio) {
      rep.max_ratio = r;
      rep.argmax = {p, q};
    }
    if (r < rep.min_ratio) {
      rep.min_ratio = r;
      rep.argmin = {p, q};
    }
  };
  const std::size_t n = points.size();
  if (n <= opt.all_pairs_limit) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (wanted(i, j)) visit(i, j);
  } else {
    std::mt19937_64 g(opt.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const std::size_t max_draws = 20 * opt.random_pairs;
    std::size_t accepted = 0;
    for (std::size_t draw = 0; draw < max_draws && accepted < opt.random_pairs; ++draw) {
      const std::size_t i = pick(g), j = pick(g);
      if (i == j || !wanted(i, j)) continue;
      ++accepted;
      visit(i, j);
    }
  }
  if (rep.n_pairs == 0) throw std::invalid_argument("distortion: no admissible pairs");
  return rep;
}

}  // namespace

DistortionReport distortion(const PiecewiseBilip& map, const std::vector<LevelPoint>& points,
                            const DistortionOptions& options) {
  std::vector<Point> images;
  images.reserve(points.size());
  double residual = 0.0;
  for (const auto& lp : points) {
    images.push_back(map.apply(lp.p));
    residual = std::max(residual, std::abs(f1(images.back())));
  }
  DistortionReport rep = scan(points, images, options);
  rep.residual_max = residual;
  return rep;
}

DistortionReport distortion(const LevelMapGeneric& map, const std::vector<LevelPoint>& points,
                            const DistortionOptions& options) {
  std::vector<Point> images;
  images.reserve(points.size());
  double residual = 0.0;
  for (const auto& lp : points) {
    images.push_back(map.apply(lp.p));
    residual = std::max(residual, std::abs(f1(images.back()) - 1.0));
  }
  DistortionReport rep = scan(points, images, options);
  rep.residual_max = residual;
  return rep;
}

void write_csv(std::ostream& out, const std::vector<Point>& source, const std::vector<Point>& image,
               const std::vector<double>& residual) {
  if (source.size() != image.size() || source.size() != residual.size())
    throw std::invalid_argument("write_csv: column lengths differ");
  out << "x,y,X,Y,residual\n";
  for (std::size_t k = 0; k < source.size(); ++k)
    out << format_double(source[k].x) << ',' << format_double(source[k].y) << ',' << format_double(image[k].x)
        << ',' << format_double(image[k].y) << ',' << format_double(residual[k]) << '\n';
}

}  // namespace lipmod

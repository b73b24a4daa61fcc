#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "lipmod/family.hpp"
#include "lipmod/quadext.hpp"
#include "lipmod/rational.hpp"

namespace lipmod {

struct Point {
  double x = 0.0, y = 0.0;
};

/// Component label of a level point. The special level (f₀ = 0) has the axis
/// and the hyperbolas xy = ±1; the generic level (f₀ = 1) has the two graph
/// branches over x > 0 and x <= −2 plus the compact arc over −2 < x < −1.
enum class Component { Axis, HyperbolaPlus, HyperbolaMinus, BranchPlus, BranchMinus, Arc };

struct LevelPoint {
  Point p;
  Component component = Component::Axis;
};

/// Image of an exact point of (f₀ = 0). Coordinates are exact outside the
/// interpolation band 1/2 < |x| < 2; the product XY is always exact.
struct ExactImage {
  std::optional<QuadExt> X, Y;
  Point approx;
  QuadExt product;
};

/// Map between (f₀ = 0) and (f₁ = 0): identity on the axis and
/// (x, y) ↦ (ax, by) on xy = ±1 with ab = σ resp. τ, a = κ^{w(u)},
/// u = log|2x| / log 4 clamped to [0, 1], w(u) = 1 − 3u² + 2u³.
class PiecewiseBilip {
 public:
  PiecewiseBilip();

  double sigma() const { return sigma_; }
  double tau() const { return tau_; }
  const QuadExt& sigma_exact() const { return sigma_q_; }
  const QuadExt& tau_exact() const { return tau_q_; }

  static double weight(double u);
  /// (a, b) for a point of xy = ±1 at abscissa x.
  std::pair<double, double> factors(double x, bool plus) const;

  /// Throws DomainError "not_on_source_level" when |f₀(p)| > 1e-9 max(1, |p|).
  LevelPoint classify(Point p) const;
  Point apply(Point p) const;
  /// Requires f₀(x, y) = 0 exactly.
  ExactImage apply_exact(const Rational& x, const Rational& y) const;

 private:
  double sigma_, tau_;
  QuadExt sigma_q_, tau_q_;
};

PiecewiseBilip build_special_map();

/// max |f₁(Φ(p))| over the samples.
double residual_on_target(const PiecewiseBilip& map, const std::vector<Point>& samples);
/// Exact residual f₁(Φ(p)) per sample. Where both image coordinates are
/// exact the full polynomial is evaluated in Q(√5); inside the interpolation
/// band the value is X·g̃(XY) with g̃(t) = t² − t − 1 evaluated exactly.
std::vector<Scalar> residual_on_target_exact(const PiecewiseBilip& map,
                                             const std::vector<std::pair<Rational, Rational>>& samples);

/// Parameterizations of (f₀ = 1) and (f₁ = 1) with arc-length tables for
/// the compact arcs. Source arc: x = −1 − v², y = v (1 + v²)^{-3/2},
/// v ∈ [−1, 1]. Target arc: x = −4/5 − w², Y = 1/(2x) + (√5/2) w |x|^{-3/2},
/// w ∈ [−√(6/5), √(6/5)]. Both end on x = −2 with v = ±1 ↦ w = ±√(6/5).
class LevelMapGeneric {
 public:
  explicit LevelMapGeneric(std::size_t segments = 20000);

  static double y_plus(double x);
  static double y_minus(double x);
  static double Y_plus(double x);
  static double Y_minus(double x);
  static Point source_arc(double v);
  static Point target_arc(double w);
  static double target_arc_half_width();

  std::size_t segments() const { return src_len_.size() - 1; }
  const std::vector<double>& source_lengths() const { return src_len_; }
  const std::vector<double>& target_lengths() const { return tgt_len_; }

  /// Throws DomainError "not_on_source_level" when |f₀(p) − 1| > 1e-9 max(1, |f₀ terms|).
  LevelPoint classify(Point p) const;
  Point apply(Point p) const;
  /// Target arc parameter matched to source parameter v.
  double match_arc(double v) const;

 private:
  std::vector<double> src_len_, tgt_len_;
};

LevelMapGeneric build_generic_map(std::size_t segments = 20000);

struct AsymptoticRow {
  double x = 0.0;
  bool plus = true;
  double ratio = 0.0;      // Y_±(x) / y_±(x)
  double predicted = 0.0;  // σ, τ or 1
  double deviation = 0.0;
};

/// Rows for both branches at each probe. The predicted limit is 1 for
/// 0 < x < 1, σ/τ (plus/minus) for x >= 1 and τ/σ for x <= −1. Throws
/// std::invalid_argument for probes in (−1, 0].
std::vector<AsymptoticRow> asymptotic_ratios(const std::vector<double>& x_probes);

struct SampleRegion {
  double x_lo = 0.0, x_hi = 0.0;
  /// +1 or −1 selects a root of the quadratic in y, 0 keeps both.
  int branch = 0;
  /// For c = 0, a grid abscissa x = 0 contributes n axis points with y
  /// uniform in [y_lo, y_hi].
  double y_lo = -1.0, y_hi = 1.0;
};

/// Points of (f_s = c) with x on a uniform grid of n abscissae; each real
/// root of x³y² − s x²y − x − c = 0 in y is kept. Throws DomainError
/// "empty_region" when nothing is found, std::invalid_argument for n = 0.
std::vector<Point> sample_level(const FamilySpec& family, double c, const SampleRegion& region, std::size_t n);

/// Random points of (f₀ = 0): axis with |y| and hyperbolas with |x| log-uniform in [lo, hi].
std::vector<LevelPoint> sample_special_level(std::uint64_t seed, std::size_t n, double lo = 1e-3, double hi = 1e3);
/// Exact rational points of (f₀ = 0) spread over the axis and every zone of both hyperbolas.
std::vector<std::pair<Rational, Rational>> sample_special_level_exact(std::uint64_t seed, std::size_t n);
/// Random points of (f₀ = 1) on both graph branches (x in (0, hi] log-uniform
/// and x in [−hi, −2]) and the compact arc.
std::vector<LevelPoint> sample_generic_level(std::uint64_t seed, std::size_t n, double lo = 1e-3, double hi = 1e3);

enum class PairStrategy { All, CrossBranch, SameBranch };

struct DistortionOptions {
  PairStrategy strategy = PairStrategy::All;
  /// All pairs up to this many points, random pairs beyond.
  std::size_t all_pairs_limit = 2000;
  std::size_t random_pairs = 1000000;
  std::uint64_t seed = 7;
};

struct DistortionReport {
  std::size_t n_pairs = 0;
  std::size_t duplicates = 0;
  double max_ratio = 0.0, min_ratio = 0.0;
  std::pair<Point, Point> argmax{}, argmin{};
  double residual_max = 0.0;
  double K_emp() const { return std::max(max_ratio, 1.0 / min_ratio); }
};

DistortionReport distortion(const PiecewiseBilip& map, const std::vector<LevelPoint>& points,
                            const DistortionOptions& options = {});
DistortionReport distortion(const LevelMapGeneric& map, const std::vector<LevelPoint>& points,
                            const DistortionOptions& options = {});

/// Rows "x,y,X,Y,residual" with a header line.
void write_csv(std::ostream& out, const std::vector<Point>& source, const std::vector<Point>& image,
               const std::vector<double>& residual);

}  // namespace lipmod

#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "lipmod/family.hpp"
#include "lipmod/scalar.hpp"

namespace lipmod {

/// A point of (f_s = c) seen through the projection (x, y) ↦ y.
struct SheetPoint {
  Complex y, x;
  int sheet = 0;
  Complex c;
};

/// The three roots in x of x³y² − s x² y − x − c = 0, sorted by real part
/// then imaginary part. Solved as ξ³ − sξ² − ξ − cy = 0 with x = ξ/y.
/// Throws DomainError "degenerate_cover" at y = 0.
std::array<Complex, 3> sheets_at(Complex s, Complex c, Complex y);

/// (αt, 1/t) with t = c/A and (βt′, 1/t′) with t′ = c/B. Both points are
/// checked against f_s = c and ∂_x f_s = 0 to 1e-10 relative.
std::array<SheetPoint, 2> ramification_points(Complex s, Complex c);

/// |∂_x f_s(p)| < |∂_y f_s(p)|.
bool u_membership(Complex s, Complex x, Complex y);

/// f_s(γ₁t₁, 1/t₁) / f_s(γ₂t₂, 1/t₂) for γ₁, γ₂ ∈ {α, β} by direct evaluation.
Complex branch_ratio(Complex s, Branch b1, Complex t1, Branch b2, Complex t2);
/// f_s(αt, 1/t) / f_s(βt, 1/t) for each t.
std::vector<Complex> branch_ratio_limit(Complex s, const std::vector<Complex>& t_list);
/// Exact version for rational s and t, in Q(√(s²+3)).
std::vector<QuadExt> branch_ratio_limit_exact(const Rational& s, const std::vector<Rational>& t_list);

/// Sheet continuation once around the circle |y − center| = radius starting
/// at center + radius. perm[i] is the final index of the sheet that started
/// at index i. Steps are halved when nearest-neighbour matching is
/// ambiguous; DomainError "ambiguous_sheets" after too many halvings.
std::array<int, 3> monodromy(Complex s, Complex c, Complex center, double radius, int steps = 256);
bool is_transposition(const std::array<int, 3>& perm);

struct RatioSample {
  Complex t, y0, probe_y;
  double outer = 0.0;
  double inner_lower = 0.0;
  double inner_upper = 0.0;
  double ratio_lower = 0.0;
};

/// Witness ratio at the α-ramification point p₀ of (f_s = c). The probe
/// lies at |y − y₀| = ½|y₀|^{δ−1}; p₁, p₂ are the points of the two sheets
/// merging at p₀. inner_lower = 2|y − y₀|; inner_upper is the length of the
/// path p₁ → p₀ → p₂ on the curve, refined to 1e-4 relative.
RatioSample inner_outer_ratio(Complex s, Complex c, double delta);

struct GrowthFit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
  std::vector<RatioSample> samples;
};

/// Least squares of log(ratio_lower) against log|t|. Throws
/// std::invalid_argument for fewer than three samples.
GrowthFit growth_fit(Complex s, double delta, const std::vector<Complex>& c_list);
GrowthFit fit_loglog(const std::vector<double>& log_t, const std::vector<double>& log_ratio);

struct ExpansionRow {
  Complex t;
  double residual = 0.0;         // min |xy − α|, |xy − β|
  double value_deviation = 0.0;  // |f_s(p) − γ(γ² − sγ − 1)t| for the nearer γ
};

struct ExpansionReport {
  std::vector<ExpansionRow> rows;
  double C2 = 0.0;  // max residual / |t|²
  double C3 = 0.0;  // max value_deviation / |t|³
};

/// Points must lie in U with y = 1/t; throws DomainError "not_in_U" otherwise.
ExpansionReport expansion_check(Complex s, const std::vector<std::array<Complex, 2>>& points);

/// Points just inside ∂U near the polar branch through γ: xy = γ + εe^{iθ}
/// with ε at 0.999 of the boundary value, y = 1/t.
std::vector<std::array<Complex, 2>> boundary_points(Complex s, Branch which, Complex t, int angles = 8);

/// Rows "s,c,t,y0,probe_y,outer,inner_lower,inner_upper,ratio_lower";
/// complex entries are written as re+imi.
void write_ratio_csv(std::ostream& out, Complex s, const std::vector<Complex>& c_list,
                     const std::vector<RatioSample>& samples);

}  // namespace lipmod

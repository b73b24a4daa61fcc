#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lipmod/bipoly.hpp"
#include "lipmod/unipoly.hpp"

namespace lipmod {

/// Compact face of a Newton diagram. `start` is the endpoint nearer the
/// first axis (larger first exponent); the primitive normal (na, nb) has
/// na·i + nb·j = level on the face and >= level on the whole support.
struct NewtonFace {
  Monomial start;
  Monomial end;
  std::int64_t na = 0;
  std::int64_t nb = 0;
  std::int64_t level = 0;
  /// Number of primitive lattice steps between the endpoints.
  std::uint32_t lattice_length() const;
};

struct NewtonDiagram {
  std::vector<Monomial> support;
  /// Ordered from the first axis towards the second.
  std::vector<NewtonFace> faces;
  std::optional<std::uint32_t> x_intercept;
  std::optional<std::uint32_t> z_intercept;
  /// Shoelace area under the faces; meaningful when both intercepts exist.
  Rational under_area;

  bool convenient() const { return x_intercept.has_value() && z_intercept.has_value(); }
};

/// Throws std::invalid_argument on the zero polynomial. The constant term
/// is ignored: the diagram describes p − p(0,0).
NewtonDiagram diagram(const BiPoly& p);

/// Face polynomial Σ a_k t^k over the lattice points of `face`, k counted from `start`.
UniPoly face_polynomial(const BiPoly& p, const NewtonFace& face);

/// Every compact face polynomial has only simple nonzero roots.
bool nondegenerate(const BiPoly& p);

struct IntersectionEntry {
  std::string with;
  std::optional<std::uint32_t> multiplicity;  // nullopt: common component
};

struct SplitFactor {
  std::string factor;
  std::optional<std::uint32_t> mu;
  std::vector<IntersectionEntry> intersections;
};

struct MilnorResult {
  std::optional<std::uint32_t> mu;  // nullopt: infinite (non-isolated)
  bool convenient = false;
  bool nondegenerate = false;
  bool smooth = false;
  /// "smooth", "kouchnirenko", "split", "intersection" or "non_isolated".
  std::string method;
  std::vector<SplitFactor> splitting_trace;
};

struct MilnorOptions {
  /// On a degenerate face, fall back to the intersection multiplicity of
  /// the partials instead of raising.
  bool force = false;
};

/// Milnor number of p at the origin from its Newton diagram.
MilnorResult milnor_newton(const BiPoly& p, const MilnorOptions& opts = {});

/// Local intersection multiplicity at the origin by Fulton's algorithm;
/// exact coefficients only. nullopt when p and q share a component through 0.
std::optional<std::uint32_t> intersection_multiplicity(const BiPoly& p, const BiPoly& q);

/// Intersection number at the origin of two curves without common
/// coordinate components, as ord of Res_x(q1, q2) in the second variable.
/// Falls back to Fulton's algorithm when the resultant also counts other
/// intersections on the line {second variable = 0}.
std::optional<std::uint32_t> local_intersection(const BiPoly& q1, const BiPoly& q2);

/// μ(f₁···f_m) = Σ μ(f_i) + 2 Σ_{i<j} i(f_i, f_j) − (m − 1) for germs
/// through the origin, each factor's μ from milnor_newton.
MilnorResult recombine(const std::vector<BiPoly>& factors, const MilnorOptions& opts = {});

struct LambdaResult {
  std::uint32_t mu_generic = 0;
  /// Values of c with a positive jump and their Milnor numbers.
  std::vector<std::pair<Scalar, std::uint32_t>> special;
  /// Total jump Σ (μ(c) − μ_generic) over special c.
  std::uint32_t lambda = 0;
  std::vector<Scalar> local_irregular;
  /// All candidates examined, for reporting.
  std::vector<Scalar> candidates;
  /// The two generic values drawn.
  std::pair<Rational, Rational> generic_c;
};

/// Jump of the Milnor number of homogenize(p − c)·localized at P. The
/// generic value is drawn twice from `seed`; disagreement raises.
LambdaResult lambda_at_infinity(const BiPoly& p, const ProjPoint& P, std::uint64_t seed = 42);

struct CriticalPoint {
  Scalar x;
  Scalar y;
  Scalar value;
  std::uint32_t mu = 0;
};

/// Solutions of ∂_x p = ∂_y p = 0. Throws DomainError
/// "non_isolated_critical_locus" if the partials share a factor.
std::vector<CriticalPoint> affine_critical(const BiPoly& p);

struct InfinityReport {
  ProjPoint point;
  std::uint32_t mu_generic;
  std::uint32_t lambda;
  std::vector<Scalar> local_irregular_values;
};

struct ClassificationReport {
  std::uint32_t degree = 0;
  std::uint32_t affine_mu = 0;
  std::vector<Scalar> affine_critical_values;
  std::vector<InfinityReport> infinity_points;
  std::vector<Scalar> B;
  std::int64_t chi_generic = 0;

  std::uint32_t lambda_total() const;
};

ClassificationReport classify(const BiPoly& p, std::uint64_t seed = 42);

}  // namespace lipmod

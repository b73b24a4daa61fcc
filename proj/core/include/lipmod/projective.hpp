#pragma once

#include <vector>

#include "lipmod/bipoly.hpp"

namespace lipmod {

struct InfinityPoint {
  ProjPoint point;
  /// Multiplicity as a root of the top-degree form.
  int multiplicity;
};

/// Distinct points at infinity of (p = 0) with multiplicities: monomial
/// factors x^m, y^n of the top form give (0:1:0) and (1:0:0); the residual
/// form's roots (1:t:0) are exact when rational, numeric otherwise.
std::vector<InfinityPoint> infinity_points_with_multiplicity(const BiPoly& p);
std::vector<ProjPoint> infinity_points(const BiPoly& p);

/// Top-degree homogeneous part of p.
BiPoly top_form(const BiPoly& p);

}  // namespace lipmod

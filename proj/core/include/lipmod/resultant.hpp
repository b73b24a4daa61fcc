#pragma once

#include <vector>

#include "lipmod/bipoly.hpp"
#include "lipmod/unipoly.hpp"

namespace lipmod {

/// Coefficients of p as a polynomial in `var`: entry k is the coefficient of
/// var^k, itself a univariate polynomial in the other variable.
std::vector<UniPoly> coefficients_in(const BiPoly& p, int var);

/// p viewed as a univariate polynomial in `var`; p must not involve the other variable.
UniPoly to_unipoly(const BiPoly& p, int var);
/// Embeds u as a polynomial in variable `var` of a BiPoly with `names`.
BiPoly from_unipoly(const UniPoly& u, int var, const VarNames& names);

/// det Sylvester(p, q) with respect to `var`, p-rows first, by Bareiss
/// fraction-free elimination. The result lives in the other variable; with
/// this convention Res(x − a, x − b) = a − b.
BiPoly resultant(const BiPoly& p, const BiPoly& q, int var);

/// Same determinant for polynomials given by their coefficient lists.
UniPoly resultant(const std::vector<UniPoly>& p, const std::vector<UniPoly>& q);

}  // namespace lipmod

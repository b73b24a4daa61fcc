#include "lipmod/projective.hpp"

#include <stdexcept>

#include "lipmod/unipoly.hpp"

namespace lipmod {

BiPoly top_form(const BiPoly& p) {
  BiPoly out(p.varnames());
  const int d = p.degree();
  for (const auto& [m, c] : p.terms())
    if (static_cast<int>(m.degree()) == d) out.add_term(m, c);
  return out;
}

std::vector<InfinityPoint> infinity_points_with_multiplicity(const BiPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("infinity_points of the zero polynomial");
  const BiPoly top = top_form(p);
  const int mx = top.low_degree_in(0);
  const int my = top.low_degree_in(1);
  std::vector<InfinityPoint> out;
  if (mx > 0) out.push_back({ProjPoint(Scalar(0), Scalar(1), Scalar(0)), mx});
  if (my > 0) out.push_back({ProjPoint(Scalar(1), Scalar(0), Scalar(0)), my});
  // Residual form R(x, y) = top / (x^mx y^my); its zeros are (1 : t : 0), R(1, t) = 0.
  const int d = top.degree();
  std::vector<Scalar> r(static_cast<std::size_t>(d - mx - my + 1), Scalar(0));
  for (const auto& [m, c] : top.terms()) r[m.j - static_cast<std::uint32_t>(my)] += c;
  for (const auto& root : roots(UniPoly(std::move(r))))
    out.push_back({ProjPoint(Scalar(1), root.value, Scalar(0)), root.multiplicity});
  return out;
}

std::vector<ProjPoint> infinity_points(const BiPoly& p) {
  std::vector<ProjPoint> out;
  for (const auto& ip : infinity_points_with_multiplicity(p)) out.push_back(ip.point);
  return out;
}

}  // namespace lipmod

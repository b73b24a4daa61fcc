#include "lipmod/report.hpp"

namespace lipmod::report {

Json complex(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return Json{{"re", z.real()}, {"im", z.imag()}};
}

Json scalar(const Scalar& v) {
  if (v.is_exact()) return v.rational().str();
  return complex(v.complex());
}

Json exact(const QuadExt& v) { return v.str(); }

namespace {

Json pick(const std::optional<QuadExt>& e, const Scalar& fallback) { return e ? exact(*e) : scalar(fallback); }

}  // namespace

Json polar(const PolarData& d) {
  return Json{{"R", pick(d.R_exact, d.R)}, {"alpha", pick(d.alpha_exact, d.alpha)}, {"beta", pick(d.beta_exact, d.beta)}};
}

Json quartic(const QuarticData& d) {
  return Json{{"roots", d.roots}, {"c", d.c}, {"d", d.d}, {"ratio", d.ratio}, {"flagged", d.flagged}};
}

Json separation(const Separation& s) {
  return Json{{"s", scalar(s.s)},
              {"s2", scalar(s.s_prime)},
              {"R_s", pick(s.R_s_exact, s.R_s)},
              {"R_s2", pick(s.R_s_prime_exact, s.R_s_prime)},
              {"separated", s.separated}};
}

Json exceptional(const ExceptionalSet& e) {
  Json roots = Json::array();
  for (const ExceptionalRoot& r : e.roots)
    roots.push_back(Json{{"value", scalar(r.value)}, {"multiplicity", r.multiplicity}, {"real", r.real}});
  Json cleared = Json::array();
  for (const Scalar& c : e.cleared) cleared.push_back(scalar(c));
  return Json{{"cleared", cleared}, {"roots", roots}};
}

Json classification(const ClassificationReport& r, bool detail) {
  Json B = Json::array();
  for (const Scalar& b : r.B) B.push_back(scalar(b));
  Json out{{"degree", r.degree}, {"mu", r.affine_mu}, {"lambda", r.lambda_total()}, {"B", B}, {"chi", r.chi_generic}};
  if (detail) {
    Json pts = Json::array();
    for (const InfinityReport& p : r.infinity_points) {
      Json irr = Json::array();
      for (const Scalar& c : p.local_irregular_values) irr.push_back(scalar(c));
      pts.push_back(Json{{"point", p.point.str()}, {"mu_generic", p.mu_generic}, {"lambda", p.lambda}, {"irregular", irr}});
    }
    Json crit = Json::array();
    for (const Scalar& c : r.affine_critical_values) crit.push_back(scalar(c));
    out["infinity_points"] = pts;
    out["affine_critical_values"] = crit;
  }
  return out;
}

Json milnor(const MilnorResult& r, bool detail) {
  Json out{{"mu", r.mu ? Json(*r.mu) : Json(nullptr)}, {"method", r.method}};
  if (detail) {
    out["convenient"] = r.convenient;
    out["nondegenerate"] = r.nondegenerate;
    Json trace = Json::array();
    for (const SplitFactor& f : r.splitting_trace) {
      Json inter = Json::array();
      for (const IntersectionEntry& e : f.intersections)
        inter.push_back(Json{{"with", e.with}, {"multiplicity", e.multiplicity ? Json(*e.multiplicity) : Json(nullptr)}});
      trace.push_back(Json{{"factor", f.factor}, {"mu", f.mu ? Json(*f.mu) : Json(nullptr)}, {"intersections", inter}});
    }
    out["splitting_trace"] = trace;
  }
  return out;
}

Json distortion(const DistortionReport& r) {
  auto pt = [](Point p) { return Json::array({p.x, p.y}); };
  return Json{{"n_pairs", r.n_pairs},
              {"duplicates", r.duplicates},
              {"max_ratio", r.max_ratio},
              {"min_ratio", r.min_ratio},
              {"K_emp", r.K_emp()},
              {"argmax", Json::array({pt(r.argmax.first), pt(r.argmax.second)})},
              {"argmin", Json::array({pt(r.argmin.first), pt(r.argmin.second)})},
              {"residual_max", r.residual_max}};
}

Json ratio_sample(const RatioSample& r) {
  return Json{{"t", complex(r.t)},
              {"y0", complex(r.y0)},
              {"probe_y", complex(r.probe_y)},
              {"outer", r.outer},
              {"inner_lower", r.inner_lower},
              {"inner_upper", r.inner_upper},
              {"ratio_lower", r.ratio_lower}};
}

Json growth(const GrowthFit& f, bool detail) {
  Json out{{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}};
  if (detail) {
    Json s = Json::array();
    for (const RatioSample& r : f.samples) s.push_back(ratio_sample(r));
    out["samples"] = s;
  }
  return out;
}

Json error(const std::string& code, const std::string& message, const std::string& locus) {
  return Json{{"code", code}, {"message", message}, {"locus", locus}};
}

Json error(const DomainError& e) { return error(e.code(), e.what(), e.locus()); }

}  // namespace lipmod::report

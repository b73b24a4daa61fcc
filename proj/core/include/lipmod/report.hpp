#pragma once

#include <nlohmann/json.hpp>

#include "lipmod/bilipmap.hpp"
#include "lipmod/error.hpp"
#include "lipmod/family.hpp"
#include "lipmod/metricinf.hpp"
#include "lipmod/newton.hpp"

namespace lipmod::report {

using Json = nlohmann::json;

// Exact values become strings ("p/q", "u+v*sqrt(d)"); complex doubles become
// a number when real and {"re", "im"} otherwise.
Json scalar(const Scalar& v);
Json complex(Complex z);
Json exact(const QuadExt& v);

/// {"R", "alpha", "beta"}: exact strings when available, numbers otherwise.
Json polar(const PolarData& d);
Json quartic(const QuarticData& d);
Json separation(const Separation& s);
Json exceptional(const ExceptionalSet& e);

/// {"degree", "mu", "lambda", "B", "chi"}; with detail also the points at
/// infinity and the affine critical values.
Json classification(const ClassificationReport& r, bool detail = false);
/// {"mu", "method"}; mu is null for a non-isolated singularity.
Json milnor(const MilnorResult& r, bool detail = false);

Json distortion(const DistortionReport& r);
Json ratio_sample(const RatioSample& r);
/// {"slope", "intercept", "r2"} and, with detail, the samples.
Json growth(const GrowthFit& f, bool detail = false);

/// {"code", "message", "locus"}.
Json error(const DomainError& e);
Json error(const std::string& code, const std::string& message, const std::string& locus = {});

}  // namespace lipmod::report

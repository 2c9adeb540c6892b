#pragma once

#include <cmath>

#include <json.hpp>

#include "lrcert/bounds.hpp"

namespace lrcert::detail {

using Json = nlohmann::ordered_json;

inline Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json to_json(const LRConstants& c);
Json to_json(const GrowthConstants& g);
Json to_json(const BoundConstants& c);
Json to_json(const PointRecord& p);
Json to_json(const CertificationReport& r);

}  // namespace lrcert::detail

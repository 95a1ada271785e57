#pragma once

#include <string>

#include "mforge/polar_space.hpp"

namespace mforge {

inline constexpr const char* kGeomSchema = "geom/1";

/// Serialized geom/1 document (compact JSON, trailing newline). Byte-stable.
std::string geometry_to_json(const PolarSpace& g);

/// Parses and validates a geom/1 document. Any structural or geometric
/// inconsistency raises CacheError.
PolarSpace geometry_from_json(const std::string& text);

void save_geometry(const PolarSpace& g, const std::string& path);
PolarSpace load_geometry(const std::string& path);

}  // namespace mforge

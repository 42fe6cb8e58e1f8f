#pragma once

#include <string>

#include <json.hpp>

#include "tensorkit/coord_systems.hpp"
#include "tensorkit/dense_tensor.hpp"

namespace tk {

// On-disk tensor format:
//   { "dim": 3, "variance": "^_", "weight": 0, "components": [ ... ] }
// "variance" is one character per slot ('^' upper, '_' lower), components
// are flat row-major (last index fastest), length dim^rank.  "weight" is
// optional and defaults to 0.

nlohmann::json tensor_to_json(const DenseTensor& t);
DenseTensor tensor_from_json(const nlohmann::json& j);

DenseTensor load_tensor(const std::string& path);
void save_tensor(const std::string& path, const DenseTensor& t);

// Coordinate system descriptor:
//   { "name": "my-frame", "dim": 3, "coords": ["r","theta","phi"],
//     "metric": "spherical" }
// "metric" must name a built-in system; user-defined metrics go through the
// programmatic CoordinateSystem API instead.
CoordinateSystem system_from_json(const nlohmann::json& j);
CoordinateSystem load_coordinate_system(const std::string& path);

} // namespace tk

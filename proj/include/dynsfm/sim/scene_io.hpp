#pragma once

#include "dynsfm/core/json_util.hpp"
#include "dynsfm/sim/scene.hpp"

namespace dynsfm::sim {

// Scene bundle serialization, format tag "scene/1". Round-trips preserve
// every value to better than 1e-12 (doubles are printed with 17 significant
// digits).
Json scene_to_json(const Scene& scene);
Scene scene_from_json(const Json& j);

Json scene_config_to_json(const SceneConfig& config);
SceneConfig scene_config_from_json(const Json& j);

}  // namespace dynsfm::sim

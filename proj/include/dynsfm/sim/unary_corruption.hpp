#pragma once

#include <cstdint>
#include <vector>

#include "dynsfm/seg/types.hpp"
#include "dynsfm/sim/scene.hpp"

namespace dynsfm::sim {

// Stand-in for learned appearance unaries: per-cell object-class costs
// derived from the ground-truth label rasters with seeded label-confusion
// noise. Each cell's true class is kept with probability 1 - flip_rate and
// replaced by a uniformly drawn other class otherwise; the (possibly
// flipped) class gets cost 0, every other class gets wrong_cost. Motion
// costs are left at zero; motion_unary fills them downstream.
//
// Returns one UnaryField per frame. Throws ConfigInvalid unless
// 0 <= flip_rate < 1.
std::vector<seg::UnaryField> corrupt_unaries(const GroundTruthBundle& gt, double flip_rate,
                                             std::uint64_t seed, double wrong_cost = 1.2);

}  // namespace dynsfm::sim

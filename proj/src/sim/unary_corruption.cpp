#include "dynsfm/sim/unary_corruption.hpp"

#include "dynsfm/core/errors.hpp"
#include "dynsfm/core/rng.hpp"

namespace dynsfm::sim {

std::vector<seg::UnaryField> corrupt_unaries(const GroundTruthBundle& gt, double flip_rate,
                                             std::uint64_t seed, double wrong_cost) {
  if (flip_rate < 0.0 || flip_rate >= 1.0) throw ConfigInvalid("flip_rate");
  if (wrong_cost <= 0.0) throw ConfigInvalid("wrong_cost");

  const int n_classes = static_cast<int>(scene_class_names().size());
  Rng rng(derive_seed(seed, "unary-corruption"));

  std::vector<seg::UnaryField> fields;
  fields.reserve(gt.class_raster.size());
  for (const auto& classes : gt.class_raster) {
    seg::UnaryField field;
    field.width = gt.raster_width;
    field.height = gt.raster_height;
    const int n_pixels = static_cast<int>(classes.size());
    field.object_costs = Eigen::MatrixXd::Constant(n_pixels, n_classes, wrong_cost);
    field.motion_costs = Eigen::MatrixXd::Zero(n_pixels, seg::kNumMotionClasses);
    for (int i = 0; i < n_pixels; ++i) {
      int label = classes[static_cast<std::size_t>(i)];
      if (flip_rate > 0.0 && rng.uniform() < flip_rate) {
        const int shift = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n_classes - 1)));
        label = (label + shift) % n_classes;
      }
      field.object_costs(i, label) = 0.0;
    }
    fields.push_back(std::move(field));
  }
  return fields;
}

}  // namespace dynsfm::sim

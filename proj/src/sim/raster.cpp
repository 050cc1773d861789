#include "dynsfm/sim/raster.hpp"

#include <cmath>

#include "dynsfm/sim/scene.hpp"

namespace dynsfm::sim {

FrameRaster rasterize(const FrameObservation& obs, const SceneConfig& config) {
  FrameRaster raster;
  raster.width = config.raster_width;
  raster.height = config.raster_height;
  raster.cells.assign(static_cast<std::size_t>(raster.width * raster.height), RasterCell{});

  const double sx = config.image_width / raster.width;
  const double sy = config.image_height / raster.height;

  std::vector<double> best_dist(raster.cells.size(), 0.0);
  for (const FeatureObservation& f : obs.features) {
    const int col = static_cast<int>(std::floor(f.pixel.x() / sx));
    const int row = static_cast<int>(std::floor(f.pixel.y() / sy));
    if (col < 0 || col >= raster.width || row < 0 || row >= raster.height) continue;
    const std::size_t idx = static_cast<std::size_t>(raster.index(col, row));
    const Eigen::Vector2d center((col + 0.5) * sx, (row + 0.5) * sy);
    const double dist = (f.pixel - center).squaredNorm();
    RasterCell& cell = raster.cells[idx];
    if (cell.has_feature && best_dist[idx] <= dist) continue;
    best_dist[idx] = dist;
    cell.has_feature = true;
    cell.track_id = f.track_id;
    cell.pixel = f.pixel;
    cell.depth = f.depth;
    cell.flow = f.measured_flow;
    cell.has_flow = f.has_flow;
    cell.appearance = f.depth;
  }
  for (RasterCell& cell : raster.cells) {
    if (!cell.has_feature) cell.appearance = config.far_depth;
  }
  return raster;
}

}  // namespace dynsfm::sim

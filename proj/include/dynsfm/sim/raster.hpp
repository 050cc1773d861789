#pragma once

#include <Eigen/Core>
#include <vector>

namespace dynsfm::sim {

struct SceneConfig;
struct FrameObservation;

struct RasterCell {
  bool has_feature = false;
  int track_id = -1;
  Eigen::Vector2d pixel = Eigen::Vector2d::Zero();  // image position of the kept feature
  double depth = 0.0;
  Eigen::Vector2d flow = Eigen::Vector2d::Zero();
  bool has_flow = false;
  double appearance = 0.0;  // depth channel; far_depth for empty cells
};

// Coarse grid the CRF runs on. Cell (col, row) covers an image tile of
// image_width/raster_width x image_height/raster_height pixels.
struct FrameRaster {
  int width = 0;
  int height = 0;
  std::vector<RasterCell> cells;  // row-major

  int index(int col, int row) const { return row * width + col; }
  Eigen::Vector2d grid_position(int cell) const {
    return {static_cast<double>(cell % width), static_cast<double>(cell / width)};
  }
};

// Nearest-neighbor rasterization: each feature maps to the cell containing
// its pixel; when several land in one cell the one closest to the cell
// center wins.
FrameRaster rasterize(const FrameObservation& obs, const SceneConfig& config);

}  // namespace dynsfm::sim

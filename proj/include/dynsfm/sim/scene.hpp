#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "dynsfm/geometry/camera.hpp"
#include "dynsfm/geometry/rigid_motion.hpp"

namespace dynsfm::sim {

// Fixed class ids used by the simulator; the pipeline builds its label
// space from scene_class_names() in this order.
inline constexpr int kClassRoad = 0;
inline constexpr int kClassCar = 1;
inline constexpr int kClassSky = 2;
std::vector<std::string> scene_class_names();

struct SceneConfig {
  int n_cube_points = 1000;
  double cube_side = 2.0;
  int n_ground_points = 1400;
  double ground_extent = 20.0;  // half-extent in x; depth span is 2x this
  double ground_y = 1.2;        // plane height below the camera (y points down)
  double ground_z_near = 2.0;

  // Camera poses are world -> camera maps; object poses are body -> world.
  // Both must have the same length (>= 2 frames).
  std::vector<geom::RigidMotion> camera_path;
  std::vector<geom::RigidMotion> object_path;

  double noise_sigma_points = 0.0;  // camera-frame 3D measurement noise, units
  double noise_sigma_pixels = 0.0;  // pixel and flow noise
  std::uint64_t seed = 0;

  geom::CameraIntrinsics intrinsics{300.0, 300.0, 320.0, 240.0};
  double image_width = 640.0;
  double image_height = 480.0;
  int raster_width = 64;   // coarse CRF grid
  int raster_height = 48;
  double far_depth = 60.0;  // appearance value for cells with no feature

  int n_frames() const { return static_cast<int>(camera_path.size()); }
  // Throws ConfigInvalid naming the offending field.
  void validate() const;
};

// Gentle forward arc for the camera, crossing arc for the object, both in
// the ground plane. Used by the bundled configs.
std::vector<geom::RigidMotion> default_camera_path(int n_frames);
std::vector<geom::RigidMotion> default_object_path(int n_frames);
// Constant-velocity straight lines (zero trajectory curvature everywhere).
std::vector<geom::RigidMotion> straight_camera_path(int n_frames);
std::vector<geom::RigidMotion> straight_object_path(int n_frames);

SceneConfig default_scene_config(int n_frames = 30);

struct FeatureObservation {
  int track_id = -1;
  Eigen::Vector2d pixel = Eigen::Vector2d::Zero();  // noisy image position
  double depth = 0.0;                               // noisy camera-frame z
  Eigen::Vector2d measured_flow = Eigen::Vector2d::Zero();  // displacement to next frame
  bool has_flow = false;
  Eigen::Vector3d point3d_camera = Eigen::Vector3d::Zero();  // noisy camera-frame point
};

struct FrameObservation {
  int frame = 0;
  std::vector<FeatureObservation> features;  // ordered by track id

  const FeatureObservation* find(int track_id) const;
};

struct GroundTruthBundle {
  std::vector<geom::RigidMotion> camera_poses;  // world -> camera
  std::vector<geom::RigidMotion> object_poses;  // body -> world
  std::vector<Eigen::Vector3d> cube_points_body;
  std::vector<Eigen::Vector3d> ground_points_world;
  Eigen::Vector3d ground_normal = Eigen::Vector3d::Zero();  // unit length

  // Track id -> semantics. Cube tracks come first, then ground tracks.
  std::vector<int> track_class;
  std::vector<bool> track_moving;

  // Per-frame ground-truth label maps on the coarse raster (kClassSky /
  // static where no feature lands).
  int raster_width = 0;
  int raster_height = 0;
  std::vector<std::vector<int>> class_raster;
  std::vector<std::vector<int>> motion_raster;

  int num_tracks() const { return static_cast<int>(track_class.size()); }
  Eigen::Vector3d cube_point_world(int frame, int cube_index) const {
    return object_poses[static_cast<std::size_t>(frame)].apply(
        cube_points_body[static_cast<std::size_t>(cube_index)]);
  }
};

struct Scene {
  SceneConfig config;
  GroundTruthBundle ground_truth;
  std::vector<FrameObservation> frames;
};

// Deterministic for a fixed seed. Cube points are sampled on the surface
// (stratified per face); ground points on the plane patch. Measurements are
// true projections plus zero-mean Gaussian noise; points behind the camera
// (or with non-positive noisy depth) are dropped for that frame.
Scene generate(const SceneConfig& config);

}  // namespace dynsfm::sim

#include "dynsfm/sim/scene.hpp"

#include <algorithm>
#include <cmath>

#include "dynsfm/core/errors.hpp"
#include "dynsfm/core/rng.hpp"
#include "dynsfm/sim/raster.hpp"

namespace dynsfm::sim {

std::vector<std::string> scene_class_names() { return {"road", "car", "sky"}; }

void SceneConfig::validate() const {
  if (n_cube_points < 8) throw ConfigInvalid("n_cube_points");
  if (cube_side <= 0.0) throw ConfigInvalid("cube_side");
  if (n_ground_points < 3) throw ConfigInvalid("n_ground_points");
  if (ground_extent <= 0.0) throw ConfigInvalid("ground_extent");
  if (noise_sigma_points < 0.0) throw ConfigInvalid("noise_sigma_points");
  if (noise_sigma_pixels < 0.0) throw ConfigInvalid("noise_sigma_pixels");
  if (camera_path.size() < 2) throw ConfigInvalid("camera_path");
  if (camera_path.size() != object_path.size()) throw ConfigInvalid("object_path");
  if (!intrinsics.is_valid()) throw ConfigInvalid("intrinsics");
  if (raster_width < 2 || raster_height < 2) throw ConfigInvalid("raster_width");
  if (image_width <= 0 || image_height <= 0) throw ConfigInvalid("image_width");
  for (const auto& p : camera_path) {
    if (!p.is_valid()) throw ConfigInvalid("camera_path");
  }
  for (const auto& p : object_path) {
    if (!p.is_valid()) throw ConfigInvalid("object_path");
  }
}

std::vector<geom::RigidMotion> default_camera_path(int n_frames) {
  std::vector<geom::RigidMotion> path;
  path.reserve(static_cast<std::size_t>(n_frames));
  for (int k = 0; k < n_frames; ++k) {
    const Eigen::Vector3d center(0.3 * std::sin(0.1 * k), 0.0, 0.25 * k);
    const double yaw = 0.005 * k;
    geom::RigidMotion cam_to_world = geom::rotation_about_y(yaw);
    cam_to_world.translation = center;
    path.push_back(geom::invert(cam_to_world));
  }
  return path;
}

std::vector<geom::RigidMotion> default_object_path(int n_frames) {
  std::vector<geom::RigidMotion> path;
  path.reserve(static_cast<std::size_t>(n_frames));
  for (int k = 0; k < n_frames; ++k) {
    geom::RigidMotion pose;
    pose.translation =
        Eigen::Vector3d(-5.0 + 0.25 * k, 0.2, 8.0 + 0.1 * k + 0.2 * std::sin(0.3 * k));
    path.push_back(pose);
  }
  return path;
}

std::vector<geom::RigidMotion> straight_camera_path(int n_frames) {
  std::vector<geom::RigidMotion> path;
  for (int k = 0; k < n_frames; ++k) {
    geom::RigidMotion cam_to_world;
    cam_to_world.translation = Eigen::Vector3d(0.0, 0.0, 0.25 * k);
    path.push_back(geom::invert(cam_to_world));
  }
  return path;
}

std::vector<geom::RigidMotion> straight_object_path(int n_frames) {
  std::vector<geom::RigidMotion> path;
  for (int k = 0; k < n_frames; ++k) {
    geom::RigidMotion pose;
    pose.translation = Eigen::Vector3d(-5.0 + 0.25 * k, 0.2, 8.0 + 0.1 * k);
    path.push_back(pose);
  }
  return path;
}

SceneConfig default_scene_config(int n_frames) {
  SceneConfig cfg;
  cfg.camera_path = default_camera_path(n_frames);
  cfg.object_path = default_object_path(n_frames);
  return cfg;
}

const FeatureObservation* FrameObservation::find(int track_id) const {
  auto it = std::lower_bound(features.begin(), features.end(), track_id,
                             [](const FeatureObservation& f, int id) { return f.track_id < id; });
  if (it == features.end() || it->track_id != track_id) return nullptr;
  return &*it;
}

namespace {

// Stratified sampling on the cube surface: points are spread across the six
// faces in order (+x,-x,+y,-y,+z,-z), uniform within each face.
std::vector<Eigen::Vector3d> sample_cube_surface(int n, double side, Rng& rng) {
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(static_cast<std::size_t>(n));
  const double h = side / 2.0;
  for (int i = 0; i < n; ++i) {
    const int face = i % 6;
    const double u = rng.uniform(-h, h);
    const double v = rng.uniform(-h, h);
    switch (face) {
      case 0: pts.emplace_back(h, u, v); break;
      case 1: pts.emplace_back(-h, u, v); break;
      case 2: pts.emplace_back(u, h, v); break;
      case 3: pts.emplace_back(u, -h, v); break;
      case 4: pts.emplace_back(u, v, h); break;
      default: pts.emplace_back(u, v, -h); break;
    }
  }
  return pts;
}

}  // namespace

Scene generate(const SceneConfig& config) {
  config.validate();

  Scene scene;
  scene.config = config;
  GroundTruthBundle& gt = scene.ground_truth;
  gt.camera_poses = config.camera_path;
  gt.object_poses = config.object_path;
  gt.ground_normal = Eigen::Vector3d(0.0, 1.0, 0.0);  // plane y = ground_y

  Rng rng(derive_seed(config.seed, "scene"));

  gt.cube_points_body = sample_cube_surface(config.n_cube_points, config.cube_side, rng);
  gt.ground_points_world.reserve(static_cast<std::size_t>(config.n_ground_points));
  for (int i = 0; i < config.n_ground_points; ++i) {
    const double x = rng.uniform(-config.ground_extent, config.ground_extent);
    const double z = rng.uniform(config.ground_z_near, config.ground_z_near + 2.0 * config.ground_extent);
    gt.ground_points_world.emplace_back(x, config.ground_y, z);
  }

  const int n_tracks = config.n_cube_points + config.n_ground_points;
  gt.track_class.resize(static_cast<std::size_t>(n_tracks));
  gt.track_moving.resize(static_cast<std::size_t>(n_tracks));
  for (int t = 0; t < n_tracks; ++t) {
    const bool is_cube = t < config.n_cube_points;
    gt.track_class[static_cast<std::size_t>(t)] = is_cube ? kClassCar : kClassRoad;
    gt.track_moving[static_cast<std::size_t>(t)] = is_cube;
  }

  const int n_frames = config.n_frames();
  const auto world_point = [&](int track, int frame) -> Eigen::Vector3d {
    if (track < config.n_cube_points) return gt.cube_point_world(frame, track);
    return gt.ground_points_world[static_cast<std::size_t>(track - config.n_cube_points)];
  };

  // True projections first; a feature exists in a frame iff its true depth
  // is positive there.
  std::vector<std::vector<double>> true_depth(static_cast<std::size_t>(n_frames));
  std::vector<std::vector<Eigen::Vector2d>> true_pixel(static_cast<std::size_t>(n_frames));
  for (int k = 0; k < n_frames; ++k) {
    auto& depths = true_depth[static_cast<std::size_t>(k)];
    auto& pixels = true_pixel[static_cast<std::size_t>(k)];
    depths.assign(static_cast<std::size_t>(n_tracks), -1.0);
    pixels.assign(static_cast<std::size_t>(n_tracks), Eigen::Vector2d::Zero());
    const geom::RigidMotion& cam = gt.camera_poses[static_cast<std::size_t>(k)];
    for (int t = 0; t < n_tracks; ++t) {
      const Eigen::Vector3d pc = cam.apply(world_point(t, k));
      if (pc.z() <= 1e-6) continue;
      depths[static_cast<std::size_t>(t)] = pc.z();
      pixels[static_cast<std::size_t>(t)] = geom::project_camera_point(config.intrinsics, pc);
    }
  }

  scene.frames.resize(static_cast<std::size_t>(n_frames));
  for (int k = 0; k < n_frames; ++k) {
    FrameObservation& obs = scene.frames[static_cast<std::size_t>(k)];
    obs.frame = k;
    const geom::RigidMotion& cam = gt.camera_poses[static_cast<std::size_t>(k)];
    for (int t = 0; t < n_tracks; ++t) {
      if (true_depth[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)] <= 0.0) continue;

      FeatureObservation f;
      f.track_id = t;
      const Eigen::Vector3d pc = cam.apply(world_point(t, k));
      const Eigen::Vector3d noise3d(rng.normal(0.0, config.noise_sigma_points),
                                    rng.normal(0.0, config.noise_sigma_points),
                                    rng.normal(0.0, config.noise_sigma_points));
      f.point3d_camera = pc + noise3d;
      f.depth = f.point3d_camera.z();
      f.pixel = true_pixel[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)] +
                Eigen::Vector2d(rng.normal(0.0, config.noise_sigma_pixels),
                                rng.normal(0.0, config.noise_sigma_pixels));
      if (k + 1 < n_frames &&
          true_depth[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(t)] > 0.0) {
        const Eigen::Vector2d displacement =
            true_pixel[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(t)] -
            true_pixel[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)];
        f.measured_flow = displacement + Eigen::Vector2d(rng.normal(0.0, config.noise_sigma_pixels),
                                                         rng.normal(0.0, config.noise_sigma_pixels));
        f.has_flow = true;
      }
      if (f.depth <= 1e-6) continue;  // noise pushed the point behind the camera
      obs.features.push_back(std::move(f));
    }
  }

  // Ground-truth label maps share the rasterization rule with the pipeline.
  gt.raster_width = config.raster_width;
  gt.raster_height = config.raster_height;
  gt.class_raster.resize(static_cast<std::size_t>(n_frames));
  gt.motion_raster.resize(static_cast<std::size_t>(n_frames));
  for (int k = 0; k < n_frames; ++k) {
    const FrameRaster raster = rasterize(scene.frames[static_cast<std::size_t>(k)], config);
    auto& classes = gt.class_raster[static_cast<std::size_t>(k)];
    auto& motions = gt.motion_raster[static_cast<std::size_t>(k)];
    classes.assign(raster.cells.size(), kClassSky);
    motions.assign(raster.cells.size(), 0);
    for (std::size_t c = 0; c < raster.cells.size(); ++c) {
      const RasterCell& cell = raster.cells[c];
      if (!cell.has_feature) continue;
      classes[c] = gt.track_class[static_cast<std::size_t>(cell.track_id)];
      motions[c] = gt.track_moving[static_cast<std::size_t>(cell.track_id)] ? 1 : 0;
    }
  }

  return scene;
}

}  // namespace dynsfm::sim

#include "dynsfm/sim/scene_io.hpp"

#include "dynsfm/core/errors.hpp"

namespace dynsfm::sim {

namespace {

Json motion_to_json(const geom::RigidMotion& m) {
  Json r = Json::array();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r.push_back(m.rotation(i, j));
  }
  return Json{{"rotation", r}, {"translation", {m.translation.x(), m.translation.y(), m.translation.z()}}};
}

geom::RigidMotion motion_from_json(const Json& j) {
  geom::RigidMotion m;
  const auto& r = j.at("rotation");
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) m.rotation(i, k) = r.at(static_cast<std::size_t>(i * 3 + k)).get<double>();
  }
  const auto& t = j.at("translation");
  m.translation = Eigen::Vector3d(t.at(0).get<double>(), t.at(1).get<double>(), t.at(2).get<double>());
  return m;
}

Json vec3_to_json(const Eigen::Vector3d& v) { return Json{v.x(), v.y(), v.z()}; }

Eigen::Vector3d vec3_from_json(const Json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

Json path_to_json(const std::vector<geom::RigidMotion>& path) {
  Json arr = Json::array();
  for (const auto& m : path) arr.push_back(motion_to_json(m));
  return arr;
}

std::vector<geom::RigidMotion> path_from_json(const Json& j) {
  std::vector<geom::RigidMotion> path;
  for (const auto& m : j) path.push_back(motion_from_json(m));
  return path;
}

}  // namespace

Json scene_config_to_json(const SceneConfig& c) {
  Json j;
  j["n_cube_points"] = c.n_cube_points;
  j["cube_side"] = c.cube_side;
  j["n_ground_points"] = c.n_ground_points;
  j["ground_extent"] = c.ground_extent;
  j["ground_y"] = c.ground_y;
  j["ground_z_near"] = c.ground_z_near;
  j["camera_path"] = path_to_json(c.camera_path);
  j["object_path"] = path_to_json(c.object_path);
  j["noise_sigma_points"] = c.noise_sigma_points;
  j["noise_sigma_pixels"] = c.noise_sigma_pixels;
  j["seed"] = c.seed;
  j["intrinsics"] = Json{{"fx", c.intrinsics.fx}, {"fy", c.intrinsics.fy},
                         {"cx", c.intrinsics.cx}, {"cy", c.intrinsics.cy}};
  j["image_width"] = c.image_width;
  j["image_height"] = c.image_height;
  j["raster_width"] = c.raster_width;
  j["raster_height"] = c.raster_height;
  j["far_depth"] = c.far_depth;
  return j;
}

SceneConfig scene_config_from_json(const Json& j) {
  SceneConfig c;
  c.n_cube_points = j.at("n_cube_points").get<int>();
  c.cube_side = j.at("cube_side").get<double>();
  c.n_ground_points = j.at("n_ground_points").get<int>();
  c.ground_extent = j.at("ground_extent").get<double>();
  c.ground_y = j.at("ground_y").get<double>();
  c.ground_z_near = j.at("ground_z_near").get<double>();
  c.camera_path = path_from_json(j.at("camera_path"));
  c.object_path = path_from_json(j.at("object_path"));
  c.noise_sigma_points = j.at("noise_sigma_points").get<double>();
  c.noise_sigma_pixels = j.at("noise_sigma_pixels").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  const auto& k = j.at("intrinsics");
  c.intrinsics = {k.at("fx").get<double>(), k.at("fy").get<double>(), k.at("cx").get<double>(),
                  k.at("cy").get<double>()};
  c.image_width = j.at("image_width").get<double>();
  c.image_height = j.at("image_height").get<double>();
  c.raster_width = j.at("raster_width").get<int>();
  c.raster_height = j.at("raster_height").get<int>();
  c.far_depth = j.at("far_depth").get<double>();
  return c;
}

Json scene_to_json(const Scene& scene) {
  Json j;
  j["format"] = "scene/1";
  j["config"] = scene_config_to_json(scene.config);

  const GroundTruthBundle& gt = scene.ground_truth;
  Json g;
  g["camera_poses"] = path_to_json(gt.camera_poses);
  g["object_poses"] = path_to_json(gt.object_poses);
  Json cube = Json::array();
  for (const auto& p : gt.cube_points_body) cube.push_back(vec3_to_json(p));
  g["cube_points_body"] = cube;
  Json ground = Json::array();
  for (const auto& p : gt.ground_points_world) ground.push_back(vec3_to_json(p));
  g["ground_points_world"] = ground;
  g["ground_normal"] = vec3_to_json(gt.ground_normal);
  g["track_class"] = gt.track_class;
  Json moving = Json::array();
  for (bool b : gt.track_moving) moving.push_back(b ? 1 : 0);
  g["track_moving"] = moving;
  g["raster_width"] = gt.raster_width;
  g["raster_height"] = gt.raster_height;
  g["class_raster"] = gt.class_raster;
  g["motion_raster"] = gt.motion_raster;
  j["ground_truth"] = std::move(g);

  Json frames = Json::array();
  for (const FrameObservation& obs : scene.frames) {
    Json fo;
    fo["frame"] = obs.frame;
    Json feats = Json::array();
    for (const FeatureObservation& f : obs.features) {
      Json fj;
      fj["track"] = f.track_id;
      fj["pixel"] = {f.pixel.x(), f.pixel.y()};
      fj["depth"] = f.depth;
      fj["flow"] = {f.measured_flow.x(), f.measured_flow.y()};
      fj["has_flow"] = f.has_flow;
      fj["point3d"] = vec3_to_json(f.point3d_camera);
      feats.push_back(std::move(fj));
    }
    fo["features"] = std::move(feats);
    frames.push_back(std::move(fo));
  }
  j["frames"] = std::move(frames);
  return j;
}

Scene scene_from_json(const Json& j) {
  if (j.value("format", "") != std::string("scene/1")) {
    throw IoError("not a scene/1 bundle");
  }
  Scene scene;
  scene.config = scene_config_from_json(j.at("config"));

  const Json& g = j.at("ground_truth");
  GroundTruthBundle& gt = scene.ground_truth;
  gt.camera_poses = path_from_json(g.at("camera_poses"));
  gt.object_poses = path_from_json(g.at("object_poses"));
  for (const auto& p : g.at("cube_points_body")) gt.cube_points_body.push_back(vec3_from_json(p));
  for (const auto& p : g.at("ground_points_world")) gt.ground_points_world.push_back(vec3_from_json(p));
  gt.ground_normal = vec3_from_json(g.at("ground_normal"));
  gt.track_class = g.at("track_class").get<std::vector<int>>();
  for (const auto& b : g.at("track_moving")) gt.track_moving.push_back(b.get<int>() != 0);
  gt.raster_width = g.at("raster_width").get<int>();
  gt.raster_height = g.at("raster_height").get<int>();
  gt.class_raster = g.at("class_raster").get<std::vector<std::vector<int>>>();
  gt.motion_raster = g.at("motion_raster").get<std::vector<std::vector<int>>>();

  for (const auto& fo : j.at("frames")) {
    FrameObservation obs;
    obs.frame = fo.at("frame").get<int>();
    for (const auto& fj : fo.at("features")) {
      FeatureObservation f;
      f.track_id = fj.at("track").get<int>();
      f.pixel = Eigen::Vector2d(fj.at("pixel").at(0).get<double>(), fj.at("pixel").at(1).get<double>());
      f.depth = fj.at("depth").get<double>();
      f.measured_flow =
          Eigen::Vector2d(fj.at("flow").at(0).get<double>(), fj.at("flow").at(1).get<double>());
      f.has_flow = fj.at("has_flow").get<bool>();
      f.point3d_camera = vec3_from_json(fj.at("point3d"));
      obs.features.push_back(std::move(f));
    }
    scene.frames.push_back(std::move(obs));
  }
  return scene;
}

}  // namespace dynsfm::sim

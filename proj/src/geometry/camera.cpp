#include "dynsfm/geometry/camera.hpp"

#include <Eigen/Eigenvalues>

#include "dynsfm/core/errors.hpp"

namespace dynsfm::geom {

namespace {
constexpr double kMinDepth = 1e-9;
}

bool FlowCovariance::is_valid(double sym_tol) const {
  if (std::abs(sigma(0, 1) - sigma(1, 0)) > sym_tol) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(sigma);
  return es.eigenvalues().minCoeff() > 0.0;
}

Eigen::Matrix2d FlowCovariance::inverse_checked() const {
  if (!is_valid()) throw SingularCovariance();
  return sigma.inverse();
}

Eigen::Vector2d project_camera_point(const CameraIntrinsics& K, const Eigen::Vector3d& Xc) {
  if (Xc.z() <= kMinDepth) throw NonPositiveDepth();
  return {K.fx * Xc.x() / Xc.z() + K.cx, K.fy * Xc.y() / Xc.z() + K.cy};
}

Eigen::Vector2d project(const CameraIntrinsics& K, const RigidMotion& pose,
                        const Eigen::Vector3d& X) {
  return project_camera_point(K, pose.apply(X));
}

Eigen::Vector3d back_project(const CameraIntrinsics& K, const Eigen::Vector2d& pixel,
                             double depth) {
  if (depth <= kMinDepth) throw NonPositiveDepth();
  return {depth * (pixel.x() - K.cx) / K.fx, depth * (pixel.y() - K.cy) / K.fy, depth};
}

Eigen::Vector2d predicted_flow(const CameraIntrinsics& K, const RigidMotion& cam_motion,
                               const Eigen::Vector2d& pixel, double depth) {
  if (depth <= kMinDepth) throw NonPositiveDepth();
  const Eigen::Matrix3d Km = K.matrix();
  const Eigen::Vector3d x_h(pixel.x(), pixel.y(), 1.0);
  const Eigen::Vector3d h =
      Km * cam_motion.rotation * Km.inverse() * x_h + Km * cam_motion.translation / depth;
  if (h.z() <= kMinDepth) throw NonPositiveDepth("predicted point behind camera");
  return {h.x() / h.z(), h.y() / h.z()};
}

}  // namespace dynsfm::geom

#pragma once

#include <Eigen/Core>

#include "dynsfm/geometry/rigid_motion.hpp"

namespace dynsfm::geom {

struct CameraIntrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;

  Eigen::Matrix3d matrix() const {
    Eigen::Matrix3d k;
    k << fx, 0, cx, 0, fy, cy, 0, 0, 1;
    return k;
  }

  bool is_valid() const { return fx > 0.0 && fy > 0.0; }
};

// 2x2 SPD covariance of a flow residual, pixels^2.
struct FlowCovariance {
  Eigen::Matrix2d sigma = Eigen::Matrix2d::Identity();

  static FlowCovariance isotropic(double variance) {
    FlowCovariance c;
    c.sigma = variance * Eigen::Matrix2d::Identity();
    return c;
  }

  bool is_valid(double sym_tol = 1e-12) const;
  // Throws SingularCovariance when not positive-definite.
  Eigen::Matrix2d inverse_checked() const;
};

// Perspective projection of world point X through pose (world -> camera)
// and intrinsics. Throws NonPositiveDepth when camera-frame z <= 1e-9.
Eigen::Vector2d project(const CameraIntrinsics& K, const RigidMotion& pose,
                        const Eigen::Vector3d& X);

// Projection of a camera-frame point.
Eigen::Vector2d project_camera_point(const CameraIntrinsics& K, const Eigen::Vector3d& Xc);

// Pixel position at the next frame predicted for a static point seen at
// `pixel` with depth z, given the camera motion (previous camera frame ->
// next camera frame). Equivalent to back-projecting at depth z, moving the
// camera and re-projecting; the homogeneous-pixel form K*R*K^-1*x + K*T/z
// is used, reading the published K' as K^-1 (the only dimensionally
// consistent choice).
Eigen::Vector2d predicted_flow(const CameraIntrinsics& K, const RigidMotion& cam_motion,
                               const Eigen::Vector2d& pixel, double depth);

// Camera-frame point for a pixel at known depth.
Eigen::Vector3d back_project(const CameraIntrinsics& K, const Eigen::Vector2d& pixel,
                             double depth);

}  // namespace dynsfm::geom

#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace dynsfm::geom {

// Rigid motion x -> R*x + t. Used both for camera extrinsics (world ->
// camera, t = -R*C with C the camera center) and for body poses (body ->
// world). Rotations are stored as full matrices; solver-side updates go
// through exp_so3 increments so the invariants survive long chains.
struct RigidMotion {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static RigidMotion identity() { return {}; }

  Eigen::Vector3d apply(const Eigen::Vector3d& x) const { return rotation * x + translation; }

  // Camera center for an extrinsic pose: C = -R^T t.
  Eigen::Vector3d center() const { return -rotation.transpose() * translation; }

  bool is_valid(double tol = 1e-9) const;
};

// Applies b first, then a.
RigidMotion compose(const RigidMotion& a, const RigidMotion& b);

RigidMotion invert(const RigidMotion& m);

// Relative motion taking frame `from` coordinates into frame `to`
// coordinates, both given as maps into a common frame: to^-1 would be wrong,
// the useful quantity is to ∘ from^-1.
RigidMotion relative(const RigidMotion& to, const RigidMotion& from);

// Rodrigues exponential of an axis-angle vector.
Eigen::Matrix3d exp_so3(const Eigen::Vector3d& omega);

// Logarithm, inverse of exp_so3; angle in [0, pi].
Eigen::Vector3d log_so3(const Eigen::Matrix3d& rotation);

// Skew-symmetric matrix such that hat(a)*b = a x b.
Eigen::Matrix3d hat(const Eigen::Vector3d& a);

// Nearest rotation matrix (polar projection); guards accumulated drift.
Eigen::Matrix3d project_to_so3(const Eigen::Matrix3d& m);

RigidMotion rotation_about_z(double angle);
RigidMotion rotation_about_y(double angle);

}  // namespace dynsfm::geom

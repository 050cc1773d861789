#include "dynsfm/geometry/rigid_motion.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace dynsfm::geom {

bool RigidMotion::is_valid(double tol) const {
  Eigen::Matrix3d orth = rotation.transpose() * rotation - Eigen::Matrix3d::Identity();
  if (orth.cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(rotation.determinant() - 1.0) <= tol;
}

RigidMotion compose(const RigidMotion& a, const RigidMotion& b) {
  RigidMotion out;
  out.rotation = a.rotation * b.rotation;
  out.translation = a.rotation * b.translation + a.translation;
  return out;
}

RigidMotion invert(const RigidMotion& m) {
  RigidMotion out;
  out.rotation = m.rotation.transpose();
  out.translation = -(m.rotation.transpose() * m.translation);
  return out;
}

RigidMotion relative(const RigidMotion& to, const RigidMotion& from) {
  return compose(to, invert(from));
}

Eigen::Matrix3d hat(const Eigen::Vector3d& a) {
  Eigen::Matrix3d m;
  m << 0, -a.z(), a.y(), a.z(), 0, -a.x(), -a.y(), a.x(), 0;
  return m;
}

Eigen::Matrix3d exp_so3(const Eigen::Vector3d& omega) {
  const double theta = omega.norm();
  const Eigen::Matrix3d w = hat(omega);
  if (theta < 1e-12) {
    return Eigen::Matrix3d::Identity() + w + 0.5 * w * w;
  }
  const double s = std::sin(theta) / theta;
  const double c = (1.0 - std::cos(theta)) / (theta * theta);
  return Eigen::Matrix3d::Identity() + s * w + c * w * w;
}

Eigen::Vector3d log_so3(const Eigen::Matrix3d& rotation) {
  const double cos_theta = std::min(1.0, std::max(-1.0, (rotation.trace() - 1.0) / 2.0));
  const double theta = std::acos(cos_theta);
  Eigen::Vector3d axis(rotation(2, 1) - rotation(1, 2), rotation(0, 2) - rotation(2, 0),
                       rotation(1, 0) - rotation(0, 1));
  if (theta < 1e-9) {
    return 0.5 * axis;
  }
  if (theta > M_PI - 1e-6) {
    // Near pi the off-diagonal difference vanishes; recover the axis from
    // the symmetric part instead.
    Eigen::Matrix3d s = 0.5 * (rotation + Eigen::Matrix3d::Identity());
    Eigen::Vector3d a(std::sqrt(std::max(0.0, s(0, 0))), std::sqrt(std::max(0.0, s(1, 1))),
                      std::sqrt(std::max(0.0, s(2, 2))));
    int k;
    a.maxCoeff(&k);
    for (int i = 0; i < 3; ++i) {
      if (i != k && s(k, i) < 0) a[i] = -a[i];
    }
    if (a[k] < 0) a = -a;
    return theta * a.normalized();
  }
  return (theta / (2.0 * std::sin(theta))) * axis;
}

Eigen::Matrix3d project_to_so3(const Eigen::Matrix3d& m) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0) {
    Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
    flip(2, 2) = -1;
    r = svd.matrixU() * flip * svd.matrixV().transpose();
  }
  return r;
}

RigidMotion rotation_about_z(double angle) {
  RigidMotion m;
  m.rotation = Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  return m;
}

RigidMotion rotation_about_y(double angle) {
  RigidMotion m;
  m.rotation = Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitY()).toRotationMatrix();
  return m;
}

}  // namespace dynsfm::geom

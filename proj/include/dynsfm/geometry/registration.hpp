#pragma once

#include <cstdint>
#include <vector>

#include "dynsfm/geometry/rigid_motion.hpp"

namespace dynsfm::geom {

using PointPairs = std::vector<std::pair<Eigen::Vector3d, Eigen::Vector3d>>;

// Closed-form least-squares rigid alignment (SVD of the cross-covariance):
// returns M minimizing sum ||M(p_i) - q_i||^2 with det(R) = +1 enforced by
// the usual last-singular-vector sign flip. Throws DegenerateConfiguration
// when the pairs are collinear (two smallest singular values below
// 1e-12 x largest).
RigidMotion absolute_orientation(const PointPairs& pairs);

struct RansacResult {
  RigidMotion motion;
  std::vector<bool> inliers;
  int inlier_count = 0;
};

// 3-sample RANSAC on 3D-3D correspondences, refit on the best consensus set
// with absolute_orientation. Deterministic for a fixed seed; the iteration
// count is fixed rather than adaptive so regression runtimes are stable.
RansacResult ransac_registration(const PointPairs& pairs, int max_iters, double inlier_thresh,
                                 std::uint64_t seed);

}  // namespace dynsfm::geom

#include "dynsfm/geometry/registration.hpp"

#include <Eigen/SVD>
#include <array>

#include "dynsfm/core/errors.hpp"
#include "dynsfm/core/rng.hpp"

namespace dynsfm::geom {

RigidMotion absolute_orientation(const PointPairs& pairs) {
  const std::size_t n = pairs.size();
  if (n < 3) throw DegenerateConfiguration("absolute_orientation needs >= 3 pairs");

  Eigen::Vector3d cp = Eigen::Vector3d::Zero();
  Eigen::Vector3d cq = Eigen::Vector3d::Zero();
  for (const auto& [p, q] : pairs) {
    cp += p;
    cq += q;
  }
  cp /= static_cast<double>(n);
  cq /= static_cast<double>(n);

  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  for (const auto& [p, q] : pairs) {
    h += (p - cp) * (q - cq).transpose();
  }

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector3d sv = svd.singularValues();
  if (sv(1) <= 1e-12 * sv(0) && sv(2) <= 1e-12 * sv(0)) {
    throw DegenerateConfiguration("point pairs are collinear");
  }

  Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
  if ((svd.matrixV() * svd.matrixU().transpose()).determinant() < 0) d(2, 2) = -1.0;

  RigidMotion out;
  out.rotation = svd.matrixV() * d * svd.matrixU().transpose();
  out.translation = cq - out.rotation * cp;
  return out;
}

RansacResult ransac_registration(const PointPairs& pairs, int max_iters, double inlier_thresh,
                                 std::uint64_t seed) {
  const std::size_t n = pairs.size();
  if (n < 3) throw InsufficientInliers("fewer than 3 correspondences");
  if (inlier_thresh <= 0.0) throw ConfigInvalid("inlier_thresh");

  Rng rng(seed);
  const double thresh_sq = inlier_thresh * inlier_thresh;

  int best_count = -1;
  std::vector<bool> best_mask(n, false);

  for (int iter = 0; iter < max_iters; ++iter) {
    std::array<std::size_t, 3> idx{};
    idx[0] = rng.uniform_int(n);
    do {
      idx[1] = rng.uniform_int(n);
    } while (idx[1] == idx[0]);
    do {
      idx[2] = rng.uniform_int(n);
    } while (idx[2] == idx[0] || idx[2] == idx[1]);

    PointPairs sample = {pairs[idx[0]], pairs[idx[1]], pairs[idx[2]]};
    RigidMotion hyp;
    try {
      hyp = absolute_orientation(sample);
    } catch (const DegenerateConfiguration&) {
      continue;
    }

    int count = 0;
    std::vector<bool> mask(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if ((hyp.apply(pairs[i].first) - pairs[i].second).squaredNorm() <= thresh_sq) {
        mask[i] = true;
        ++count;
      }
    }
    if (count > best_count) {
      best_count = count;
      best_mask = std::move(mask);
    }
  }

  if (best_count < 3) throw InsufficientInliers();

  PointPairs consensus;
  consensus.reserve(static_cast<std::size_t>(best_count));
  for (std::size_t i = 0; i < n; ++i) {
    if (best_mask[i]) consensus.push_back(pairs[i]);
  }

  RansacResult result;
  result.motion = absolute_orientation(consensus);
  result.inliers.assign(n, false);
  result.inlier_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if ((result.motion.apply(pairs[i].first) - pairs[i].second).squaredNorm() <= thresh_sq) {
      result.inliers[i] = true;
      ++result.inlier_count;
    }
  }
  if (result.inlier_count < 3) throw InsufficientInliers();
  return result;
}

}  // namespace dynsfm::geom

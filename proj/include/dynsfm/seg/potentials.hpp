#pragma once

#include <Eigen/Core>
#include <vector>

#include "dynsfm/geometry/camera.hpp"
#include "dynsfm/seg/types.hpp"
#include "dynsfm/sim/raster.hpp"
#include "dynsfm/sim/scene.hpp"

namespace dynsfm::seg {

// Pairwise kernel configuration. Object-class disagreement between cells i
// and j costs
//   p(i,j) = w_spatial * exp(-|dpos|^2 / 2 theta_gamma^2)
//          + w_bilateral * exp(-|dpos|^2 / 2 theta_alpha^2
//                              - |dapp|^2 / 2 theta_beta^2)
// and motion-label disagreement costs
//   g(i,j) = w_motion * exp(-|df| / theta_flow)
// so cells with similar flow pay the most for disagreeing. Positions are in
// raster cells; neighborhoods are truncated at `radius` cells.
struct PairwiseParams {
  double w_spatial = 0.04;
  double w_bilateral = 0.04;
  double theta_gamma = 3.0;
  double theta_alpha = 8.0;
  double theta_beta = 3.0;
  double w_motion = 0.05;
  double theta_flow = 4.0;
  int radius = 5;
};

double pairwise_object(const Eigen::Vector2d& pos_i, double app_i, const Eigen::Vector2d& pos_j,
                       double app_j, const PairwiseParams& params);

// Zero when either cell has no flow (no evidence either way).
double pairwise_motion(const Eigen::Vector2d& flow_i, bool has_flow_i,
                       const Eigen::Vector2d& flow_j, bool has_flow_j,
                       const PairwiseParams& params);

// Precomputed pairwise structure for one raster: neighbor lists with the
// object/motion kernel values. Each unordered pair appears once.
struct PairwiseGraph {
  int width = 0;
  int height = 0;
  std::vector<std::vector<int>> neighbors;       // per cell, j > i not required
  std::vector<std::vector<double>> object_cost;  // p(i,j) aligned with neighbors
  std::vector<std::vector<double>> motion_cost;  // g(i,j)
};

PairwiseGraph build_pairwise_graph(const sim::FrameRaster& raster, const PairwiseParams& params);

// Motion-layer unary per Mahalanobis flow deviation: cost(static) =
// (predicted - measured)' Sigma^-1 (predicted - measured); cost(moving) is
// the constant tau_moving (a 2-sigma boundary by default since the source
// likelihood only covers the static hypothesis). Cells without depth or
// flow get equal (zero) costs. cam_motion maps this frame's camera frame
// into the next frame's.
Eigen::MatrixXd motion_unary(const sim::FrameRaster& raster, const geom::RigidMotion& cam_motion,
                             const geom::CameraIntrinsics& K, const geom::FlowCovariance& sigma,
                             double tau_moving);

// Joint unary over the product space: cost(l,m) = object(l) + motion(m) +
// lambda(l,m). Result is (W*H) x (L*2), column index l * 2 + m.
Eigen::MatrixXd joint_unary(const UnaryField& unary, const CompatibilityMatrix& lambda);

}  // namespace dynsfm::seg

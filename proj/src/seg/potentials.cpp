#include "dynsfm/seg/potentials.hpp"

#include <cmath>

#include "dynsfm/core/errors.hpp"

namespace dynsfm::seg {

double pairwise_object(const Eigen::Vector2d& pos_i, double app_i, const Eigen::Vector2d& pos_j,
                       double app_j, const PairwiseParams& params) {
  const double d2 = (pos_i - pos_j).squaredNorm();
  const double a2 = (app_i - app_j) * (app_i - app_j);
  const double spatial = params.w_spatial * std::exp(-d2 / (2.0 * params.theta_gamma * params.theta_gamma));
  const double bilateral =
      params.w_bilateral * std::exp(-d2 / (2.0 * params.theta_alpha * params.theta_alpha) -
                                    a2 / (2.0 * params.theta_beta * params.theta_beta));
  return spatial + bilateral;
}

double pairwise_motion(const Eigen::Vector2d& flow_i, bool has_flow_i,
                       const Eigen::Vector2d& flow_j, bool has_flow_j,
                       const PairwiseParams& params) {
  if (!has_flow_i || !has_flow_j) return 0.0;
  const double df = (flow_i - flow_j).norm();
  return params.w_motion * std::exp(-df / params.theta_flow);
}

PairwiseGraph build_pairwise_graph(const sim::FrameRaster& raster, const PairwiseParams& params) {
  PairwiseGraph graph;
  graph.width = raster.width;
  graph.height = raster.height;
  const int n = raster.width * raster.height;
  graph.neighbors.resize(static_cast<std::size_t>(n));
  graph.object_cost.resize(static_cast<std::size_t>(n));
  graph.motion_cost.resize(static_cast<std::size_t>(n));

  const int r = params.radius;
  const double r2 = static_cast<double>(r) * r;
  for (int row = 0; row < raster.height; ++row) {
    for (int col = 0; col < raster.width; ++col) {
      const int i = raster.index(col, row);
      const sim::RasterCell& ci = raster.cells[static_cast<std::size_t>(i)];
      const Eigen::Vector2d pos_i(static_cast<double>(col), static_cast<double>(row));
      // Emit each unordered pair once: scan strictly-later cells in the disc.
      for (int dr = 0; dr <= r; ++dr) {
        const int row_j = row + dr;
        if (row_j >= raster.height) break;
        const int dc_lo = (dr == 0) ? 1 : -r;
        for (int dc = dc_lo; dc <= r; ++dc) {
          const int col_j = col + dc;
          if (col_j < 0 || col_j >= raster.width) continue;
          if (static_cast<double>(dr) * dr + static_cast<double>(dc) * dc > r2) continue;
          const int j = raster.index(col_j, row_j);
          const sim::RasterCell& cj = raster.cells[static_cast<std::size_t>(j)];
          const Eigen::Vector2d pos_j(static_cast<double>(col_j), static_cast<double>(row_j));
          const double p = pairwise_object(pos_i, ci.appearance, pos_j, cj.appearance, params);
          const double g = pairwise_motion(ci.flow, ci.has_flow, cj.flow, cj.has_flow, params);
          graph.neighbors[static_cast<std::size_t>(i)].push_back(j);
          graph.object_cost[static_cast<std::size_t>(i)].push_back(p);
          graph.motion_cost[static_cast<std::size_t>(i)].push_back(g);
          graph.neighbors[static_cast<std::size_t>(j)].push_back(i);
          graph.object_cost[static_cast<std::size_t>(j)].push_back(p);
          graph.motion_cost[static_cast<std::size_t>(j)].push_back(g);
        }
      }
    }
  }
  return graph;
}

Eigen::MatrixXd motion_unary(const sim::FrameRaster& raster, const geom::RigidMotion& cam_motion,
                             const geom::CameraIntrinsics& K, const geom::FlowCovariance& sigma,
                             double tau_moving) {
  const Eigen::Matrix2d info = sigma.inverse_checked();
  const int n = raster.width * raster.height;
  Eigen::MatrixXd costs = Eigen::MatrixXd::Zero(n, kNumMotionClasses);
  for (int i = 0; i < n; ++i) {
    const sim::RasterCell& cell = raster.cells[static_cast<std::size_t>(i)];
    if (!cell.has_feature || !cell.has_flow || cell.depth <= 1e-9) continue;  // uninformative
    Eigen::Vector2d predicted;
    try {
      predicted = geom::predicted_flow(K, cam_motion, cell.pixel, cell.depth);
    } catch (const NonPositiveDepth&) {
      continue;
    }
    const Eigen::Vector2d residual = predicted - (cell.pixel + cell.flow);
    costs(i, kMotionStatic) = residual.dot(info * residual);
    costs(i, kMotionMoving) = tau_moving;
  }
  return costs;
}

Eigen::MatrixXd joint_unary(const UnaryField& unary, const CompatibilityMatrix& lambda) {
  const int n = static_cast<int>(unary.object_costs.rows());
  const int L = static_cast<int>(unary.object_costs.cols());
  if (unary.motion_costs.rows() != n || lambda.lambda.rows() != L) {
    throw ShapeMismatch("joint_unary: unary/lambda shapes disagree");
  }
  Eigen::MatrixXd joint(n, L * kNumMotionClasses);
  for (int l = 0; l < L; ++l) {
    for (int m = 0; m < kNumMotionClasses; ++m) {
      joint.col(l * kNumMotionClasses + m) =
          unary.object_costs.col(l) + unary.motion_costs.col(m) +
          Eigen::VectorXd::Constant(n, lambda.lambda(l, m));
    }
  }
  return joint;
}

}  // namespace dynsfm::seg

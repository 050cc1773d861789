#include "dynsfm/seg/mean_field.hpp"

#include <cmath>

#include "dynsfm/core/errors.hpp"

namespace dynsfm::seg {

namespace {

// Row-wise softmax of negated costs.
void softmax_rows(Eigen::MatrixXd& costs) {
  for (Eigen::Index i = 0; i < costs.rows(); ++i) {
    const double lo = costs.row(i).minCoeff();
    Eigen::ArrayXd p = (-(costs.row(i).array() - lo)).exp();
    costs.row(i) = p / p.sum();
  }
}

double max_tv_change(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    worst = std::max(worst, 0.5 * (a.row(i) - b.row(i)).cwiseAbs().sum());
  }
  return worst;
}

}  // namespace

MarginalFields mean_field_infer(const UnaryField& unary, const CompatibilityMatrix& lambda,
                                const PairwiseGraph& graph, int max_iters, double tol) {
  if (max_iters < 1) throw ConfigInvalid("max_iters");
  const int n = static_cast<int>(unary.object_costs.rows());
  const int L = static_cast<int>(unary.object_costs.cols());
  if (lambda.lambda.rows() != L) throw ShapeMismatch("lambda rows != object classes");
  if (static_cast<int>(graph.neighbors.size()) != n) throw ShapeMismatch("graph size != pixels");

  MarginalFields mf;
  mf.width = unary.width;
  mf.height = unary.height;
  mf.q_object = unary.object_costs;
  softmax_rows(mf.q_object);
  mf.q_motion = unary.motion_costs;
  softmax_rows(mf.q_motion);

  Eigen::MatrixXd cost_o(n, L);
  Eigen::MatrixXd cost_m(n, kNumMotionClasses);
  for (int iter = 0; iter < max_iters; ++iter) {
    // Both layers read the previous iterate.
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < L; ++l) {
        double c = unary.object_costs(i, l);
        for (int m = 0; m < kNumMotionClasses; ++m) c += mf.q_motion(i, m) * lambda.lambda(l, m);
        const auto& nbr = graph.neighbors[static_cast<std::size_t>(i)];
        const auto& pc = graph.object_cost[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < nbr.size(); ++k) {
          c += pc[k] * (1.0 - mf.q_object(nbr[k], l));
        }
        cost_o(i, l) = c;
      }
      for (int m = 0; m < kNumMotionClasses; ++m) {
        double c = unary.motion_costs(i, m);
        for (int l = 0; l < L; ++l) c += mf.q_object(i, l) * lambda.lambda(l, m);
        const auto& nbr = graph.neighbors[static_cast<std::size_t>(i)];
        const auto& gc = graph.motion_cost[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < nbr.size(); ++k) {
          c += gc[k] * (1.0 - mf.q_motion(nbr[k], m));
        }
        cost_m(i, m) = c;
      }
    }
    softmax_rows(cost_o);
    softmax_rows(cost_m);
    const double change = std::max(max_tv_change(cost_o, mf.q_object),
                                   max_tv_change(cost_m, mf.q_motion));
    mf.q_object.swap(cost_o);
    mf.q_motion.swap(cost_m);
    mf.iterations = iter + 1;
    if (change < tol) break;
  }
  return mf;
}

JointLabeling decode(const MarginalFields& marginals) {
  JointLabeling out;
  out.width = marginals.width;
  out.height = marginals.height;
  const int n = static_cast<int>(marginals.q_object.rows());
  out.object_class.resize(static_cast<std::size_t>(n));
  out.motion_class.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int best_l = 0;
    for (int l = 1; l < marginals.q_object.cols(); ++l) {
      if (marginals.q_object(i, l) > marginals.q_object(i, best_l)) best_l = l;
    }
    out.object_class[static_cast<std::size_t>(i)] = best_l;
    out.motion_class[static_cast<std::size_t>(i)] =
        marginals.q_motion(i, kMotionMoving) > marginals.q_motion(i, kMotionStatic)
            ? kMotionMoving
            : kMotionStatic;
  }
  return out;
}

double energy(const JointLabeling& labeling, const UnaryField& unary,
              const CompatibilityMatrix& lambda, const PairwiseGraph& graph) {
  const int n = static_cast<int>(unary.object_costs.rows());
  if (static_cast<int>(labeling.object_class.size()) != n) {
    throw ShapeMismatch("labeling size != pixels");
  }
  double e = 0.0;
  for (int i = 0; i < n; ++i) {
    const int l = labeling.object_class[static_cast<std::size_t>(i)];
    const int m = labeling.motion_class[static_cast<std::size_t>(i)];
    e += unary.object_costs(i, l) + unary.motion_costs(i, m) + lambda.lambda(l, m);
  }
  for (int i = 0; i < n; ++i) {
    const auto& nbr = graph.neighbors[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < nbr.size(); ++k) {
      const int j = nbr[k];
      if (j <= i) continue;  // count each unordered pair once
      if (labeling.object_class[static_cast<std::size_t>(i)] !=
          labeling.object_class[static_cast<std::size_t>(j)]) {
        e += graph.object_cost[static_cast<std::size_t>(i)][k];
      }
      if (labeling.motion_class[static_cast<std::size_t>(i)] !=
          labeling.motion_class[static_cast<std::size_t>(j)]) {
        e += graph.motion_cost[static_cast<std::size_t>(i)][k];
      }
    }
  }
  return e;
}

}  // namespace dynsfm::seg

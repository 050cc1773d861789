#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace dynsfm::seg {

// Motion layer is always binary.
enum MotionClass : int { kMotionStatic = 0, kMotionMoving = 1 };
inline constexpr int kNumMotionClasses = 2;

struct LabelSpace {
  std::vector<std::string> object_classes;

  int num_object_classes() const { return static_cast<int>(object_classes.size()); }
  bool is_valid() const { return object_classes.size() >= 2; }
};

// lambda(l, m): learnt object/motion correlation, entries in [-1, 1],
// added to the joint unary. Supplied via configuration.
struct CompatibilityMatrix {
  Eigen::MatrixX2d lambda;  // rows: object classes, cols: {static, moving}

  static CompatibilityMatrix zero(int num_classes) {
    CompatibilityMatrix c;
    c.lambda = Eigen::MatrixX2d::Zero(num_classes, 2);
    return c;
  }
  bool is_valid() const { return lambda.size() == 0 || lambda.cwiseAbs().maxCoeff() <= 1.0; }
};

// Per-pixel unary costs (nats). Rows are pixels in row-major raster order.
struct UnaryField {
  int width = 0;
  int height = 0;
  Eigen::MatrixXd object_costs;  // (W*H) x L
  Eigen::MatrixXd motion_costs;  // (W*H) x 2

  int num_pixels() const { return width * height; }
};

struct MarginalFields {
  int width = 0;
  int height = 0;
  Eigen::MatrixXd q_object;  // (W*H) x L, rows sum to 1
  Eigen::MatrixXd q_motion;  // (W*H) x 2, rows sum to 1
  int iterations = 0;        // mean-field sweeps actually run
};

struct JointLabeling {
  int width = 0;
  int height = 0;
  std::vector<int> object_class;  // per pixel
  std::vector<int> motion_class;  // per pixel
};

}  // namespace dynsfm::seg

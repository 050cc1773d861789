#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dynsfm/core/errors.hpp"
#include "dynsfm/core/rng.hpp"
#include "dynsfm/seg/mean_field.hpp"
#include "dynsfm/seg/potentials.hpp"

using namespace dynsfm;
using namespace dynsfm::seg;

namespace {

// Hand-built pairwise structure for oracle-sized instances.
PairwiseGraph make_graph(int n, const std::vector<std::tuple<int, int, double, double>>& edges) {
  PairwiseGraph g;
  g.width = n;
  g.height = 1;
  g.neighbors.resize(static_cast<std::size_t>(n));
  g.object_cost.resize(static_cast<std::size_t>(n));
  g.motion_cost.resize(static_cast<std::size_t>(n));
  for (const auto& [i, j, p, gm] : edges) {
    g.neighbors[static_cast<std::size_t>(i)].push_back(j);
    g.object_cost[static_cast<std::size_t>(i)].push_back(p);
    g.motion_cost[static_cast<std::size_t>(i)].push_back(gm);
    g.neighbors[static_cast<std::size_t>(j)].push_back(i);
    g.object_cost[static_cast<std::size_t>(j)].push_back(p);
    g.motion_cost[static_cast<std::size_t>(j)].push_back(gm);
  }
  return g;
}

UnaryField make_unary(const Eigen::MatrixXd& object, const Eigen::MatrixXd& motion) {
  UnaryField u;
  u.width = static_cast<int>(object.rows());
  u.height = 1;
  u.object_costs = object;
  u.motion_costs = motion;
  return u;
}

// Exact per-pixel marginals by enumerating every joint state of the
// product-space CRF; shares the energy definition with the implementation.
struct ExactMarginals {
  Eigen::MatrixXd object;
  Eigen::MatrixXd motion;
};

ExactMarginals enumerate_marginals(const UnaryField& unary, const CompatibilityMatrix& lambda,
                                   const PairwiseGraph& graph) {
  const int n = static_cast<int>(unary.object_costs.rows());
  const int L = static_cast<int>(unary.object_costs.cols());
  const int states_per_pixel = L * kNumMotionClasses;
  long total = 1;
  for (int i = 0; i < n; ++i) total *= states_per_pixel;

  ExactMarginals out;
  out.object = Eigen::MatrixXd::Zero(n, L);
  out.motion = Eigen::MatrixXd::Zero(n, kNumMotionClasses);

  JointLabeling labeling;
  labeling.width = unary.width;
  labeling.height = unary.height;
  labeling.object_class.resize(static_cast<std::size_t>(n));
  labeling.motion_class.resize(static_cast<std::size_t>(n));

  double z = 0.0;
  for (long s = 0; s < total; ++s) {
    long rem = s;
    for (int i = 0; i < n; ++i) {
      const int code = static_cast<int>(rem % states_per_pixel);
      rem /= states_per_pixel;
      labeling.object_class[static_cast<std::size_t>(i)] = code / kNumMotionClasses;
      labeling.motion_class[static_cast<std::size_t>(i)] = code % kNumMotionClasses;
    }
    const double w = std::exp(-energy(labeling, unary, lambda, graph));
    z += w;
    for (int i = 0; i < n; ++i) {
      out.object(i, labeling.object_class[static_cast<std::size_t>(i)]) += w;
      out.motion(i, labeling.motion_class[static_cast<std::size_t>(i)]) += w;
    }
  }
  out.object /= z;
  out.motion /= z;
  return out;
}

double max_tv(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    worst = std::max(worst, 0.5 * (a.row(i) - b.row(i)).cwiseAbs().sum());
  }
  return worst;
}

}  // namespace

TEST_CASE("motion_unary hand-computed Mahalanobis costs") {
  sim::FrameRaster raster;
  raster.width = 3;
  raster.height = 1;
  raster.cells.resize(3);
  for (int i = 0; i < 3; ++i) {
    auto& c = raster.cells[static_cast<std::size_t>(i)];
    c.has_feature = true;
    c.has_flow = true;
    c.track_id = i;
    c.pixel = Eigen::Vector2d(100.0 + i, 120.0);
    c.depth = 8.0;
  }
  // With identity camera motion the prediction equals the pixel, so the
  // residual is exactly -flow; choose flows to realize target residuals.
  raster.cells[0].flow = Eigen::Vector2d(0.0, 0.0);    // residual (0,0)
  raster.cells[1].flow = Eigen::Vector2d(-1.0, 0.0);   // residual (1,0)
  raster.cells[2].flow = Eigen::Vector2d(-3.0, -4.0);  // residual (3,4)

  geom::CameraIntrinsics K{300.0, 300.0, 320.0, 240.0};

  geom::FlowCovariance identity_cov = geom::FlowCovariance::isotropic(1.0);
  Eigen::MatrixXd costs = motion_unary(raster, geom::RigidMotion::identity(), K, identity_cov, 4.0);
  CHECK(costs(0, kMotionStatic) == doctest::Approx(0.0));
  CHECK(costs(1, kMotionStatic) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(costs(0, kMotionMoving) == doctest::Approx(4.0));

  geom::FlowCovariance aniso;
  aniso.sigma << 1.0, 0.0, 0.0, 4.0;
  costs = motion_unary(raster, geom::RigidMotion::identity(), K, aniso, 4.0);
  CHECK(costs(2, kMotionStatic) == doctest::Approx(13.0).epsilon(1e-9));

  // A cell without flow stays uninformative.
  raster.cells[0].has_flow = false;
  costs = motion_unary(raster, geom::RigidMotion::identity(), K, identity_cov, 4.0);
  CHECK(costs(0, kMotionStatic) == 0.0);
  CHECK(costs(0, kMotionMoving) == 0.0);

  geom::FlowCovariance singular;
  singular.sigma << 1.0, 1.0, 1.0, 1.0;
  CHECK_THROWS_AS(motion_unary(raster, geom::RigidMotion::identity(), K, singular, 4.0),
                  SingularCovariance);
}

TEST_CASE("motion_unary is invariant under joint rotation of residual and covariance") {
  const Eigen::Vector2d residual(1.7, -0.6);
  Eigen::Matrix2d sigma;
  sigma << 2.0, 0.3, 0.3, 1.1;
  const double base = residual.dot(sigma.inverse() * residual);
  for (double angle : {0.3, 1.2, 2.9}) {
    Eigen::Matrix2d rot;
    rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    const Eigen::Vector2d r2 = rot * residual;
    const Eigen::Matrix2d s2 = rot * sigma * rot.transpose();
    CHECK(r2.dot(s2.inverse() * r2) == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("joint_unary composes unaries and the compatibility table") {
  Eigen::MatrixXd object(1, 2);
  object << 0.4, 1.3;
  Eigen::MatrixXd motion(1, 2);
  motion << 0.2, 0.9;
  UnaryField u = make_unary(object, motion);

  SUBCASE("zero lambda sums the marginal unaries") {
    const Eigen::MatrixXd j = joint_unary(u, CompatibilityMatrix::zero(2));
    // Columns are l*2+m; brute-force the 4 sums.
    for (int l = 0; l < 2; ++l) {
      for (int m = 0; m < 2; ++m) {
        CHECK(j(0, l * 2 + m) == doctest::Approx(object(0, l) + motion(0, m)));
      }
    }
  }

  SUBCASE("a single negative lambda entry wins with flat unaries") {
    UnaryField flat = make_unary(Eigen::MatrixXd::Zero(1, 2), Eigen::MatrixXd::Zero(1, 2));
    CompatibilityMatrix lam = CompatibilityMatrix::zero(2);
    lam.lambda(1, kMotionMoving) = -1.0;  // (car, moving)
    const Eigen::MatrixXd j = joint_unary(flat, lam);
    Eigen::Index argmin;
    j.row(0).minCoeff(&argmin);
    CHECK(static_cast<int>(argmin) == 1 * 2 + kMotionMoving);
  }

  SUBCASE("shape mismatch throws") {
    CHECK_THROWS_AS(joint_unary(u, CompatibilityMatrix::zero(3)), ShapeMismatch);
  }
}

TEST_CASE("pairwise kernels at their extremes") {
  PairwiseParams params;
  params.w_spatial = 0.3;
  params.w_bilateral = 0.5;
  params.w_motion = 0.7;
  params.theta_flow = 4.0;

  // Coincident cells, identical appearance: both kernels peak.
  CHECK(pairwise_object({3, 4}, 9.0, {3, 4}, 9.0, params) ==
        doctest::Approx(params.w_spatial + params.w_bilateral).epsilon(1e-12));
  // Far apart: the cost decays below 1e-12.
  CHECK(pairwise_object({0, 0}, 9.0, {4000, 0}, 9.0, params) < 1e-12);

  // Identical flows: maximum disagreement penalty.
  CHECK(pairwise_motion({2, 1}, true, {2, 1}, true, params) == doctest::Approx(params.w_motion));
  // Flow difference of exactly theta_flow: one e-fold down.
  CHECK(pairwise_motion({0, 0}, true, {4, 0}, true, params) ==
        doctest::Approx(params.w_motion * std::exp(-1.0)).epsilon(1e-12));
  // Missing flow on either side disables the term.
  CHECK(pairwise_motion({0, 0}, false, {4, 0}, true, params) == 0.0);
}

TEST_CASE("decoupled CRF: marginals are the softmax of negated unaries after one sweep") {
  Rng rng(5);
  Eigen::MatrixXd object(6, 3);
  Eigen::MatrixXd motion(6, 2);
  for (int i = 0; i < 6; ++i) {
    for (int l = 0; l < 3; ++l) object(i, l) = rng.uniform(0.0, 3.0);
    for (int m = 0; m < 2; ++m) motion(i, m) = rng.uniform(0.0, 3.0);
  }
  UnaryField u = make_unary(object, motion);
  PairwiseGraph g = make_graph(6, {});  // no edges at all

  const MarginalFields mf = mean_field_infer(u, CompatibilityMatrix::zero(3), g, 50, 1e-12);
  CHECK(mf.iterations <= 2);  // first sweep is already the fixed point
  for (int i = 0; i < 6; ++i) {
    Eigen::ArrayXd expect = (-(object.row(i).array() - object.row(i).minCoeff())).exp();
    expect /= expect.sum();
    CHECK(max_tv(mf.q_object.row(i), expect.matrix().transpose()) < 1e-12);

    // Decode agrees with the per-pixel unary argmin.
    Eigen::Index argmin;
    object.row(i).minCoeff(&argmin);
    const JointLabeling lab = decode(mf);
    CHECK(lab.object_class[static_cast<std::size_t>(i)] == static_cast<int>(argmin));
  }
}

TEST_CASE("uniform unaries and symmetric pairwise keep uniform marginals") {
  UnaryField u = make_unary(Eigen::MatrixXd::Zero(4, 3), Eigen::MatrixXd::Zero(4, 2));
  PairwiseGraph g = make_graph(4, {{0, 1, 0.4, 0.2}, {1, 2, 0.4, 0.2}, {2, 3, 0.4, 0.2}});
  const MarginalFields mf = mean_field_infer(u, CompatibilityMatrix::zero(3), g, 30, 1e-12);
  for (int i = 0; i < 4; ++i) {
    for (int l = 0; l < 3; ++l) CHECK(mf.q_object(i, l) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    for (int m = 0; m < 2; ++m) CHECK(mf.q_motion(i, m) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("mean field tracks exact marginals at weak coupling (enumeration oracle)") {
  Rng rng(77);
  for (double weight : {0.02, 0.05, 0.1}) {
    for (int instance = 0; instance < 4; ++instance) {
      // 2-pixel chain over 2 object classes.
      Eigen::MatrixXd object(2, 2), motion(2, 2);
      for (int i = 0; i < 2; ++i) {
        object(i, 0) = rng.uniform(0.0, 2.0);
        object(i, 1) = rng.uniform(0.0, 2.0);
        motion(i, 0) = rng.uniform(0.0, 2.0);
        motion(i, 1) = rng.uniform(0.0, 2.0);
      }
      UnaryField u = make_unary(object, motion);
      CompatibilityMatrix lam = CompatibilityMatrix::zero(2);
      lam.lambda << -0.3, 0.3, 0.2, -0.2;
      PairwiseGraph g = make_graph(2, {{0, 1, weight, weight}});

      const ExactMarginals exact = enumerate_marginals(u, lam, g);
      const MarginalFields mf = mean_field_infer(u, lam, g, 500, 1e-13);
      CHECK(max_tv(mf.q_object, exact.object) < 1e-3);
      CHECK(max_tv(mf.q_motion, exact.motion) < 1e-3);
    }
  }
}

TEST_CASE("2x2 instance: decode matches the exact MAP in the weak-coupling regime") {
  Rng rng(91);
  for (int instance = 0; instance < 5; ++instance) {
    // 4 pixels in a ring, unary margins > 1 nat, pairwise weight < 0.1.
    Eigen::MatrixXd object(4, 2), motion(4, 2);
    for (int i = 0; i < 4; ++i) {
      const int ol = static_cast<int>(rng.uniform_int(2));
      object(i, ol) = 0.0;
      object(i, 1 - ol) = rng.uniform(1.1, 2.5);
      const int ml = static_cast<int>(rng.uniform_int(2));
      motion(i, ml) = 0.0;
      motion(i, 1 - ml) = rng.uniform(1.1, 2.5);
    }
    UnaryField u = make_unary(object, motion);
    const CompatibilityMatrix lam = CompatibilityMatrix::zero(2);
    PairwiseGraph g = make_graph(
        4, {{0, 1, 0.09, 0.09}, {1, 3, 0.09, 0.09}, {3, 2, 0.09, 0.09}, {2, 0, 0.09, 0.09}});

    // Exact MAP by enumeration.
    JointLabeling best;
    best.width = 4;
    best.height = 1;
    best.object_class.resize(4);
    best.motion_class.resize(4);
    double best_e = 1e300;
    JointLabeling lab = best;
    for (int s = 0; s < 256; ++s) {
      int rem = s;
      for (int i = 0; i < 4; ++i) {
        const int code = rem % 4;
        rem /= 4;
        lab.object_class[static_cast<std::size_t>(i)] = code / 2;
        lab.motion_class[static_cast<std::size_t>(i)] = code % 2;
      }
      const double e = energy(lab, u, lam, g);
      if (e < best_e) {
        best_e = e;
        best = lab;
      }
    }

    const MarginalFields mf = mean_field_infer(u, lam, g, 200, 1e-12);
    const JointLabeling decoded = decode(mf);
    CHECK(decoded.object_class == best.object_class);
    CHECK(decoded.motion_class == best.motion_class);
  }
}

TEST_CASE("decode tie-breaks to the lowest index") {
  MarginalFields mf;
  mf.width = 1;
  mf.height = 1;
  mf.q_object = Eigen::MatrixXd::Constant(1, 2, 0.5);
  mf.q_motion = Eigen::MatrixXd::Constant(1, 2, 0.5);
  const JointLabeling lab = decode(mf);
  CHECK(lab.object_class[0] == 0);
  CHECK(lab.motion_class[0] == kMotionStatic);

  MarginalFields onehot;
  onehot.width = 1;
  onehot.height = 1;
  onehot.q_object = Eigen::MatrixXd::Zero(1, 3);
  onehot.q_object(0, 2) = 1.0;
  onehot.q_motion = Eigen::MatrixXd::Zero(1, 2);
  onehot.q_motion(0, 1) = 1.0;
  const JointLabeling lab2 = decode(onehot);
  CHECK(lab2.object_class[0] == 2);
  CHECK(lab2.motion_class[0] == kMotionMoving);
}

TEST_CASE("marginals stay normalized across iterations") {
  Rng rng(31);
  Eigen::MatrixXd object(9, 3), motion(9, 2);
  for (int i = 0; i < 9; ++i) {
    for (int l = 0; l < 3; ++l) object(i, l) = rng.uniform(0.0, 4.0);
    for (int m = 0; m < 2; ++m) motion(i, m) = rng.uniform(0.0, 4.0);
  }
  UnaryField u = make_unary(object, motion);
  std::vector<std::tuple<int, int, double, double>> edges;
  for (int i = 0; i + 1 < 9; ++i) edges.emplace_back(i, i + 1, 0.5, 0.4);
  PairwiseGraph g = make_graph(9, edges);

  for (int iters = 1; iters <= 6; ++iters) {
    const MarginalFields mf = mean_field_infer(u, CompatibilityMatrix::zero(3), g, iters, 0.0);
    for (int i = 0; i < 9; ++i) {
      CHECK(mf.q_object.row(i).sum() == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(mf.q_motion.row(i).sum() == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(mf.q_object.row(i).minCoeff() >= 0.0);
    }
  }
}

TEST_CASE("energy: zero potentials, hand summation, and decoded vs random labelings") {
  SUBCASE("all-zero potentials give zero energy") {
    UnaryField u = make_unary(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2));
    PairwiseGraph g = make_graph(2, {{0, 1, 0.0, 0.0}});
    JointLabeling lab;
    lab.width = 2;
    lab.height = 1;
    lab.object_class = {0, 1};
    lab.motion_class = {1, 0};
    CHECK(energy(lab, u, CompatibilityMatrix::zero(2), g) == 0.0);
  }

  SUBCASE("2-pixel hand sum") {
    Eigen::MatrixXd object(2, 2), motion(2, 2);
    object << 0.5, 1.0, 0.25, 2.0;
    motion << 0.1, 0.3, 0.7, 0.2;
    UnaryField u = make_unary(object, motion);
    CompatibilityMatrix lam = CompatibilityMatrix::zero(2);
    lam.lambda << -0.4, 0.4, 0.1, -0.1;
    PairwiseGraph g = make_graph(2, {{0, 1, 0.6, 0.9}});

    JointLabeling lab;
    lab.width = 2;
    lab.height = 1;
    lab.object_class = {0, 1};  // disagree -> 0.6
    lab.motion_class = {1, 1};  // agree -> 0
    const double expected = (0.5 + 0.3 + lam.lambda(0, 1)) + (2.0 + 0.2 + lam.lambda(1, 1)) + 0.6;
    CHECK(energy(lab, u, lam, g) == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("decoded labeling beats seeded random labelings on a 16x16 instance") {
    Rng rng(123);
    const int n = 256;
    Eigen::MatrixXd object(n, 3), motion(n, 2);
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < 3; ++l) object(i, l) = rng.uniform(0.0, 3.0);
      for (int m = 0; m < 2; ++m) motion(i, m) = rng.uniform(0.0, 3.0);
    }
    UnaryField u = make_unary(object, motion);
    u.width = 16;
    u.height = 16;
    std::vector<std::tuple<int, int, double, double>> edges;
    for (int r = 0; r < 16; ++r) {
      for (int c = 0; c < 16; ++c) {
        const int i = r * 16 + c;
        if (c + 1 < 16) edges.emplace_back(i, i + 1, 0.3, 0.3);
        if (r + 1 < 16) edges.emplace_back(i, i + 16, 0.3, 0.3);
      }
    }
    PairwiseGraph g = make_graph(n, edges);
    CompatibilityMatrix lam = CompatibilityMatrix::zero(3);
    lam.lambda << -0.5, 0.5, 0.2, -0.2, -0.8, 0.8;

    const MarginalFields mf = mean_field_infer(u, lam, g, 50, 1e-9);
    const JointLabeling decoded = decode(mf);
    const double e0 = energy(decoded, u, lam, g);

    JointLabeling random_lab = decoded;
    for (int trial = 0; trial < 100; ++trial) {
      for (int i = 0; i < n; ++i) {
        random_lab.object_class[static_cast<std::size_t>(i)] = static_cast<int>(rng.uniform_int(3));
        random_lab.motion_class[static_cast<std::size_t>(i)] = static_cast<int>(rng.uniform_int(2));
      }
      CHECK(e0 <= energy(random_lab, u, lam, g));
    }
  }
}

TEST_CASE("raising lambda(class, moving) never adds moving pixels of that class") {
  Rng rng(55);
  for (int instance = 0; instance < 5; ++instance) {
    const int n = 64;
    Eigen::MatrixXd object(n, 2), motion(n, 2);
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < 2; ++l) object(i, l) = rng.uniform(0.0, 2.0);
      for (int m = 0; m < 2; ++m) motion(i, m) = rng.uniform(0.0, 2.0);
    }
    UnaryField u = make_unary(object, motion);
    u.width = 8;
    u.height = 8;
    std::vector<std::tuple<int, int, double, double>> edges;
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) {
        const int i = r * 8 + c;
        if (c + 1 < 8) edges.emplace_back(i, i + 1, 0.08, 0.08);
        if (r + 1 < 8) edges.emplace_back(i, i + 8, 0.08, 0.08);
      }
    }
    PairwiseGraph g = make_graph(n, edges);

    const auto count_moving_of_class1 = [&](double lam_val) {
      CompatibilityMatrix lam = CompatibilityMatrix::zero(2);
      lam.lambda(1, kMotionMoving) = lam_val;
      const JointLabeling lab = decode(mean_field_infer(u, lam, g, 100, 1e-10));
      int count = 0;
      for (int i = 0; i < n; ++i) {
        count += lab.object_class[static_cast<std::size_t>(i)] == 1 &&
                 lab.motion_class[static_cast<std::size_t>(i)] == kMotionMoving;
      }
      return count;
    };

    int prev = count_moving_of_class1(-0.8);
    for (double v : {-0.4, 0.0, 0.4, 0.8}) {
      const int now = count_moving_of_class1(v);
      CHECK(now <= prev);
      prev = now;
    }
  }
}

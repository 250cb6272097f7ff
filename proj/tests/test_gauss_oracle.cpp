#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "helpernet/channel_joints.hpp"
#include "helpernet/gauss_oracle.hpp"

using namespace helpernet;

namespace {

JointGaussian<double> scalar(double var) {
  Eigen::MatrixXd c(1, 1);
  c << var;
  return JointGaussian<double>({"X"}, c);
}

JointGaussian<double> awgn(double p) {
  return GaussianModelBuilder<double>().source("X", p).source("N", 1).combine("Y", {{"X", 1}, {"N", 1}}).build();
}

Eigen::MatrixXd random_psd(std::mt19937_64& rng, int n, int rank) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXd a(n, rank);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < rank; ++j) a(i, j) = nd(rng);
  }
  return a * a.transpose();
}

}  // namespace

TEST_CASE("differential entropy of scalars") {
  CHECK(diff_entropy(scalar(1.0), {"X"}) == doctest::Approx(2.0470955851806411).epsilon(1e-14));
  CHECK(diff_entropy(scalar(4.0), {"X"}) == doctest::Approx(3.0470955851806411).epsilon(1e-14));

  const auto two = GaussianModelBuilder<double>().source("A", 1).source("B", 1).build();
  CHECK(diff_entropy(two, {"A", "B"}) == doctest::Approx(4.0941911703612822).epsilon(1e-14));
}

TEST_CASE("differential entropy of a singular set is -inf") {
  const auto g = GaussianModelBuilder<double>().source("A", 2).combine("B", {{"A", 3}}).build();
  CHECK(diff_entropy(g, {"A", "B"}) == -std::numeric_limits<double>::infinity());
  CHECK(diff_entropy(scalar(0.0), {"X"}) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("joint gaussian rejects malformed input") {
  Eigen::MatrixXd c(2, 2);
  c << 1, 0.5, 0.4, 1;
  CHECK_THROWS_AS(JointGaussian<double>({"A", "B"}, c), InvalidArgument);
  c << 1, 2, 2, 1;  // eigenvalues 3 and -1
  CHECK_THROWS_AS(JointGaussian<double>({"A", "B"}, c), NumericalError);
  c << -1, 0, 0, 1;
  CHECK_THROWS_AS(JointGaussian<double>({"A", "B"}, c), InvalidArgument);
  c << 1, 0, 0, 1;
  CHECK_THROWS_AS(JointGaussian<double>({"A", "A"}, c), InvalidArgument);
  CHECK_THROWS_AS(JointGaussian<double>({"A"}, c), InvalidArgument);

  const JointGaussian<double> g({"A", "B"}, c);
  CHECK_THROWS_AS(diff_entropy(g, {"Z"}), InvalidArgument);
  CHECK_THROWS_AS(mutual_info(g, {"A"}, {"A"}), InvalidArgument);
  CHECK_THROWS_AS(mutual_info(g, {"A"}, {}), InvalidArgument);
  CHECK_THROWS_AS(cond_mutual_info(g, {"A"}, {"B"}, {"B"}), InvalidArgument);
}

TEST_CASE("tiny negative eigenvalues within tolerance are accepted") {
  Eigen::MatrixXd c(2, 2);
  c << 1, 1 + 1e-10, 1 + 1e-10, 1;
  const JointGaussian<double> g({"A", "B"}, c);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.cov());
  CHECK(eig.eigenvalues().minCoeff() >= -1e-15);
}

TEST_CASE("mutual information basics") {
  CHECK(mutual_info(awgn(3.0), {"X"}, {"Y"}) == doctest::Approx(1.0).epsilon(1e-14));
  const auto ind = GaussianModelBuilder<double>().source("X", 2).source("Y", 5).build();
  CHECK(mutual_info(ind, {"X"}, {"Y"}) == 0.0);

  const auto g = awgn(3.0);
  CHECK(cond_mutual_info(g, {"X"}, {"Y"}, {}) == mutual_info(g, {"X"}, {"Y"}));

  // A - C - B with B = C
  const auto m = GaussianModelBuilder<double>()
                     .source("A", 1)
                     .source("Z", 1)
                     .combine("C", {{"A", 1}, {"Z", 1}})
                     .combine("B", {{"C", 1}})
                     .build();
  CHECK(cond_mutual_info(m, {"A"}, {"B"}, {"C"}) == 0.0);
}

TEST_CASE("deterministic relation gives infinite information") {
  const auto g = GaussianModelBuilder<double>().source("A", 1).combine("B", {{"A", 2}}).build();
  CHECK(std::isinf(mutual_info(g, {"A"}, {"B"})));
}

TEST_CASE("model I joint reproduces the layered rate") {
  const auto powers = PowerConfig(1.5, {3.0}, {StatePower::finite(1e8)});
  const model1::Params params{0.75 / 1.75, 0.5, 1.75};
  const auto g = build_model1_joint(powers, params, 1e8);
  CHECK(std::abs(cond_mutual_info(g, {"X1"}, {"Y1"}, {"U"}) - 0.403677461028802054) < 1e-6);
}

TEST_CASE("model II joint: full cancellation for receiver 2") {
  const auto powers = PowerConfig(1.0, {2.0, 1.0}, {StatePower::finite(1e8), StatePower::finite(1e8)});
  model2::Params params;
  params.p00 = 0.25;
  params.p01 = 0.75;
  params.alpha = 1.0;
  params.beta = 1.0;
  const auto g = build_model2_joint(powers, params, 1e8, model2::HelperMode::Dedicated);
  CHECK(cond_mutual_info(g, {"X2"}, {"Y2"}, {"V"}) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("model I joint covariance structure") {
  const auto powers = PowerConfig(1.5, {1.0}, {StatePower::finite(100)});
  // the own-message layer X0p vanishes when all helper power assists
  auto g = build_model1_joint(powers, {0.5, 1.0, 1.0}, 100);
  CHECK(g.variance("X0p") == 0.0);
  CHECK(g.variance("X0pp") == doctest::Approx(1.5));
  CHECK(g.variance("Y1") == doctest::Approx(103.5).epsilon(1e-14));

  g = build_model1_joint(powers, {0.0, 0.3, 1.0}, 100);
  CHECK(g.covariance("U", "S1") == 0.0);

  CHECK_THROWS_AS(build_model1_joint(powers, {0.5, 1.2, 1.0}, 100), InvalidArgument);
  CHECK_THROWS_AS(build_model1_joint(powers, {-0.1, 0.5, 1.0}, 100), InvalidArgument);
  CHECK_THROWS_AS(build_model1_joint(powers, {0.5, 0.5, 1.5}, 100), InvalidArgument);
  CHECK_THROWS_AS(build_model1_joint(powers, {0.5, 0.5, 1.0}, 0.0), InvalidArgument);
}

TEST_CASE("model II joint covariance structure") {
  const auto powers = PowerConfig(1.0, {2.0, 1.0}, {StatePower::finite(1e4), StatePower::finite(1e4)});
  model2::Params params;
  params.p00 = 1.0;
  params.beta = 0.7;
  auto g = build_model2_joint(powers, params, 1e4, model2::HelperMode::Dedicated);
  CHECK(g.variance("V") == doctest::Approx(0.49));

  params.beta = 0.0;
  g = build_model2_joint(powers, params, 1e4, model2::HelperMode::Dedicated);
  CHECK(g.covariance("V", "X00") == 0.0);

  params = {};
  params.p00 = 0.25;
  params.p01 = 0.75;
  params.alpha = 1.0;
  g = build_model2_joint(powers, params, 1e4, model2::HelperMode::Dedicated);
  CHECK(g.covariance("U", "S1") == doctest::Approx(1e4));

  params.p02 = 0.1;
  CHECK_THROWS_AS(build_model2_joint(powers, params, 1e4, model2::HelperMode::Dedicated), InvalidArgument);
  params.p02 = 0.0;
  params.p00 = 0.5;
  CHECK_THROWS_AS(build_model2_joint(powers, params, 1e4, model2::HelperMode::Dedicated), InvalidArgument);
  params.p00 = -0.1;
  CHECK_THROWS_AS(build_model2_joint(powers, params, 1e4, model2::HelperMode::Dedicated), InvalidArgument);

  model2::Params full;
  full.p00 = 0.2;
  full.p01 = 0.3;
  full.p02 = 0.5;
  full.beta = 0.5;
  g = build_model2_joint(powers, full, 1e4, model2::HelperMode::WithMessage);
  CHECK(g.variance("X0") == doctest::Approx(1.0));
  CHECK(g.covariance("V", "X00") == doctest::Approx(0.1));
}

TEST_CASE("chain rule on random covariances") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const Eigen::MatrixXd cov = random_psd(rng, 6, 6 + trial % 3) + 0.05 * Eigen::MatrixXd::Identity(6, 6);
    const JointGaussian<double> g({"A1", "A2", "B1", "B2", "C1", "C2"}, cov);
    const LabelSet a{"A1", "A2"};
    const LabelSet b{"B1", "B2"};
    const LabelSet c{"C1", "C2"};
    const double joint = mutual_info(g, a, {"B1", "B2", "C1", "C2"});
    CHECK(std::abs(joint - mutual_info(g, a, c) - cond_mutual_info(g, a, b, c)) < 1e-9);
  }
}

TEST_CASE("chain rule with an exact deterministic relation") {
  const auto g = GaussianModelBuilder<double>()
                     .source("B", 1.3)
                     .source("C", 0.7)
                     .combine("A", {{"B", 1}, {"C", 2}})
                     .build();
  CHECK(std::isinf(mutual_info(g, {"A"}, {"B", "C"})));
  CHECK(std::isinf(mutual_info(g, {"A"}, {"C"}) + cond_mutual_info(g, {"A"}, {"B"}, {"C"})));
}

TEST_CASE("mutual information vanishes exactly for zero cross covariance") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(4, 4);
    c.topLeftCorner(2, 2) = random_psd(rng, 2, 3);
    c.bottomRightCorner(2, 2) = random_psd(rng, 2, 3);
    const JointGaussian<double> blocks({"A1", "A2", "B1", "B2"}, c);
    CHECK(mutual_info(blocks, {"A1", "A2"}, {"B1", "B2"}) == 0.0);

    const JointGaussian<double> mixed({"A1", "A2", "B1", "B2"}, random_psd(rng, 4, 4));
    const double v = mutual_info(mixed, {"A1", "A2"}, {"B1", "B2"});
    CHECK(v > 0.0);
  }
}

TEST_CASE("extended precision scalar agrees with double") {
  const auto powers = PowerConfig(2.0, {1.5}, {StatePower::finite(1e6)});
  const model1::Params params{0.4, 0.6, 1.5};
  const auto gd = build_model1_joint<double>(powers, params, 1e6);
  const auto gl = build_model1_joint<long double>(powers, params, 1e6);
  const double d = cond_mutual_info(gd, {"X1"}, {"Y1"}, {"U"});
  const long double l = cond_mutual_info(gl, {"X1"}, {"Y1"}, {"U"});
  CHECK(std::abs(d - static_cast<double>(l)) < 1e-9);
}

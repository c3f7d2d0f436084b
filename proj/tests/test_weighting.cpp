// Copyright 2026 The densiscore authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "densiscore/weighting.hpp"
#include "test_util.hpp"

using namespace densiscore;

namespace {

// A histogram model whose densities at the three anchor midpoints are
// exactly 0.5, 0.25, 0.25 (unit-width bins).
DensityModel step_model() {
  return DensityModel::histogram({0.0, 1.0, 2.0, 3.0}, {0.5, 0.25, 0.25});
}

Eigen::MatrixXd anchors3() {
  Eigen::MatrixXd a(3, 1);
  a << 0.5, 1.5, 2.5;
  return a;
}

DensityModel small_kde(unsigned seed, int n) {
  auto gen = testutil::rng(seed);
  Eigen::MatrixXd pts(n, 1);
  pts.col(0) = testutil::normal_vec(gen, n);
  return fit(DataSample(std::move(pts)), BandwidthMethod::scott);
}

}  // namespace

TEST_CASE("inverse-density weights with uniform target are reciprocals") {
  const DensityModel model = step_model();
  const WeightVector w = inverse_density_weights(model, anchors3(), Anchor::y);
  CHECK(w.weights(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(w.weights(1) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(w.weights(2) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(w.anchor == Anchor::y);
  CHECK_FALSE(w.floor_applied);
}

TEST_CASE("target equal to the fitted density cancels to unit weights") {
  const DensityModel model = small_kde(7, 150);
  Eigen::MatrixXd anchors(40, 1);
  anchors.col(0) = Eigen::VectorXd::LinSpaced(40, -2.0, 2.0);
  const WeightVector w = inverse_density_weights(model, anchors, Anchor::x, &model);
  for (int i = 0; i < 40; ++i) CHECK(testutil::rel_diff(w.weights(i), 1.0) < 1e-12);
}

TEST_CASE("effective sample size equals n for uniform weights") {
  const WeightVector u = uniform_weights(17);
  CHECK(u.effective_sample_size == doctest::Approx(17.0).epsilon(1e-14));
  CHECK(u.anchor == Anchor::uniform);
  Eigen::VectorXd w(3);
  w << 1.0, 1.0, 2.0;  // ESS = 16/6
  CHECK(effective_sample_size(w) == doctest::Approx(16.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("raising the floor ratio never increases the weight spread") {
  const DensityModel model = small_kde(17, 200);
  auto gen = testutil::rng(18);
  Eigen::MatrixXd anchors(100, 1);
  anchors.col(0) = testutil::uniform_vec(gen, 100, -3.5, 3.5);
  double prev_ratio = std::numeric_limits<double>::infinity();
  for (double floor_ratio : {0.0, 1e-3, 1e-2, 0.1, 0.9}) {
    const WeightVector w =
        inverse_density_weights(model, anchors, Anchor::x, nullptr, floor_ratio);
    const double ratio = w.weights.maxCoeff() / w.weights.minCoeff();
    CHECK(ratio <= prev_ratio * (1.0 + 1e-12));
    prev_ratio = ratio;
  }
}

TEST_CASE("floor_applied reflects whether the floor changed any weight") {
  const DensityModel model = small_kde(19, 200);
  Eigen::MatrixXd far(2, 1);
  far << 0.0, 50.0;  // density underflows to 0 at 50 under the truncated kernel
  CHECK_THROWS_AS(inverse_density_weights(model, far, Anchor::x), NonFiniteWeight);
  const WeightVector w = inverse_density_weights(model, far, Anchor::x, nullptr, 1e-6);
  CHECK(w.floor_applied);
  CHECK(std::isfinite(w.weights(1)));
  CHECK(w.weights(1) > 0.0);
}

TEST_CASE("weights are reported unnormalized") {
  // Doubling every bin width halves all densities and doubles all weights.
  const DensityModel model = step_model();
  const DensityModel wide =
      DensityModel::histogram({0.0, 2.0, 4.0, 6.0}, {0.5, 0.25, 0.25});
  Eigen::MatrixXd a(3, 1);
  a << 1.0, 3.0, 5.0;
  const WeightVector w1 = inverse_density_weights(model, anchors3(), Anchor::y);
  const WeightVector w2 = inverse_density_weights(wide, a, Anchor::y);
  for (int i = 0; i < 3; ++i)
    CHECK(w2.weights(i) == doctest::Approx(2.0 * w1.weights(i)).epsilon(1e-14));
}

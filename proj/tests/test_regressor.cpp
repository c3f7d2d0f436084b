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

#include "densiscore/kernels.hpp"
#include "densiscore/regressor.hpp"
#include "test_util.hpp"

using namespace densiscore;

namespace {

Eigen::MatrixXd column(const Eigen::VectorXd& v) {
  Eigen::MatrixXd m(v.size(), 1);
  m.col(0) = v;
  return m;
}

}  // namespace

TEST_CASE("predictions are the kernel expansion of the dual coefficients") {
  auto gen = testutil::rng(3);
  const Eigen::MatrixXd x = column(testutil::uniform_vec(gen, 40, -2.0, 2.0));
  const Eigen::VectorXd y = x.col(0).array().sin();
  const KernelRidgeModel model = krr_fit(x, y, 2.0, 0.5);
  const Eigen::MatrixXd q = column(Eigen::VectorXd::LinSpaced(15, -2.0, 2.0));
  const Eigen::VectorXd pred = krr_predict(model, q);
  for (int i = 0; i < q.rows(); ++i) {
    double expected = 0.0;
    for (int j = 0; j < x.rows(); ++j) {
      const double dsq = (q(i, 0) - x(j, 0)) * (q(i, 0) - x(j, 0));
      expected += model.alpha(j) * std::exp(-2.0 * dsq);
    }
    CHECK(testutil::rel_diff(pred(i), expected) < 1e-12);
  }
}

TEST_CASE("alpha solves (K + lambda I) alpha = y") {
  auto gen = testutil::rng(5);
  const Eigen::MatrixXd x = column(testutil::normal_vec(gen, 30));
  const Eigen::VectorXd y = testutil::normal_vec(gen, 30);
  const double lambda = 0.1;
  const KernelRidgeModel model = krr_fit(x, y, 10.0, lambda);
  const Eigen::MatrixXd k = kernels::rbf_gram(x, x, 10.0);
  const Eigen::VectorXd residual =
      (k + lambda * Eigen::MatrixXd::Identity(30, 30)) * model.alpha - y;
  CHECK(residual.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("tiny lambda nearly interpolates the training targets") {
  auto gen = testutil::rng(7);
  const Eigen::MatrixXd x = column(Eigen::VectorXd::LinSpaced(25, -2.0, 2.0));
  const Eigen::VectorXd y = 2.0 * x.col(0);
  const KernelRidgeModel model = krr_fit(x, y, 10.0, 1e-10);
  const Eigen::VectorXd pred = krr_predict(model, x);
  CHECK((pred - y).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("large lambda shrinks predictions toward zero") {
  auto gen = testutil::rng(9);
  const Eigen::MatrixXd x = column(testutil::uniform_vec(gen, 50, -1.0, 1.0));
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(50, 5.0);
  const Eigen::VectorXd small = krr_predict(krr_fit(x, y, 10.0, 1e-6), x);
  const Eigen::VectorXd big = krr_predict(krr_fit(x, y, 10.0, 1e4), x);
  CHECK(small.cwiseAbs().mean() > 10.0 * big.cwiseAbs().mean());
  CHECK(big.cwiseAbs().maxCoeff() < 0.1);
}

TEST_CASE("fitting is deterministic") {
  auto gen = testutil::rng(11);
  const Eigen::MatrixXd x = column(testutil::normal_vec(gen, 60));
  const Eigen::VectorXd y = x.col(0).array().square();
  const KernelRidgeModel a = krr_fit(x, y, 10.0, 0.1);
  const KernelRidgeModel b = krr_fit(x, y, 10.0, 0.1);
  CHECK((a.alpha - b.alpha).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("non-finite targets are rejected") {
  Eigen::MatrixXd x(3, 1);
  x << 0.0, 1.0, 2.0;
  Eigen::VectorXd y(3);
  y << 1.0, std::numeric_limits<double>::quiet_NaN(), 2.0;
  CHECK_THROWS_AS(krr_fit(x, y, 10.0, 0.1), Error);
}

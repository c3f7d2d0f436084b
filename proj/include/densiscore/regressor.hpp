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

#pragma once

#include <Eigen/Dense>

#include "densiscore/errors.hpp"

namespace densiscore {

/// Closed-form RBF kernel ridge regressor: the fixed, deterministic predictor
/// used by the experiment harness. Any other predictor works too; the
/// invariance property belongs to the metric, not the model.
struct KernelRidgeModel {
  Eigen::MatrixXd support;  // training inputs, n x d
  Eigen::VectorXd alpha;    // dual coefficients, length n
  double rbf_gamma = 10.0;
  double ridge_lambda = 0.1;
};

/// Solves (K + lambda I) alpha = y with K_ij = exp(-gamma |x_i - x_j|^2).
KernelRidgeModel krr_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double rbf_gamma,
                         double ridge_lambda);

/// f(x) = sum_j alpha_j exp(-gamma |x - x_j|^2)
Eigen::VectorXd krr_predict(const KernelRidgeModel& model, const Eigen::MatrixXd& x);

}  // namespace densiscore

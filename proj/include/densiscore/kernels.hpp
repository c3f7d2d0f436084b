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

namespace densiscore::kernels {

// Gaussian contributions beyond this many bandwidths are below double
// rounding noise (exp(-8.6^2/2) ~ 8e-17) and are skipped by the parallel
// kernels. The serial reference implementations keep the full sums.
inline constexpr double kGaussianCutoff = 8.6;

inline constexpr double kInvSqrt2Pi = 0.3989422804014327;

/// Product-Gaussian KDE: g(t) = (1/(n * prod h_j)) sum_i prod_j phi((t_j - x_ij)/h_j).
/// `train` is n x d, `query` m x d, `h` has one entry per dimension.
/// OpenMP-parallel over query points; per-point sums are serial, so the
/// result does not depend on thread count.
Eigen::VectorXd kde_evaluate(const Eigen::MatrixXd& train, const Eigen::VectorXd& h,
                             const Eigen::MatrixXd& query);

/// Untruncated serial reference for kde_evaluate.
Eigen::VectorXd kde_evaluate_serial(const Eigen::MatrixXd& train, const Eigen::VectorXd& h,
                                    const Eigen::MatrixXd& query);

/// Leave-one-out log-likelihood sum_i log g_{-i}(x_i); -inf if any leave-one-out
/// density underflows to zero.
double loo_log_likelihood(const Eigen::MatrixXd& train, const Eigen::VectorXd& h);
double loo_log_likelihood_serial(const Eigen::MatrixXd& train, const Eigen::VectorXd& h);

/// Least-squares CV objective: integral of g_h^2 minus (2/n) sum_i g_{-i}(x_i).
/// The squared-density integral is the closed-form Gaussian double sum with
/// bandwidth h*sqrt(2).
double lscv_objective(const Eigen::MatrixXd& train, const Eigen::VectorXd& h);
double lscv_objective_serial(const Eigen::MatrixXd& train, const Eigen::VectorXd& h);

/// RBF Gram matrix K_ij = exp(-gamma * |a_i - b_j|^2).
Eigen::MatrixXd rbf_gram(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double gamma);
Eigen::MatrixXd rbf_gram_serial(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double gamma);

}  // namespace densiscore::kernels

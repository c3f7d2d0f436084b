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

#include "densiscore/regressor.hpp"

#include "densiscore/kernels.hpp"

namespace densiscore {

KernelRidgeModel krr_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double rbf_gamma,
                         double ridge_lambda) {
  if (x.rows() != y.size()) throw DimensionMismatch("x rows and y length differ");
  if (x.rows() < 2) throw TooFewSamples("krr_fit requires n >= 2");
  if (rbf_gamma <= 0.0 || ridge_lambda <= 0.0) throw Error("gamma and lambda must be positive");
  if (!x.allFinite() || !y.allFinite()) throw Error("krr_fit inputs must be finite");

  Eigen::MatrixXd k = kernels::rbf_gram(x, x, rbf_gamma);
  k.diagonal().array() += ridge_lambda;
  const Eigen::LDLT<Eigen::MatrixXd> solver(k);
  if (solver.info() != Eigen::Success)
    throw SingularSystem("kernel ridge system is not decomposable; increase lambda");
  Eigen::VectorXd alpha = solver.solve(y);
  if (!alpha.allFinite())
    throw SingularSystem("kernel ridge solve produced non-finite coefficients");
  return KernelRidgeModel{x, std::move(alpha), rbf_gamma, ridge_lambda};
}

Eigen::VectorXd krr_predict(const KernelRidgeModel& model, const Eigen::MatrixXd& x) {
  if (x.cols() != model.support.cols()) throw DimensionMismatch("query dimension mismatch");
  return kernels::rbf_gram(x, model.support, model.rbf_gamma) * model.alpha;
}

}  // namespace densiscore

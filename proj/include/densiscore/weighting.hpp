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
#include <optional>

#include "densiscore/density.hpp"

namespace densiscore {

enum class Anchor { x, y, uniform };

struct WeightVector {
  Eigen::VectorXd weights;  // positive and finite, not normalized
  Anchor anchor = Anchor::uniform;
  bool floor_applied = false;
  double effective_sample_size = 0.0;  // (sum w)^2 / sum w^2
};

double effective_sample_size(const Eigen::VectorXd& weights);

/// w_i = q(t_i) / max(g(t_i), floor_ratio * median_j g(t_j)), with q == 1
/// when no target density is given. Weights are left unnormalized; the
/// metric formulas normalize.
WeightVector inverse_density_weights(const DensityModel& model, const Eigen::MatrixXd& anchors,
                                     Anchor anchor, const DensityModel* target = nullptr,
                                     double floor_ratio = 0.0);

WeightVector uniform_weights(Eigen::Index n);

}  // namespace densiscore

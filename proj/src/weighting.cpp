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

#include "densiscore/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "densiscore/sum.hpp"

namespace densiscore {

double effective_sample_size(const Eigen::VectorXd& weights) {
  CompensatedSum s, s2;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    s.add(weights(i));
    s2.add(weights(i) * weights(i));
  }
  return s.value() * s.value() / s2.value();
}

WeightVector inverse_density_weights(const DensityModel& model, const Eigen::MatrixXd& anchors,
                                     Anchor anchor, const DensityModel* target,
                                     double floor_ratio) {
  if (floor_ratio < 0.0 || floor_ratio >= 1.0) throw Error("floor_ratio must be in [0, 1)");
  const Eigen::VectorXd g = model.evaluate(anchors);

  double floor = 0.0;
  if (floor_ratio > 0.0) {
    std::vector<double> sorted(g.data(), g.data() + g.size());
    std::sort(sorted.begin(), sorted.end());
    const size_t m = sorted.size() / 2;
    const double med = sorted.size() % 2 == 1 ? sorted[m] : 0.5 * (sorted[m - 1] + sorted[m]);
    floor = floor_ratio * med;
  }

  Eigen::VectorXd q = Eigen::VectorXd::Ones(g.size());
  if (target != nullptr) q = target->evaluate(anchors);

  WeightVector wv;
  wv.anchor = anchor;
  wv.floor_applied = floor_ratio > 0.0;
  wv.weights.resize(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double denom = std::max(g(i), floor);
    const double w = q(i) / denom;
    if (!std::isfinite(w) || w <= 0.0)
      throw NonFiniteWeight("density underflow at sample " + std::to_string(i) +
                            "; consider a floor_ratio > 0");
    wv.weights(i) = w;
  }
  wv.effective_sample_size = effective_sample_size(wv.weights);
  return wv;
}

WeightVector uniform_weights(Eigen::Index n) {
  if (n < 1) throw TooFewSamples("uniform_weights needs n >= 1");
  WeightVector wv;
  wv.weights = Eigen::VectorXd::Ones(n);
  wv.anchor = Anchor::uniform;
  wv.floor_applied = false;
  wv.effective_sample_size = double(n);
  return wv;
}

}  // namespace densiscore

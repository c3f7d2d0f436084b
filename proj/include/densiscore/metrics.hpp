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
#include <string>
#include <vector>

#include "densiscore/density.hpp"
#include "densiscore/weighting.hpp"

namespace densiscore {

/// Which mean enters the relative and correlation metrics: the weighted mean
/// (consistent with the importance-sampling reading; required for the
/// replication oracle to hold exactly) or the plain 1/n mean.
enum class MeanConvention { weighted, plain };

enum class Mode { nw, yw, xw };

std::string to_string(MeanConvention c);
std::string to_string(Mode m);

struct EvalSet {
  Eigen::VectorXd actual;
  Eigen::VectorXd predicted;
  std::optional<Eigen::MatrixXd> samples;  // n x d, required for xw mode

  EvalSet(Eigen::VectorXd a, Eigen::VectorXd p,
          std::optional<Eigen::MatrixXd> x = std::nullopt);

  Eigen::Index n() const { return actual.size(); }
};

struct ErrorMetrics {
  double mse, rmse, mae;
};

struct RelativeMetrics {
  double rse, rrse, rae;
};

struct DeterminationMetrics {
  double cod, evs;
};

ErrorMetrics error_metrics(const EvalSet& set, const WeightVector& weights);

/// Throws ZeroDenominator when the (weighted) variance of the actual values
/// vanishes.
RelativeMetrics relative_metrics(const EvalSet& set, const WeightVector& weights,
                                 MeanConvention convention = MeanConvention::weighted);

double correlation_metric(const EvalSet& set, const WeightVector& weights,
                          MeanConvention convention = MeanConvention::weighted);

DeterminationMetrics determination_metrics(const EvalSet& set, const WeightVector& weights,
                                           MeanConvention convention = MeanConvention::weighted);

/// One metric value in one mode; `error` is set (and `value` empty) when the
/// metric is undefined for this input.
struct ReportRow {
  std::string metric;
  Mode mode = Mode::nw;
  MeanConvention convention = MeanConvention::weighted;
  std::optional<double> value;
  std::string error;
  Eigen::Index n = 0;
  double ess = 0.0;
  std::optional<double> bandwidth;  // geometric mean over dimensions
  double weight_min = 1.0;
  double weight_max = 1.0;
};

struct ReportOptions {
  std::vector<Mode> modes{Mode::nw, Mode::yw, Mode::xw};
  MeanConvention convention = MeanConvention::weighted;
  double floor_ratio = 0.0;
  const DensityModel* y_target = nullptr;
  const DensityModel* x_target = nullptr;
  // When both conventions disagree by more than this relative amount, the
  // other convention's rows are appended for inspection.
  double convention_report_threshold = 1e-9;
};

/// All nine metrics for one mode with explicitly supplied weights.
std::vector<ReportRow> metric_rows(const EvalSet& set, const WeightVector& weights, Mode mode,
                                   MeanConvention convention,
                                   std::optional<double> bandwidth = std::nullopt,
                                   double convention_report_threshold = 1e-9);

/// nw/yw/xw reports; yw weights anchor at the actual values, xw at the
/// sample rows. Pass null models to skip the corresponding modes.
std::vector<ReportRow> full_report(const EvalSet& set, const DensityModel* y_model,
                                   const DensityModel* x_model, const ReportOptions& options = {});

}  // namespace densiscore

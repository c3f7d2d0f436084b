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

#include "densiscore/metrics.hpp"

#include <cmath>

#include "densiscore/sum.hpp"

namespace densiscore {

namespace {

double weighted_sum(const Eigen::VectorXd& w, const auto& term) {
  CompensatedSum acc;
  for (Eigen::Index i = 0; i < w.size(); ++i) acc.add(w(i) * term(i));
  return acc.value();
}

struct Means {
  double a, p;
};

Means means_for(const EvalSet& set, const WeightVector& weights, MeanConvention convention) {
  if (convention == MeanConvention::plain) {
    return {set.actual.mean(), set.predicted.mean()};
  }
  const double total = weighted_sum(weights.weights, [](Eigen::Index) { return 1.0; });
  const double a = weighted_sum(weights.weights, [&](Eigen::Index i) { return set.actual(i); });
  const double p = weighted_sum(weights.weights, [&](Eigen::Index i) { return set.predicted(i); });
  return {a / total, p / total};
}

void check_sizes(const EvalSet& set, const WeightVector& weights) {
  if (weights.weights.size() != set.n())
    throw DimensionMismatch("weight vector length does not match eval set");
}

double geometric_mean_bandwidth(const DensityModel& model) {
  if (model.kind() != DensityModel::Kind::gaussian_kde) return 0.0;
  return std::exp(model.bandwidth().h.array().log().mean());
}

}  // namespace

EvalSet::EvalSet(Eigen::VectorXd a, Eigen::VectorXd p, std::optional<Eigen::MatrixXd> x)
    : actual(std::move(a)), predicted(std::move(p)), samples(std::move(x)) {
  if (actual.size() != predicted.size())
    throw DimensionMismatch("actual and predicted lengths differ");
  if (actual.size() < 2) throw TooFewSamples("EvalSet requires n >= 2");
  if (!actual.allFinite() || !predicted.allFinite()) throw Error("EvalSet entries must be finite");
  if (samples && samples->rows() != actual.size())
    throw DimensionMismatch("sample matrix row count does not match actual values");
}

std::string to_string(MeanConvention c) {
  return c == MeanConvention::weighted ? "weighted" : "plain";
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::nw: return "nw";
    case Mode::yw: return "yw";
    case Mode::xw: return "xw";
  }
  return "?";
}

ErrorMetrics error_metrics(const EvalSet& set, const WeightVector& weights) {
  check_sizes(set, weights);
  const Eigen::VectorXd& w = weights.weights;
  const double total = weighted_sum(w, [](Eigen::Index) { return 1.0; });
  const double mse = weighted_sum(w, [&](Eigen::Index i) {
                       const double r = set.predicted(i) - set.actual(i);
                       return r * r;
                     }) /
                     total;
  const double mae = weighted_sum(w, [&](Eigen::Index i) {
                       return std::abs(set.predicted(i) - set.actual(i));
                     }) /
                     total;
  return {mse, std::sqrt(mse), mae};
}

RelativeMetrics relative_metrics(const EvalSet& set, const WeightVector& weights,
                                 MeanConvention convention) {
  check_sizes(set, weights);
  const Eigen::VectorXd& w = weights.weights;
  const Means m = means_for(set, weights, convention);
  const double sq_den = weighted_sum(w, [&](Eigen::Index i) {
    const double d = set.actual(i) - m.a;
    return d * d;
  });
  const double abs_den =
      weighted_sum(w, [&](Eigen::Index i) { return std::abs(set.actual(i) - m.a); });
  if (sq_den <= 0.0 || abs_den <= 0.0)
    throw ZeroDenominator("actual values have zero spread about their mean");
  const double sq_num = weighted_sum(w, [&](Eigen::Index i) {
    const double r = set.predicted(i) - set.actual(i);
    return r * r;
  });
  const double abs_num =
      weighted_sum(w, [&](Eigen::Index i) { return std::abs(set.predicted(i) - set.actual(i)); });
  const double rse = sq_num / sq_den;
  return {rse, std::sqrt(rse), abs_num / abs_den};
}

double correlation_metric(const EvalSet& set, const WeightVector& weights,
                          MeanConvention convention) {
  check_sizes(set, weights);
  const Eigen::VectorXd& w = weights.weights;
  const Means m = means_for(set, weights, convention);
  const double cov = weighted_sum(
      w, [&](Eigen::Index i) { return (set.predicted(i) - m.p) * (set.actual(i) - m.a); });
  const double var_p = weighted_sum(w, [&](Eigen::Index i) {
    const double d = set.predicted(i) - m.p;
    return d * d;
  });
  const double var_a = weighted_sum(w, [&](Eigen::Index i) {
    const double d = set.actual(i) - m.a;
    return d * d;
  });
  if (var_p <= 0.0 || var_a <= 0.0)
    throw ZeroDenominator("constant actual or predicted values");
  return cov / std::sqrt(var_p * var_a);
}

DeterminationMetrics determination_metrics(const EvalSet& set, const WeightVector& weights,
                                           MeanConvention convention) {
  check_sizes(set, weights);
  const Eigen::VectorXd& w = weights.weights;
  const Means m = means_for(set, weights, convention);
  const double var_a = weighted_sum(w, [&](Eigen::Index i) {
    const double d = set.actual(i) - m.a;
    return d * d;
  });
  if (var_a <= 0.0) throw ZeroDenominator("actual values have zero spread about their mean");
  const double sq_num = weighted_sum(w, [&](Eigen::Index i) {
    const double r = set.predicted(i) - set.actual(i);
    return r * r;
  });
  const double evs_num = weighted_sum(w, [&](Eigen::Index i) {
    const double r = (set.predicted(i) - set.actual(i)) - (m.p - m.a);
    return r * r;
  });
  return {1.0 - sq_num / var_a, 1.0 - evs_num / var_a};
}

namespace {

struct NineValues {
  std::optional<double> v[9];
  std::string error[9];
};

constexpr const char* kMetricNames[9] = {"MSE", "RMSE", "MAE", "RSE", "RRSE",
                                         "RAE", "PCC", "COD", "EVS"};

NineValues compute_nine(const EvalSet& set, const WeightVector& weights,
                        MeanConvention convention) {
  NineValues out;
  const ErrorMetrics em = error_metrics(set, weights);
  out.v[0] = em.mse;
  out.v[1] = em.rmse;
  out.v[2] = em.mae;
  try {
    const RelativeMetrics rm = relative_metrics(set, weights, convention);
    out.v[3] = rm.rse;
    out.v[4] = rm.rrse;
    out.v[5] = rm.rae;
  } catch (const ZeroDenominator&) {
    out.error[3] = out.error[4] = out.error[5] = "ZeroDenominator";
  }
  try {
    out.v[6] = correlation_metric(set, weights, convention);
  } catch (const ZeroDenominator&) {
    out.error[6] = "ZeroDenominator";
  }
  try {
    const DeterminationMetrics dm = determination_metrics(set, weights, convention);
    out.v[7] = dm.cod;
    out.v[8] = dm.evs;
  } catch (const ZeroDenominator&) {
    out.error[7] = out.error[8] = "ZeroDenominator";
  }
  return out;
}

}  // namespace

std::vector<ReportRow> metric_rows(const EvalSet& set, const WeightVector& weights, Mode mode,
                                   MeanConvention convention, std::optional<double> bandwidth,
                                   double convention_report_threshold) {
  const NineValues main = compute_nine(set, weights, convention);
  const MeanConvention other = convention == MeanConvention::weighted ? MeanConvention::plain
                                                                      : MeanConvention::weighted;

  auto make_row = [&](int k, MeanConvention conv, const NineValues& src) {
    ReportRow row;
    row.metric = kMetricNames[k];
    row.mode = mode;
    row.convention = conv;
    row.value = src.v[k];
    row.error = src.error[k];
    row.n = set.n();
    row.ess = weights.effective_sample_size;
    row.bandwidth = bandwidth;
    row.weight_min = weights.weights.minCoeff();
    row.weight_max = weights.weights.maxCoeff();
    return row;
  };

  std::vector<ReportRow> rows;
  for (int k = 0; k < 9; ++k) rows.push_back(make_row(k, convention, main));

  // The first three metrics do not involve a mean, so only the rest can
  // disagree between conventions.
  bool conventions_can_differ = false;
  for (Eigen::Index i = 0; i < weights.weights.size() && !conventions_can_differ; ++i) {
    conventions_can_differ = weights.weights(i) != weights.weights(0);
  }
  if (conventions_can_differ) {
    const NineValues alt = compute_nine(set, weights, other);
    for (int k = 3; k < 9; ++k) {
      if (!main.v[k] || !alt.v[k]) continue;
      const double scale = std::max({std::abs(*main.v[k]), std::abs(*alt.v[k]), 1e-300});
      if (std::abs(*main.v[k] - *alt.v[k]) / scale > convention_report_threshold) {
        rows.push_back(make_row(k, other, alt));
      }
    }
  }
  return rows;
}

std::vector<ReportRow> full_report(const EvalSet& set, const DensityModel* y_model,
                                   const DensityModel* x_model, const ReportOptions& options) {
  std::vector<ReportRow> rows;
  for (Mode mode : options.modes) {
    WeightVector weights;
    std::optional<double> bandwidth;
    switch (mode) {
      case Mode::nw:
        weights = uniform_weights(set.n());
        break;
      case Mode::yw: {
        if (!y_model) throw Error("yw mode requested without a Y density model");
        weights = inverse_density_weights(*y_model, set.actual, Anchor::y, options.y_target,
                                          options.floor_ratio);
        bandwidth = geometric_mean_bandwidth(*y_model);
        break;
      }
      case Mode::xw: {
        if (!x_model) throw Error("xw mode requested without an X density model");
        if (!set.samples) throw Error("xw mode requested without samples");
        weights = inverse_density_weights(*x_model, *set.samples, Anchor::x, options.x_target,
                                          options.floor_ratio);
        bandwidth = geometric_mean_bandwidth(*x_model);
        break;
      }
    }
    auto mode_rows = metric_rows(set, weights, mode, options.convention, bandwidth,
                                 options.convention_report_threshold);
    rows.insert(rows.end(), mode_rows.begin(), mode_rows.end());
  }
  return rows;
}

}  // namespace densiscore

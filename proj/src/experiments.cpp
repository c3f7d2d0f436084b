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

#include "densiscore/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace densiscore {

namespace {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), stream};
  return std::mt19937_64(seq);
}

Dataset draw_dataset(const SyntheticSpec& spec, int uniform_n, int normal_n, double normal_mean,
                     std::mt19937_64& rng) {
  const int n = uniform_n + normal_n;
  Eigen::MatrixXd x(n, 1);
  std::uniform_real_distribution<double> uni(spec.uniform_lo, spec.uniform_hi);
  std::normal_distribution<double> nrm(normal_mean, spec.normal_sd);
  for (int i = 0; i < uniform_n; ++i) x(i, 0) = uni(rng);
  for (int i = uniform_n; i < n; ++i) x(i, 0) = nrm(rng);

  Eigen::VectorXd y(n);
  std::uniform_real_distribution<double> noise(0.0, spec.noise_high);
  for (int i = 0; i < n; ++i) {
    const double eta = spec.noise_high > 0.0 ? noise(rng) : 0.0;
    y(i) = synthetic_function(spec.function_id, x(i, 0)) + eta;
  }
  return Dataset{std::move(x), std::move(y)};
}

void append_spreads(StudyResult& result, MeanConvention convention) {
  // key: metric name + mode; only rows in the study's main convention count
  std::map<std::pair<std::string, Mode>, std::vector<double>> groups;
  std::map<std::pair<std::string, Mode>, bool> incomplete;
  for (const auto& entry : result.entries) {
    for (const auto& row : entry.rows) {
      if (row.convention != convention) continue;
      const auto key = std::make_pair(row.metric, row.mode);
      if (row.value) {
        groups[key].push_back(*row.value);
      } else {
        incomplete[key] = true;
      }
    }
  }
  for (const auto& [key, values] : groups) {
    if (incomplete.count(key) || values.empty()) continue;
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / double(values.size());
    SpreadEntry s;
    s.metric = key.first;
    s.mode = key.second;
    s.convention = convention;
    s.spread = (*mx - *mn) / std::max(std::abs(mean), 1e-12);
    result.spreads.push_back(s);
  }
}

std::vector<ReportRow> score_entry(const EvalSet& set, const StudyOptions& options,
                                   const Eigen::VectorXd* oracle) {
  if (options.oracle_weights && oracle != nullptr) {
    std::vector<ReportRow> rows;
    for (Mode mode : options.modes) {
      WeightVector weights;
      if (mode == Mode::nw) {
        weights = uniform_weights(set.n());
      } else {
        weights.weights = *oracle;
        weights.anchor = mode == Mode::yw ? Anchor::y : Anchor::x;
        weights.effective_sample_size = effective_sample_size(*oracle);
      }
      auto r = metric_rows(set, weights, mode, options.convention);
      rows.insert(rows.end(), r.begin(), r.end());
    }
    return rows;
  }

  ReportOptions ro;
  ro.modes = options.modes;
  ro.convention = options.convention;
  ro.floor_ratio = options.floor_ratio;
  std::optional<DensityModel> y_model;
  std::optional<DensityModel> x_model;
  const bool want_yw = std::count(options.modes.begin(), options.modes.end(), Mode::yw) > 0;
  const bool want_xw = std::count(options.modes.begin(), options.modes.end(), Mode::xw) > 0;
  if (want_yw) y_model = fit(DataSample::from_vector(set.actual), options.method, options.efficient);
  if (want_xw) x_model = fit(DataSample(*set.samples), options.method, options.efficient);
  return full_report(set, y_model ? &*y_model : nullptr, x_model ? &*x_model : nullptr, ro);
}

}  // namespace

std::string to_string(FunctionId f) {
  switch (f) {
    case FunctionId::f1: return "f1";
    case FunctionId::f2: return "f2";
    case FunctionId::f3: return "f3";
  }
  return "?";
}

FunctionId function_id_from_string(const std::string& s) {
  if (s == "f1") return FunctionId::f1;
  if (s == "f2") return FunctionId::f2;
  if (s == "f3") return FunctionId::f3;
  throw Error("unknown function id: " + s);
}

double synthetic_function(FunctionId f, double x) {
  switch (f) {
    case FunctionId::f1: return 2.0 * x;
    case FunctionId::f2: return x * std::abs(x);
    case FunctionId::f3: {
      const double c = std::cos(x);
      return 10.0 * c * c;
    }
  }
  return 0.0;
}

Dataset gen_synthetic(const SyntheticSpec& spec) {
  auto rng = make_rng(spec.seed, 0);
  return draw_dataset(spec, spec.train_uniform_n, spec.train_normal_n, spec.normal_mean, rng);
}

std::vector<Dataset> gen_shift_testsets(const SyntheticSpec& spec, int test_n) {
  const double ratio =
      double(spec.train_uniform_n) / double(spec.train_uniform_n + spec.train_normal_n);
  const int uniform_n = int(std::lround(double(test_n) * ratio));
  const int normal_n = test_n - uniform_n;
  std::vector<Dataset> sets;
  for (int k = 0; k < kShiftCount; ++k) {
    auto rng = make_rng(spec.seed, std::uint32_t(k + 1));
    sets.push_back(draw_dataset(spec, uniform_n, normal_n, spec.normal_mean + double(k), rng));
  }
  return sets;
}

ChunkSets chunk_stress(const Eigen::VectorXd& x, const Eigen::VectorXd& actual,
                       const Eigen::VectorXd& predicted, int k, int reps) {
  const Eigen::Index n = x.size();
  if (actual.size() != n || predicted.size() != n)
    throw DimensionMismatch("x, actual and predicted lengths differ");
  if (n < k) throw TooFewSamples("need at least k samples for k chunks");
  if (k < 1 || reps < 0) throw Error("k must be >= 1 and reps >= 0");

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return x(a) < x(b); });

  const Eigen::Index base = n / k;
  const Eigen::Index rem = n % k;
  std::vector<int> chunk_of(static_cast<size_t>(n));
  {
    size_t pos = 0;
    for (int c = 0; c < k; ++c) {
      const Eigen::Index size = base + (c < rem ? 1 : 0);
      for (Eigen::Index r = 0; r < size; ++r) chunk_of[size_t(order[pos++])] = c;
    }
  }

  ChunkSets out;
  for (int c = 0; c < k; ++c) {
    std::vector<Eigen::Index> rows(order.size());
    std::iota(rows.begin(), rows.end(), Eigen::Index{0});  // original data, original order
    for (int r = 0; r < reps; ++r) {
      for (Eigen::Index i : order) {
        if (chunk_of[size_t(i)] == c) rows.push_back(i);
      }
    }
    const Eigen::Index m = Eigen::Index(rows.size());
    Eigen::VectorXd a(m), p(m), w(m);
    Eigen::MatrixXd xs(m, 1);
    for (Eigen::Index r = 0; r < m; ++r) {
      const Eigen::Index i = rows[size_t(r)];
      a(r) = actual(i);
      p(r) = predicted(i);
      xs(r, 0) = x(i);
      w(r) = chunk_of[size_t(i)] == c ? 1.0 / double(reps + 1) : 1.0;
    }
    out.sets.emplace_back(std::move(a), std::move(p), std::move(xs));
    out.oracle_weights.push_back(std::move(w));
  }
  return out;
}

double spread_of(const StudyResult& result, const std::string& metric, Mode mode) {
  for (const auto& s : result.spreads) {
    if (s.metric == metric && s.mode == mode) return s.spread;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

StudyResult run_invariance_study(const SyntheticSpec& spec, const StudyOptions& options) {
  const Dataset train = gen_synthetic(spec);
  const KernelRidgeModel model =
      krr_fit(train.x, train.y, options.krr_gamma, options.krr_lambda);

  StudyResult result;
  result.study = "synthetic_shift";
  {
    std::ostringstream cfg;
    cfg << "function=" << to_string(spec.function_id) << " seed=" << spec.seed
        << " regressor=krr(rbf_gamma=" << options.krr_gamma << ",lambda=" << options.krr_lambda
        << ") method=" << to_string(options.method)
        << (options.efficient ? " efficient" : "");
    result.config = cfg.str();
  }

  const auto tests = gen_shift_testsets(spec, options.test_n);
  for (int k = 0; k < int(tests.size()); ++k) {
    const Dataset& t = tests[size_t(k)];
    EvalSet set(t.y, krr_predict(model, t.x), t.x);
    StudyEntry entry;
    entry.index = k;
    entry.label = spec.normal_mean + double(k);
    entry.rows = score_entry(set, options, nullptr);
    result.entries.push_back(std::move(entry));
  }
  append_spreads(result, options.convention);
  return result;
}

StudyResult run_chunk_study(const Eigen::VectorXd& x, const Eigen::VectorXd& actual,
                            const Eigen::VectorXd& predicted, const StudyOptions& options, int k,
                            int reps) {
  const ChunkSets chunks = chunk_stress(x, actual, predicted, k, reps);

  StudyResult result;
  result.study = "chunk_stress";
  {
    std::ostringstream cfg;
    cfg << "k=" << k << " reps=" << reps << " method=" << to_string(options.method)
        << (options.efficient ? " efficient" : "")
        << (options.oracle_weights ? " oracle_weights" : "");
    result.config = cfg.str();
  }

  for (int c = 0; c < k; ++c) {
    StudyEntry entry;
    entry.index = c;
    entry.label = double(c);
    entry.rows =
        score_entry(chunks.sets[size_t(c)], options, &chunks.oracle_weights[size_t(c)]);
    result.entries.push_back(std::move(entry));
  }
  append_spreads(result, options.convention);
  return result;
}

}  // namespace densiscore

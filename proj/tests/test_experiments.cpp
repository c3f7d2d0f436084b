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
#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "densiscore/experiments.hpp"
#include "test_util.hpp"

using namespace densiscore;

TEST_CASE("synthetic functions evaluate to their defining expressions") {
  CHECK(synthetic_function(FunctionId::f1, 2.0) == 4.0);
  CHECK(synthetic_function(FunctionId::f1, -1.5) == -3.0);
  CHECK(synthetic_function(FunctionId::f2, -2.0) == -4.0);
  CHECK(synthetic_function(FunctionId::f2, 3.0) == 9.0);
  CHECK(synthetic_function(FunctionId::f3, 0.0) == 10.0);
  CHECK(synthetic_function(FunctionId::f3, M_PI / 2.0) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("gen_synthetic respects counts, bounds, and the noise envelope") {
  SyntheticSpec spec;
  spec.function_id = FunctionId::f2;
  spec.seed = 42;
  const Dataset data = gen_synthetic(spec);
  REQUIRE(data.x.rows() == 1000);
  REQUIRE(data.y.size() == 1000);
  int in_uniform_range = 0, near_normal_center = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x = data.x(i, 0);
    const double noise = data.y(i) - synthetic_function(FunctionId::f2, x);
    CHECK(std::abs(noise) <= 0.1 + 1e-12);  // uniform noise in [-0.1, 0.1]
    if (x >= -4.0 && x <= 4.0) ++in_uniform_range;
    if (std::abs(x + 3.0) < 0.5) ++near_normal_center;
  }
  CHECK(in_uniform_range >= 999);            // the N(-3, 0.1) part lies inside too
  CHECK(near_normal_center >= 700);          // all 700 normal draws, within 5 sigma
  CHECK(near_normal_center <= 700 + 300 / 4);  // plus some uniform draws
}

TEST_CASE("zero noise reproduces the function exactly") {
  SyntheticSpec spec;
  spec.function_id = FunctionId::f3;
  spec.noise_high = 0.0;
  spec.seed = 7;
  const Dataset data = gen_synthetic(spec);
  for (int i = 0; i < data.x.rows(); ++i)
    CHECK(data.y(i) == doctest::Approx(synthetic_function(FunctionId::f3, data.x(i, 0)))
                           .epsilon(1e-14));
}

TEST_CASE("shift test sets move the normal component by one per step") {
  SyntheticSpec spec;
  spec.seed = 9;
  const std::vector<Dataset> sets = gen_shift_testsets(spec, 2000);
  REQUIRE(int(sets.size()) == kShiftCount);
  double prev_mean = -1e9;
  for (int s = 0; s < kShiftCount; ++s) {
    REQUIRE(sets[s].x.rows() == 2000);
    // The normal component (70% of rows) sits at -3 + s; a CLT bound on its
    // sample mean with sd 0.1 and n = 1400 is about 0.008 at three sigma.
    std::vector<double> xs(sets[s].x.data(), sets[s].x.data() + 2000);
    std::sort(xs.begin(), xs.end());
    // Count points within 0.5 of the expected center.
    const double center = -3.0 + double(s);
    int close = 0;
    double close_sum = 0.0;
    for (double x : xs) {
      if (std::abs(x - center) < 0.5) {
        ++close;
        close_sum += x;
      }
    }
    CHECK(close >= 1400);
    const double mean_close = close_sum / double(close);
    CHECK(std::abs(mean_close - center) < 0.05);
    CHECK(mean_close > prev_mean + 0.9);
    prev_mean = mean_close;
  }
}

TEST_CASE("generation is deterministic in the seed and differs across seeds") {
  SyntheticSpec spec;
  spec.seed = 1234567890123ULL;
  const Dataset a = gen_synthetic(spec);
  const Dataset b = gen_synthetic(spec);
  CHECK((a.x - b.x).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.y - b.y).cwiseAbs().maxCoeff() == 0.0);
  spec.seed += 1;
  const Dataset c = gen_synthetic(spec);
  CHECK((a.x - c.x).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("chunk stress builds k augmented sets of size n + reps * chunk") {
  auto gen = testutil::rng(21);
  const Eigen::VectorXd x = testutil::uniform_vec(gen, 1000, -4.0, 4.0);
  const Eigen::VectorXd actual = x.array().sin();
  const Eigen::VectorXd predicted = actual.array() + 0.1;
  const ChunkSets chunks = chunk_stress(x, actual, predicted, 5, 5);
  REQUIRE(chunks.sets.size() == 5);
  REQUIRE(chunks.oracle_weights.size() == 5);
  for (const EvalSet& set : chunks.sets) {
    CHECK(set.n() == 2000);  // 1000 + 5 * 200
    REQUIRE(set.samples.has_value());
  }
}

TEST_CASE("chunks are contiguous in sorted x and partition the sample") {
  auto gen = testutil::rng(22);
  const int n = 103;  // not divisible by k: chunk sizes 21, 21, 21, 20, 20
  const Eigen::VectorXd x = testutil::uniform_vec(gen, n, 0.0, 1.0);
  const Eigen::VectorXd y = x;
  const ChunkSets chunks = chunk_stress(x, y, y, 5, 3);
  std::vector<double> sorted(x.data(), x.data() + n);
  std::sort(sorted.begin(), sorted.end());
  std::set<double> seen;
  int total_extra = 0;
  for (int j = 0; j < 5; ++j) {
    const EvalSet& set = chunks.sets[j];
    const int extra = int(set.n()) - n;
    total_extra += extra / 3;
    // The appended rows are the chunk, replicated 3 times; they must form a
    // contiguous run of the sorted sample.
    std::vector<double> appended;
    for (int i = n; i < set.n(); ++i) appended.push_back((*set.samples)(i, 0));
    std::sort(appended.begin(), appended.end());
    const int chunk_size = extra / 3;
    for (int r = 0; r < chunk_size; ++r) {
      // each chunk value appears exactly 3 times in the appended block
      CHECK(appended[size_t(3 * r)] == appended[size_t(3 * r + 2)]);
      seen.insert(appended[size_t(3 * r)]);
    }
    const auto lo = std::find(sorted.begin(), sorted.end(), appended.front());
    REQUIRE(lo != sorted.end());
    const long start = lo - sorted.begin();
    for (int r = 0; r < chunk_size; ++r)
      CHECK(appended[size_t(3 * r)] == sorted[size_t(start + r)]);
  }
  CHECK(total_extra == n);          // chunks partition the sample
  CHECK(int(seen.size()) == n);     // every point appears in exactly one chunk
}

TEST_CASE("oracle weights undo chunk replication exactly") {
  auto gen = testutil::rng(23);
  const int n = 200;
  const Eigen::VectorXd x = testutil::uniform_vec(gen, n, -2.0, 2.0);
  const Eigen::VectorXd actual = x.array().cos();
  const Eigen::VectorXd predicted = actual + testutil::normal_vec(gen, n, 0.0, 0.1);
  const ChunkSets chunks = chunk_stress(x, actual, predicted, 5, 5);

  // Weighted metrics on each augmented set with the oracle weights must equal
  // the classical metrics on the original sample, for every chunk.
  const EvalSet original(actual, predicted);
  const ErrorMetrics base = error_metrics(original, uniform_weights(n));
  const RelativeMetrics base_rel = relative_metrics(original, uniform_weights(n));
  for (int j = 0; j < 5; ++j) {
    WeightVector w;
    w.weights = chunks.oracle_weights[size_t(j)];
    w.effective_sample_size = effective_sample_size(w.weights);
    const ErrorMetrics m = error_metrics(chunks.sets[size_t(j)], w);
    const RelativeMetrics rel = relative_metrics(chunks.sets[size_t(j)], w);
    CHECK(testutil::rel_diff(m.mse, base.mse) < 1e-12);
    CHECK(testutil::rel_diff(m.mae, base.mae) < 1e-12);
    CHECK(testutil::rel_diff(rel.rse, base_rel.rse) < 1e-12);
    CHECK(testutil::rel_diff(rel.rae, base_rel.rae) < 1e-12);
  }
}

TEST_CASE("reps = 0 leaves every set equal to the original") {
  auto gen = testutil::rng(24);
  const int n = 50;
  const Eigen::VectorXd x = testutil::uniform_vec(gen, n);
  const ChunkSets chunks = chunk_stress(x, x, x, 5, 0);
  for (const EvalSet& set : chunks.sets) CHECK(set.n() == n);
}

TEST_CASE("invariance study output is deterministic") {
  SyntheticSpec spec;
  spec.function_id = FunctionId::f1;
  spec.seed = 3;
  StudyOptions opt;
  opt.method = BandwidthMethod::scott;  // cheap; CV is exercised elsewhere
  opt.test_n = 300;
  const StudyResult a = run_invariance_study(spec, opt);
  const StudyResult b = run_invariance_study(spec, opt);
  REQUIRE(a.entries.size() == b.entries.size());
  REQUIRE(int(a.entries.size()) == kShiftCount);
  for (size_t e = 0; e < a.entries.size(); ++e) {
    REQUIRE(a.entries[e].rows.size() == b.entries[e].rows.size());
    for (size_t r = 0; r < a.entries[e].rows.size(); ++r) {
      const auto& ra = a.entries[e].rows[r];
      const auto& rb = b.entries[e].rows[r];
      CHECK(ra.metric == rb.metric);
      CHECK(ra.value.has_value() == rb.value.has_value());
      if (ra.value) CHECK(*ra.value == *rb.value);
    }
  }
  REQUIRE(!a.spreads.empty());
  for (size_t s = 0; s < a.spreads.size(); ++s)
    CHECK(a.spreads[s].spread == b.spreads[s].spread);
}

TEST_CASE("chunk study with oracle weights has zero spread in yw and xw") {
  SyntheticSpec spec;
  spec.function_id = FunctionId::f2;
  spec.seed = 5;
  spec.noise_high = 0.1;
  const Dataset data = gen_synthetic(spec);
  StudyOptions opt;
  opt.method = BandwidthMethod::scott;
  opt.oracle_weights = true;
  const Eigen::VectorXd predicted = data.y.array() + 0.05;
  const StudyResult result = run_chunk_study(data.x.col(0), data.y, predicted, opt);
  CHECK(result.study == "chunk_stress");
  for (const auto& s : result.spreads) {
    if (s.mode == Mode::yw || s.mode == Mode::xw) CHECK(s.spread <= 1e-12);
  }
  CHECK(spread_of(result, "MSE", Mode::yw) <= 1e-12);
}

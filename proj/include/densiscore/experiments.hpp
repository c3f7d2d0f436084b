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

#include <cstdint>
#include <string>
#include <vector>

#include "densiscore/metrics.hpp"
#include "densiscore/regressor.hpp"

namespace densiscore {

enum class FunctionId { f1, f2, f3 };  // 2x, x|x|, 10 cos^2(x)

std::string to_string(FunctionId f);
FunctionId function_id_from_string(const std::string& s);
double synthetic_function(FunctionId f, double x);

/// Training mixture: uniform draws on [uniform_lo, uniform_hi) plus normal
/// draws around normal_mean; y = f(x) + U[0, noise_high].
struct SyntheticSpec {
  FunctionId function_id = FunctionId::f1;
  int train_uniform_n = 300;
  int train_normal_n = 700;
  double uniform_lo = -4.0;
  double uniform_hi = 4.0;
  double normal_mean = -3.0;
  double normal_sd = 0.1;
  double noise_high = 0.1;
  std::uint64_t seed = 0;
};

struct Dataset {
  Eigen::MatrixXd x;  // n x 1
  Eigen::VectorXd y;
};

Dataset gen_synthetic(const SyntheticSpec& spec);

/// Seven test sets whose normal component mean walks from normal_mean to
/// normal_mean + 6 in unit steps; composition follows the training ratio.
/// Each set draws from its own RNG stream, so generation order (or
/// parallelism) cannot change the data.
std::vector<Dataset> gen_shift_testsets(const SyntheticSpec& spec, int test_n = 1000);

inline constexpr int kShiftCount = 7;

/// Chunk augmentation: sort by x, split into k contiguous chunks (the first
/// n mod k chunks get one extra row), and append chunk j `reps` times to the
/// original data. `oracle_weights[j]` undoes the augmentation exactly:
/// 1/(reps+1) on every occurrence of a chunk-j row, 1 elsewhere.
struct ChunkSets {
  std::vector<EvalSet> sets;
  std::vector<Eigen::VectorXd> oracle_weights;
};

ChunkSets chunk_stress(const Eigen::VectorXd& x, const Eigen::VectorXd& actual,
                       const Eigen::VectorXd& predicted, int k = 5, int reps = 5);

struct StudyOptions {
  BandwidthMethod method = BandwidthMethod::cv_ls;
  bool efficient = true;
  double floor_ratio = 0.0;
  MeanConvention convention = MeanConvention::weighted;
  std::vector<Mode> modes{Mode::nw, Mode::yw, Mode::xw};
  // An intentionally regularized fixed model: near-interpolating predictors
  // leave no distributional error structure for the study to expose.
  double krr_gamma = 10.0;
  double krr_lambda = 10.0;
  int test_n = 1000;
  /// Chunk study only: replace the KDE weights in yw/xw by the exact
  /// inverse-replication weights (isolates metric correctness from KDE fit).
  bool oracle_weights = false;
};

struct StudyEntry {
  int index = 0;
  double label = 0.0;  // shift mean, or chunk index
  std::vector<ReportRow> rows;
};

struct SpreadEntry {
  std::string metric;
  Mode mode = Mode::nw;
  MeanConvention convention = MeanConvention::weighted;
  double spread = 0.0;  // (max - min) / max(|mean|, 1e-12) across entries
};

struct StudyResult {
  std::string study;  // "synthetic_shift" or "chunk_stress"
  std::string config;
  std::vector<StudyEntry> entries;
  std::vector<SpreadEntry> spreads;
};

/// Spread lookup; returns NaN when the (metric, mode) pair is absent.
double spread_of(const StudyResult& result, const std::string& metric, Mode mode);

/// Trains the fixed regressor on the spec's training mixture, scores the
/// seven shifted test sets, and aggregates invariance spreads.
StudyResult run_invariance_study(const SyntheticSpec& spec, const StudyOptions& options = {});

StudyResult run_chunk_study(const Eigen::VectorXd& x, const Eigen::VectorXd& actual,
                            const Eigen::VectorXd& predicted, const StudyOptions& options = {},
                            int k = 5, int reps = 5);

}  // namespace densiscore

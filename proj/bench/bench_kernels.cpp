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

#include <benchmark/benchmark.h>

#include <random>

#include "densiscore/kernels.hpp"

namespace {

Eigen::MatrixXd random_sample(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nrm(0.0, 1.0);
  Eigen::MatrixXd x(n, 1);
  for (int i = 0; i < n; ++i) x(i, 0) = nrm(rng);
  return x;
}

void bm_kde_eval_omp(benchmark::State& state) {
  const auto x = random_sample(int(state.range(0)), 1);
  const Eigen::VectorXd h = Eigen::VectorXd::Constant(1, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(densiscore::kernels::kde_evaluate(x, h, x));
  }
}

void bm_kde_eval_serial(benchmark::State& state) {
  const auto x = random_sample(int(state.range(0)), 1);
  const Eigen::VectorXd h = Eigen::VectorXd::Constant(1, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(densiscore::kernels::kde_evaluate_serial(x, h, x));
  }
}

void bm_lscv_omp(benchmark::State& state) {
  const auto x = random_sample(int(state.range(0)), 2);
  const Eigen::VectorXd h = Eigen::VectorXd::Constant(1, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(densiscore::kernels::lscv_objective(x, h));
  }
}

void bm_lscv_serial(benchmark::State& state) {
  const auto x = random_sample(int(state.range(0)), 2);
  const Eigen::VectorXd h = Eigen::VectorXd::Constant(1, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(densiscore::kernels::lscv_objective_serial(x, h));
  }
}

void bm_loo_ml_omp(benchmark::State& state) {
  const auto x = random_sample(int(state.range(0)), 3);
  const Eigen::VectorXd h = Eigen::VectorXd::Constant(1, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(densiscore::kernels::loo_log_likelihood(x, h));
  }
}

void bm_loo_ml_serial(benchmark::State& state) {
  const auto x = random_sample(int(state.range(0)), 3);
  const Eigen::VectorXd h = Eigen::VectorXd::Constant(1, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(densiscore::kernels::loo_log_likelihood_serial(x, h));
  }
}

}  // namespace

BENCHMARK(bm_kde_eval_omp)->Arg(1000)->Arg(4000);
BENCHMARK(bm_kde_eval_serial)->Arg(1000)->Arg(4000);
BENCHMARK(bm_lscv_omp)->Arg(1000)->Arg(4000);
BENCHMARK(bm_lscv_serial)->Arg(1000)->Arg(4000);
BENCHMARK(bm_loo_ml_omp)->Arg(1000)->Arg(4000);
BENCHMARK(bm_loo_ml_serial)->Arg(1000)->Arg(4000);

BENCHMARK_MAIN();

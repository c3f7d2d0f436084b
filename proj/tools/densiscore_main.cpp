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

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "densiscore/csv.hpp"
#include "densiscore/density.hpp"
#include "densiscore/experiments.hpp"
#include "densiscore/report_io.hpp"
#include "densiscore/sum.hpp"

namespace ds = densiscore;

namespace {

// exit codes (documented in README)
constexpr int kExitUsage = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitZeroDenominator = 4;

struct CommonOptions {
  std::string method = "cv-ls";
  bool efficient = false;
  double floor_ratio = 0.0;
  std::string mean = "weighted";
  std::string modes = "nw,yw,xw";
  std::uint64_t seed = 0;
  std::string out = "-";
  std::string format = "json";
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool with_modes = true) {
  cmd->add_option("--method", opt.method, "bandwidth method")
      ->check(CLI::IsMember({"scott", "silverman", "cv-ml", "cv-ls"}));
  cmd->add_flag("--efficient,!--no-efficient", opt.efficient,
                "cross-validate on blocks of <= 500 samples");
  cmd->add_option("--floor-ratio", opt.floor_ratio,
                  "density floor as a fraction of the median density")
      ->check(CLI::Range(0.0, 0.999999));
  cmd->add_option("--mean", opt.mean, "mean convention in relative metrics")
      ->check(CLI::IsMember({"weighted", "plain"}));
  if (with_modes) cmd->add_option("--modes", opt.modes, "comma list from nw,yw,xw");
  cmd->add_option("--seed", opt.seed, "RNG seed");
  cmd->add_option("--out", opt.out, "output path; '-' writes to stdout");
  cmd->add_option("--format", opt.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
}

std::vector<ds::Mode> parse_modes(const std::string& spec) {
  std::vector<ds::Mode> modes;
  std::istringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "nw") modes.push_back(ds::Mode::nw);
    else if (item == "yw") modes.push_back(ds::Mode::yw);
    else if (item == "xw") modes.push_back(ds::Mode::xw);
    else throw ds::Error("unknown mode: " + item);
  }
  if (modes.empty()) throw ds::Error("no modes requested");
  return modes;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path == "-") {
    std::cout << content;
  } else {
    ds::write_text_file(out_path, content);
  }
}

bool has_mode(const std::vector<ds::Mode>& modes, ds::Mode m) {
  return std::count(modes.begin(), modes.end(), m) > 0;
}

int cmd_density_fit(const std::string& csv_in, const std::string& column,
                    const CommonOptions& opt, const std::string& curve_path) {
  const ds::CsvTable table = ds::read_csv(csv_in);
  const std::string col_name = column.empty() ? table.header.front() : column;
  if (!table.has_column(col_name)) throw ds::CsvError("missing column '" + col_name + "'");
  const ds::DataSample sample = ds::DataSample::from_vector(table.column(col_name));

  const ds::DensityModel model =
      ds::fit(sample, ds::bandwidth_method_from_string(opt.method), opt.efficient);
  const double h = model.bandwidth().h(0);
  const double lo = sample.points.col(0).minCoeff() - 5.0 * h;
  const double hi = sample.points.col(0).maxCoeff() + 5.0 * h;

  constexpr int kIntegralNodes = 4096;
  Eigen::MatrixXd grid(kIntegralNodes, 1);
  for (int i = 0; i < kIntegralNodes; ++i)
    grid(i, 0) = lo + (hi - lo) * double(i) / double(kIntegralNodes - 1);
  const Eigen::VectorXd g = model.evaluate(grid);
  ds::CompensatedSum integral;
  const double dx = (hi - lo) / double(kIntegralNodes - 1);
  for (int i = 0; i + 1 < kIntegralNodes; ++i) integral.add(0.5 * (g(i) + g(i + 1)) * dx);

  nlohmann::json summary{{"method", opt.method},
                         {"bandwidth", h},
                         {"n", sample.n()},
                         {"integral_check", integral.value()}};
  emit(opt.out, summary.dump(2) + "\n");

  std::string curve_out = curve_path;
  if (curve_out.empty() && opt.out != "-") curve_out = opt.out + ".curve.csv";
  if (!curve_out.empty()) {
    constexpr int kCurvePoints = 512;
    Eigen::MatrixXd cgrid(kCurvePoints, 1);
    for (int i = 0; i < kCurvePoints; ++i)
      cgrid(i, 0) = lo + (hi - lo) * double(i) / double(kCurvePoints - 1);
    const Eigen::VectorXd cg = model.evaluate(cgrid);
    std::ostringstream curve;
    curve << "t,g\n";
    curve.precision(17);
    for (int i = 0; i < kCurvePoints; ++i) curve << cgrid(i, 0) << ',' << cg(i) << '\n';
    ds::write_text_file(curve_out, curve.str());
  }
  return 0;
}

int cmd_score(const std::string& csv_in, const CommonOptions& opt) {
  const ds::CsvTable table = ds::read_csv(csv_in);
  if (!table.has_column("actual")) throw ds::CsvError("missing column 'actual'");
  if (!table.has_column("predicted")) throw ds::CsvError("missing column 'predicted'");
  const Eigen::MatrixXd x = table.x_matrix();

  auto modes = parse_modes(opt.modes);
  if (has_mode(modes, ds::Mode::xw) && x.cols() == 0) {
    std::cerr << "warning: no x0.. columns present; skipping xw mode\n";
    std::erase(modes, ds::Mode::xw);
  }

  std::optional<Eigen::MatrixXd> samples;
  if (x.cols() > 0) samples = x;
  const ds::EvalSet set(table.column("actual"), table.column("predicted"), samples);

  const auto method = ds::bandwidth_method_from_string(opt.method);
  std::optional<ds::DensityModel> y_model, x_model;
  if (has_mode(modes, ds::Mode::yw))
    y_model = ds::fit(ds::DataSample::from_vector(set.actual), method, opt.efficient);
  if (has_mode(modes, ds::Mode::xw))
    x_model = ds::fit(ds::DataSample(x), method, opt.efficient);

  ds::ReportOptions ro;
  ro.modes = modes;
  ro.convention =
      opt.mean == "plain" ? ds::MeanConvention::plain : ds::MeanConvention::weighted;
  ro.floor_ratio = opt.floor_ratio;
  const auto rows =
      ds::full_report(set, y_model ? &*y_model : nullptr, x_model ? &*x_model : nullptr, ro);

  emit(opt.out, opt.format == "csv" ? ds::report_rows_to_csv(rows)
                                    : ds::report_rows_to_json(rows).dump(2) + "\n");

  const bool degenerate =
      std::any_of(rows.begin(), rows.end(), [](const auto& r) { return !r.error.empty(); });
  if (degenerate) {
    std::cerr << "warning: some metrics are undefined (ZeroDenominator)\n";
    return kExitZeroDenominator;
  }
  return 0;
}

void write_study(const ds::StudyResult& result, const CommonOptions& opt) {
  if (opt.out == "-") {
    std::cout << (opt.format == "csv" ? ds::study_to_csv(result)
                                      : ds::study_to_json(result).dump(2) + "\n");
    return;
  }
  ds::write_text_file(opt.out + ".json", ds::study_to_json(result).dump(2) + "\n");
  ds::write_text_file(opt.out + ".csv", ds::study_to_csv(result));
}

ds::StudyOptions study_options(const CommonOptions& opt) {
  ds::StudyOptions so;
  so.method = ds::bandwidth_method_from_string(opt.method);
  so.efficient = opt.efficient;
  so.floor_ratio = opt.floor_ratio;
  so.convention = opt.mean == "plain" ? ds::MeanConvention::plain : ds::MeanConvention::weighted;
  so.modes = parse_modes(opt.modes);
  return so;
}

int cmd_bench_synthetic(const std::string& function, int test_n, double gamma, double lambda,
                        const CommonOptions& opt) {
  ds::SyntheticSpec spec;
  spec.function_id = ds::function_id_from_string(function);
  spec.seed = opt.seed;
  ds::StudyOptions so = study_options(opt);
  so.test_n = test_n;
  so.krr_gamma = gamma;
  so.krr_lambda = lambda;
  write_study(ds::run_invariance_study(spec, so), opt);
  return 0;
}

int cmd_bench_stress(const std::string& csv_in, const std::string& function, int k, int reps,
                     bool oracle, int test_n, const CommonOptions& opt) {
  Eigen::VectorXd x, a, p;
  if (!csv_in.empty()) {
    const ds::CsvTable table = ds::read_csv(csv_in);
    for (const char* col : {"x0", "actual", "predicted"}) {
      if (!table.has_column(col)) throw ds::CsvError(std::string("missing column '") + col + "'");
    }
    x = table.column("x0");
    a = table.column("actual");
    p = table.column("predicted");
  } else {
    // synthetic source: train the fixed regressor on the standard mixture,
    // evaluate it on a fresh uniform test set
    ds::SyntheticSpec spec;
    spec.function_id = ds::function_id_from_string(function);
    spec.seed = opt.seed;
    const ds::Dataset train = ds::gen_synthetic(spec);
    const ds::KernelRidgeModel model = ds::krr_fit(train.x, train.y, 10.0, 10.0);
    ds::SyntheticSpec test_spec = spec;
    test_spec.seed = spec.seed + 0x9e3779b9ULL;  // independent stream
    test_spec.train_uniform_n = test_n;
    test_spec.train_normal_n = 0;
    const ds::Dataset test = ds::gen_synthetic(test_spec);
    x = test.x.col(0);
    a = test.y;
    p = ds::krr_predict(model, test.x);
  }
  ds::StudyOptions so = study_options(opt);
  so.oracle_weights = oracle;
  write_study(ds::run_chunk_study(x, a, p, so, k, reps), opt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("DENSISCORE_THREADS")) {
    const int t = std::atoi(threads);
    if (t > 0) omp_set_num_threads(t);
  }

  CLI::App app{"distribution-invariant regression metrics"};
  app.require_subcommand(1);

  // density fit
  auto* density = app.add_subcommand("density", "density estimation");
  density->require_subcommand(1);
  auto* density_fit = density->add_subcommand("fit", "fit a 1-d density and emit a plot curve");
  CommonOptions fit_opt;
  std::string fit_in, fit_column, fit_curve;
  density_fit->add_option("--in", fit_in, "input CSV")->required();
  density_fit->add_option("--column", fit_column, "column to fit (default: first)");
  density_fit->add_option("--curve", fit_curve, "path for the 512-point curve CSV");
  add_common_flags(density_fit, fit_opt, /*with_modes=*/false);

  // score
  auto* score = app.add_subcommand("score", "metric report for a predictions CSV");
  CommonOptions score_opt;
  std::string score_in;
  score->add_option("--in", score_in, "CSV with columns x0..x{d-1}, actual, predicted")
      ->required();
  add_common_flags(score, score_opt);

  // bench synthetic / bench stress
  auto* bench = app.add_subcommand("bench", "invariance studies");
  bench->require_subcommand(1);

  auto* bench_syn = bench->add_subcommand("synthetic", "distribution-shift study");
  CommonOptions syn_opt;
  syn_opt.efficient = true;
  std::string syn_function = "f1";
  int syn_test_n = 1000;
  double syn_gamma = 10.0, syn_lambda = 10.0;
  bench_syn->add_option("--function", syn_function)->check(CLI::IsMember({"f1", "f2", "f3"}));
  bench_syn->add_option("--test-n", syn_test_n, "samples per test set")->check(CLI::Range(200, 1000000));
  bench_syn->add_option("--krr-gamma", syn_gamma, "RBF width of the fixed regressor");
  bench_syn->add_option("--krr-lambda", syn_lambda, "ridge strength of the fixed regressor");
  add_common_flags(bench_syn, syn_opt);

  auto* bench_stress = bench->add_subcommand("stress", "chunk-augmentation study");
  CommonOptions stress_opt;
  stress_opt.efficient = true;
  std::string stress_in, stress_function = "f2";
  int stress_k = 5, stress_reps = 5, stress_test_n = 1000;
  bool stress_oracle = false;
  bench_stress->add_option("--in", stress_in, "CSV with columns x0, actual, predicted");
  bench_stress->add_option("--function", stress_function, "synthetic source when no --in")
      ->check(CLI::IsMember({"f1", "f2", "f3"}));
  bench_stress->add_option("--k", stress_k, "number of chunks");
  bench_stress->add_option("--reps", stress_reps, "replications of the augmented chunk");
  bench_stress->add_option("--test-n", stress_test_n, "synthetic test set size");
  bench_stress->add_flag("--oracle-weights", stress_oracle,
                         "use exact inverse-replication weights instead of KDE weights");
  add_common_flags(bench_stress, stress_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (density_fit->parsed()) return cmd_density_fit(fit_in, fit_column, fit_opt, fit_curve);
    if (score->parsed()) return cmd_score(score_in, score_opt);
    if (bench_syn->parsed()) return cmd_bench_synthetic(syn_function, syn_test_n, syn_gamma, syn_lambda, syn_opt);
    if (bench_stress->parsed())
      return cmd_bench_stress(stress_in, stress_function, stress_k, stress_reps, stress_oracle,
                              stress_test_n, stress_opt);
  } catch (const ds::CsvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ds::DegenerateSample& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

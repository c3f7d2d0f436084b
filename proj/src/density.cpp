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

#include "densiscore/density.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "densiscore/kernels.hpp"

namespace densiscore {

namespace {

constexpr double kIqrToSigma = 1.349;
constexpr int kPresearchPoints = 40;
constexpr double kBracketFactor = 20.0;
constexpr double kGoldenTolerance = 1e-3;  // relative, in log-bandwidth
constexpr Eigen::Index kEfficientBlockCap = 500;

double quantile_sorted(const std::vector<double>& v, double q) {
  const double pos = q * double(v.size() - 1);
  const size_t lo = size_t(pos);
  const size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - double(lo);
  return v[lo] + (v[hi] - v[lo]) * frac;
}

// Searches objective(scale * base) over scale in [1/20, 20] (log axis):
// log-grid presearch, then golden-section refinement around the best grid
// point. Ties break toward the larger bandwidth.
Eigen::VectorXd minimize_over_scale(const Eigen::VectorXd& base,
                                    const std::function<double(const Eigen::VectorXd&)>& objective) {
  const double lo = std::log(1.0 / kBracketFactor);
  const double hi = std::log(kBracketFactor);
  const double step = (hi - lo) / double(kPresearchPoints - 1);

  double best_obj = std::numeric_limits<double>::infinity();
  double best_log = 0.0;
  bool any_finite = false;
  auto consider = [&](double log_scale) {
    const double obj = objective(std::exp(log_scale) * base);
    if (std::isfinite(obj)) {
      any_finite = true;
      if (obj < best_obj || (obj == best_obj && log_scale > best_log)) {
        best_obj = obj;
        best_log = log_scale;
      }
    }
    return std::isfinite(obj) ? obj : std::numeric_limits<double>::infinity();
  };

  int best_idx = -1;
  {
    double grid_best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kPresearchPoints; ++i) {
      const double obj = consider(lo + double(i) * step);
      if (obj <= grid_best) {
        grid_best = obj;
        best_idx = i;
      }
    }
  }
  if (!any_finite) throw OptimizationFailed("no bandwidth candidate produced a finite objective");

  double a = lo + double(std::max(best_idx - 1, 0)) * step;
  double b = lo + double(std::min(best_idx + 1, kPresearchPoints - 1)) * step;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = consider(x1);
  double f2 = consider(x2);
  while (b - a > kGoldenTolerance) {
    if (f1 > f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = consider(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = consider(x1);
    }
  }
  return std::exp(best_log) * base;
}

Eigen::VectorXd pick_from_grid(const DataSample& sample, const Eigen::VectorXd& base,
                               const std::vector<double>& grid,
                               const std::function<double(const Eigen::VectorXd&)>& objective) {
  if (grid.empty()) throw OptimizationFailed("empty bandwidth grid");
  std::vector<double> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  double best_obj = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_h;
  for (double g : sorted) {
    Eigen::VectorXd h = sample.dim() == 1 ? Eigen::VectorXd::Constant(1, g)
                                          : Eigen::VectorXd(g * base);
    const double obj = objective(h);
    if (std::isfinite(obj) && obj <= best_obj) {
      best_obj = obj;
      best_h = h;
    }
  }
  if (best_h.size() == 0) throw OptimizationFailed("no bandwidth candidate produced a finite objective");
  return best_h;
}

Bandwidth cv_bandwidth(const DataSample& sample, BandwidthMethod method,
                       const std::vector<double>* grid) {
  if (sample.n() < 10) throw TooFewSamples("cross-validated bandwidth needs n >= 10");
  const Eigen::VectorXd base = bandwidth_scott(sample).h;
  const auto objective = [&](const Eigen::VectorXd& h) {
    return method == BandwidthMethod::cv_ml ? cv_ml_objective(sample, h)
                                            : cv_ls_objective(sample, h);
  };
  Bandwidth bw;
  bw.method = method;
  bw.h = grid ? pick_from_grid(sample, base, *grid, objective)
              : minimize_over_scale(base, objective);
  return bw;
}

std::vector<std::vector<Eigen::Index>> random_blocks(Eigen::Index n, Eigen::Index cap) {
  std::vector<Eigen::Index> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  // fixed seed: block assignment must not depend on run or thread count
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::shuffle(idx.begin(), idx.end(), rng);
  const Eigen::Index nblocks = (n + cap - 1) / cap;
  const Eigen::Index base = n / nblocks;
  const Eigen::Index rem = n % nblocks;
  std::vector<std::vector<Eigen::Index>> blocks;
  size_t offset = 0;
  for (Eigen::Index b = 0; b < nblocks; ++b) {
    const Eigen::Index size = base + (b < rem ? 1 : 0);
    blocks.emplace_back(idx.begin() + long(offset), idx.begin() + long(offset) + long(size));
    offset += size_t(size);
  }
  return blocks;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

DataSample::DataSample(Eigen::MatrixXd pts) : points(std::move(pts)) {
  if (points.rows() < 1) throw TooFewSamples("DataSample requires n >= 1");
  if (points.cols() < 1) throw DimensionMismatch("DataSample requires d >= 1");
  if (!points.allFinite()) throw Error("DataSample entries must be finite");
}

DataSample DataSample::from_vector(const Eigen::VectorXd& v) {
  Eigen::MatrixXd m(v.size(), 1);
  m.col(0) = v;
  return DataSample(std::move(m));
}

std::string to_string(BandwidthMethod m) {
  switch (m) {
    case BandwidthMethod::scott: return "scott";
    case BandwidthMethod::silverman: return "silverman";
    case BandwidthMethod::cv_ml: return "cv_ml";
    case BandwidthMethod::cv_ls: return "cv_ls";
  }
  return "?";
}

BandwidthMethod bandwidth_method_from_string(const std::string& s) {
  if (s == "scott") return BandwidthMethod::scott;
  if (s == "silverman") return BandwidthMethod::silverman;
  if (s == "cv_ml" || s == "cv-ml") return BandwidthMethod::cv_ml;
  if (s == "cv_ls" || s == "cv-ls") return BandwidthMethod::cv_ls;
  throw Error("unknown bandwidth method: " + s);
}

Eigen::VectorXd robust_scale(const DataSample& sample) {
  const Eigen::Index n = sample.n();
  if (n < 2) throw TooFewSamples("bandwidth selection needs n >= 2");
  const Eigen::Index d = sample.dim();
  Eigen::VectorXd scale(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const Eigen::VectorXd col = sample.points.col(j);
    const double mean = col.mean();
    const double sd = std::sqrt((col.array() - mean).square().sum() / double(n - 1));
    std::vector<double> sorted(col.data(), col.data() + n);
    std::sort(sorted.begin(), sorted.end());
    const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    if (sd <= 0.0) throw DegenerateSample("zero spread in dimension " + std::to_string(j));
    scale(j) = iqr > 0.0 ? std::min(sd, iqr / kIqrToSigma) : sd;
  }
  return scale;
}

Bandwidth bandwidth_scott(const DataSample& sample) {
  const double factor = std::pow(double(sample.n()), -1.0 / double(sample.dim() + 4));
  return Bandwidth{robust_scale(sample) * factor, BandwidthMethod::scott, false};
}

Bandwidth bandwidth_silverman(const DataSample& sample) {
  const double d = double(sample.dim());
  const double factor = std::pow(double(sample.n()) * (d + 2.0) / 4.0, -1.0 / (d + 4.0));
  return Bandwidth{robust_scale(sample) * factor, BandwidthMethod::silverman, false};
}

double cv_ml_objective(const DataSample& sample, const Eigen::VectorXd& h) {
  const double ll = kernels::loo_log_likelihood(sample.points, h);
  return std::isfinite(ll) ? -ll : std::numeric_limits<double>::infinity();
}

double cv_ls_objective(const DataSample& sample, const Eigen::VectorXd& h) {
  const double obj = kernels::lscv_objective(sample.points, h);
  return std::isfinite(obj) ? obj : std::numeric_limits<double>::infinity();
}

Bandwidth bandwidth_cv_ml(const DataSample& sample, const std::vector<double>* grid) {
  return cv_bandwidth(sample, BandwidthMethod::cv_ml, grid);
}

Bandwidth bandwidth_cv_ls(const DataSample& sample, const std::vector<double>* grid) {
  return cv_bandwidth(sample, BandwidthMethod::cv_ls, grid);
}

DensityModel DensityModel::gaussian_kde(DataSample training, Bandwidth bandwidth) {
  if (bandwidth.h.size() != training.dim())
    throw DimensionMismatch("bandwidth dimension does not match sample");
  if ((bandwidth.h.array() <= 0.0).any()) throw Error("bandwidth must be positive");
  DensityModel m;
  m.kind_ = Kind::gaussian_kde;
  m.training_ = std::move(training.points);
  m.bandwidth_ = std::move(bandwidth);
  return m;
}

DensityModel DensityModel::histogram(std::vector<double> edges, std::vector<double> masses) {
  if (edges.size() < 2 || masses.size() + 1 != edges.size())
    throw Error("histogram needs k+1 edges for k bins");
  for (size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) throw Error("histogram edges must be strictly increasing");
  }
  DensityModel m;
  m.kind_ = Kind::histogram;
  m.edges_ = std::move(edges);
  m.masses_ = std::move(masses);
  return m;
}

Eigen::Index DensityModel::dim() const {
  return kind_ == Kind::gaussian_kde ? training_.cols() : 1;
}

Eigen::VectorXd DensityModel::evaluate(const Eigen::MatrixXd& points) const {
  if (points.cols() != dim()) throw DimensionMismatch("query dimension does not match model");
  if (kind_ == Kind::gaussian_kde) {
    return kernels::kde_evaluate(training_, bandwidth_.h, points);
  }
  Eigen::VectorXd out(points.rows());
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    out(i) = evaluate_scalar(points(i, 0));
  }
  return out;
}

double DensityModel::evaluate_scalar(double t) const {
  if (kind_ == Kind::gaussian_kde) {
    Eigen::MatrixXd q(1, 1);
    q(0, 0) = t;
    return evaluate(q)(0);
  }
  if (t < edges_.front() || t > edges_.back()) return kHistogramFloor;
  auto it = std::upper_bound(edges_.begin(), edges_.end(), t);
  size_t bin = size_t(std::distance(edges_.begin(), it));
  bin = bin == 0 ? 0 : bin - 1;
  if (bin >= masses_.size()) bin = masses_.size() - 1;  // t == last edge
  return masses_[bin] / (edges_[bin + 1] - edges_[bin]);
}

DensityModel fit(const DataSample& sample, BandwidthMethod method, bool efficient) {
  Bandwidth bw;
  switch (method) {
    case BandwidthMethod::scott:
      bw = bandwidth_scott(sample);
      break;
    case BandwidthMethod::silverman:
      bw = bandwidth_silverman(sample);
      break;
    case BandwidthMethod::cv_ml:
    case BandwidthMethod::cv_ls: {
      const Eigen::Index n = sample.n();
      if (efficient && n > kEfficientBlockCap) {
        const Eigen::Index d = sample.dim();
        const auto blocks = random_blocks(n, kEfficientBlockCap);
        std::vector<Eigen::VectorXd> block_h;
        for (const auto& block : blocks) {
          Eigen::MatrixXd sub(Eigen::Index(block.size()), d);
          for (size_t r = 0; r < block.size(); ++r) sub.row(Eigen::Index(r)) = sample.points.row(block[r]);
          const Bandwidth hb = cv_bandwidth(DataSample(std::move(sub)), method, nullptr);
          const double rescale = std::pow(double(block.size()) / double(n), 1.0 / double(d + 4));
          block_h.push_back(hb.h * rescale);
        }
        bw.h.resize(d);
        for (Eigen::Index j = 0; j < d; ++j) {
          std::vector<double> hs;
          for (const auto& h : block_h) hs.push_back(h(j));
          bw.h(j) = median(std::move(hs));
        }
        bw.method = method;
        bw.efficient = true;
      } else {
        bw = cv_bandwidth(sample, method, nullptr);
      }
      break;
    }
  }
  return DensityModel::gaussian_kde(sample, std::move(bw));
}

DensityModel histogram_density(const DataSample& sample) {
  if (sample.dim() != 1) throw DimensionMismatch("histogram density is 1-d only");
  const Eigen::Index n = sample.n();
  if (n < 4) throw TooFewSamples("histogram density needs n >= 4");
  std::vector<double> sorted(sample.points.col(0).data(), sample.points.col(0).data() + n);
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();
  const double range = hi - lo;
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  if (iqr <= 0.0 && range <= 0.0) throw DegenerateSample("histogram input has zero spread");

  double width = 2.0 * iqr * std::pow(double(n), -1.0 / 3.0);
  width = std::max(width, range / 1024.0);
  const Eigen::Index nbins = std::max<Eigen::Index>(1, Eigen::Index(std::ceil(range / width)));
  width = range / double(nbins);  // snap so the edges exactly cover [lo, hi]

  std::vector<double> edges(size_t(nbins) + 1);
  for (Eigen::Index b = 0; b <= nbins; ++b) edges[size_t(b)] = lo + double(b) * width;
  edges.back() = hi;

  std::vector<double> masses(size_t(nbins), 0.0);
  for (double x : sorted) {
    auto bin = Eigen::Index((x - lo) / width);
    bin = std::clamp<Eigen::Index>(bin, 0, nbins - 1);
    masses[size_t(bin)] += 1.0 / double(n);
  }
  return DensityModel::histogram(std::move(edges), std::move(masses));
}

}  // namespace densiscore

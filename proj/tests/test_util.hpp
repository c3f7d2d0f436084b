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
#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace testutil {

inline std::mt19937_64 rng(unsigned seed) { return std::mt19937_64(seed); }

inline Eigen::VectorXd normal_vec(std::mt19937_64& gen, int n, double mean = 0.0,
                                  double sd = 1.0) {
  std::normal_distribution<double> dist(mean, sd);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = dist(gen);
  return v;
}

inline Eigen::VectorXd uniform_vec(std::mt19937_64& gen, int n, double lo = 0.0,
                                   double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = dist(gen);
  return v;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

// Coefficient of determination of `estimate` against `truth` over a grid.
inline double grid_cod(const Eigen::VectorXd& estimate, const Eigen::VectorXd& truth) {
  const double mean = truth.mean();
  const double sse = (estimate - truth).squaredNorm();
  const double sst = (truth.array() - mean).square().sum();
  return 1.0 - sse / sst;
}

// Trapezoid integral of a model-evaluated 1-d density over [lo, hi].
inline double trapezoid(const std::function<double(double)>& f, double lo, double hi,
                        int nodes) {
  const double step = (hi - lo) / double(nodes - 1);
  double total = 0.5 * (f(lo) + f(hi));
  for (int i = 1; i + 1 < nodes; ++i) total += f(lo + step * double(i));
  return total * step;
}

// An analytic 1-d density with a sampler, used as ground truth in recovery
// tests: pdf, support bounds for numeric CDF inversion, and a sampler.
struct AnalyticDensity {
  std::string name;
  std::function<double(double)> pdf;
  double support_lo = 0.0;
  double support_hi = 0.0;
  std::function<double(std::mt19937_64&)> sample;

  // Quantile by inverting a tabulated trapezoid CDF on [support_lo, support_hi].
  Eigen::VectorXd quantile_grid(double p_lo, double p_hi, int points) const {
    const int table = 20001;
    const double step = (support_hi - support_lo) / double(table - 1);
    std::vector<double> xs(table), cdf(table);
    xs[0] = support_lo;
    cdf[0] = 0.0;
    double prev = pdf(support_lo);
    for (int i = 1; i < table; ++i) {
      xs[i] = support_lo + step * double(i);
      const double cur = pdf(xs[i]);
      cdf[i] = cdf[i - 1] + 0.5 * (prev + cur) * step;
      prev = cur;
    }
    const double total = cdf[table - 1];
    Eigen::VectorXd grid(points);
    for (int k = 0; k < points; ++k) {
      const double p = (p_lo + (p_hi - p_lo) * double(k) / double(points - 1)) * total;
      const auto it = std::lower_bound(cdf.begin(), cdf.end(), p);
      const int j = int(std::clamp<long>(it - cdf.begin(), 1, table - 1));
      const double span = cdf[j] - cdf[j - 1];
      const double frac = span > 0.0 ? (p - cdf[j - 1]) / span : 0.5;
      grid(k) = xs[j - 1] + frac * step;
    }
    return grid;
  }

  Eigen::VectorXd draw(std::mt19937_64& gen, int n) const {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = sample(gen);
    return v;
  }
};

inline double normal_pdf(double x, double mu, double sd) {
  const double z = (x - mu) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * M_PI));
}

inline std::vector<AnalyticDensity> density_families() {
  std::vector<AnalyticDensity> out;

  out.push_back({"gaussian", [](double x) { return normal_pdf(x, 0.0, 1.0); }, -9.0, 9.0,
                 [](std::mt19937_64& g) {
                   std::normal_distribution<double> d(0.0, 1.0);
                   return d(g);
                 }});

  // Three well-separated components with a sharp central mode.
  out.push_back({"mixture3",
                 [](double x) {
                   return 0.25 * normal_pdf(x, -10.0, 1.0) +
                          0.5 * normal_pdf(x, 0.0, 0.3) +
                          0.25 * normal_pdf(x, 10.0, 1.0);
                 },
                 -16.0, 16.0,
                 [](std::mt19937_64& g) {
                   std::uniform_real_distribution<double> u(0.0, 1.0);
                   std::normal_distribution<double> d(0.0, 1.0);
                   const double r = u(g);
                   if (r < 0.25) return -10.0 + d(g);
                   if (r < 0.5) return 10.0 + d(g);
                   return 0.3 * d(g);
                 }});

  out.push_back({"laplace", [](double x) { return 0.5 * std::exp(-std::abs(x)); }, -40.0,
                 40.0,
                 [](std::mt19937_64& g) {
                   std::uniform_real_distribution<double> u(1e-12, 1.0);
                   std::bernoulli_distribution side(0.5);
                   const double e = -std::log(u(g));
                   return side(g) ? e : -e;
                 }});

  // Chi-square with 3 degrees of freedom: pdf = sqrt(x) exp(-x/2) / sqrt(2 pi).
  out.push_back({"chisq3",
                 [](double x) {
                   return x <= 0.0 ? 0.0
                                   : std::sqrt(x) * std::exp(-0.5 * x) /
                                         std::sqrt(2.0 * M_PI);
                 },
                 0.0, 60.0,
                 [](std::mt19937_64& g) {
                   std::normal_distribution<double> d(0.0, 1.0);
                   const double a = d(g), b = d(g), c = d(g);
                   return a * a + b * b + c * c;
                 }});

  out.push_back({"uniform_gaussian",
                 [](double x) {
                   const double u = (x >= -3.0 && x <= 0.0) ? 1.0 / 3.0 : 0.0;
                   return 0.35 * u + 0.65 * normal_pdf(x, 2.0, 0.3);
                 },
                 -8.0, 8.0,
                 [](std::mt19937_64& g) {
                   std::bernoulli_distribution pick(0.35);
                   if (pick(g)) {
                     std::uniform_real_distribution<double> u(-3.0, 0.0);
                     return u(g);
                   }
                   std::normal_distribution<double> d(2.0, 0.3);
                   return d(g);
                 }});

  return out;
}

}  // namespace testutil

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

#include "densiscore/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "densiscore/sum.hpp"

namespace densiscore::kernels {

namespace {

std::vector<double> sorted_column(const Eigen::MatrixXd& m) {
  std::vector<double> v(m.col(0).data(), m.col(0).data() + m.rows());
  std::sort(v.begin(), v.end());
  return v;
}

// Sum of exp(-0.5 * ((t - x_j)/h)^2) over the sorted values within the cutoff
// window around t.
double window_kernel_sum(const std::vector<double>& sorted, double t, double h) {
  const double half_width = kGaussianCutoff * h;
  const auto lo = std::lower_bound(sorted.begin(), sorted.end(), t - half_width);
  const auto hi = std::upper_bound(lo, sorted.end(), t + half_width);
  double s = 0.0;
  for (auto it = lo; it != hi; ++it) {
    const double u = (t - *it) / h;
    s += std::exp(-0.5 * u * u);
  }
  return s;
}

// Product-kernel exponent for one (query, train) row pair; returns +inf when
// the pair is outside the cutoff in aggregate.
double pair_exponent(const Eigen::MatrixXd& train, Eigen::Index i, const Eigen::MatrixXd& query,
                     Eigen::Index q, const Eigen::VectorXd& h, double cutoff_sq) {
  double usq = 0.0;
  for (Eigen::Index j = 0; j < train.cols(); ++j) {
    const double u = (query(q, j) - train(i, j)) / h(j);
    usq += u * u;
    if (usq > cutoff_sq) return std::numeric_limits<double>::infinity();
  }
  return usq;
}

}  // namespace

Eigen::VectorXd kde_evaluate(const Eigen::MatrixXd& train, const Eigen::VectorXd& h,
                             const Eigen::MatrixXd& query) {
  const Eigen::Index n = train.rows();
  const Eigen::Index d = train.cols();
  const Eigen::Index m = query.rows();
  const double norm = std::pow(kInvSqrt2Pi, double(d)) / (double(n) * h.prod());
  Eigen::VectorXd out(m);

  if (d == 1) {
    const std::vector<double> sorted = sorted_column(train);
    const double bw = h(0);
#pragma omp parallel for schedule(static)
    for (Eigen::Index q = 0; q < m; ++q) {
      out(q) = norm * window_kernel_sum(sorted, query(q, 0), bw);
    }
    return out;
  }

  const double cutoff_sq = kGaussianCutoff * kGaussianCutoff;
#pragma omp parallel for schedule(static)
  for (Eigen::Index q = 0; q < m; ++q) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double usq = pair_exponent(train, i, query, q, h, cutoff_sq);
      if (std::isfinite(usq)) s += std::exp(-0.5 * usq);
    }
    out(q) = norm * s;
  }
  return out;
}

Eigen::VectorXd kde_evaluate_serial(const Eigen::MatrixXd& train, const Eigen::VectorXd& h,
                                    const Eigen::MatrixXd& query) {
  const Eigen::Index n = train.rows();
  const Eigen::Index d = train.cols();
  const Eigen::Index m = query.rows();
  const double norm = std::pow(kInvSqrt2Pi, double(d)) / (double(n) * h.prod());
  Eigen::VectorXd out(m);
  for (Eigen::Index q = 0; q < m; ++q) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double usq = 0.0;
      for (Eigen::Index j = 0; j < d; ++j) {
        const double u = (query(q, j) - train(i, j)) / h(j);
        usq += u * u;
      }
      s += std::exp(-0.5 * usq);
    }
    out(q) = norm * s;
  }
  return out;
}

double loo_log_likelihood(const Eigen::MatrixXd& train, const Eigen::VectorXd& h) {
  const Eigen::Index n = train.rows();
  const Eigen::Index d = train.cols();
  const double norm = std::pow(kInvSqrt2Pi, double(d)) / (double(n - 1) * h.prod());
  std::vector<double> terms(static_cast<size_t>(n));
  bool invalid = false;

  if (d == 1) {
    const std::vector<double> sorted = sorted_column(train);
    const double bw = h(0);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
      // self term is exp(0) = 1, always inside the window
      const double s = window_kernel_sum(sorted, sorted[size_t(i)], bw) - 1.0;
      const double g = norm * s;
      if (g <= 0.0) {
#pragma omp atomic write
        invalid = true;
        terms[size_t(i)] = 0.0;
      } else {
        terms[size_t(i)] = std::log(g);
      }
    }
  } else {
    const double cutoff_sq = kGaussianCutoff * kGaussianCutoff;
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
      double s = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        const double usq = pair_exponent(train, j, train, i, h, cutoff_sq);
        if (std::isfinite(usq)) s += std::exp(-0.5 * usq);
      }
      const double g = norm * s;
      if (g <= 0.0) {
#pragma omp atomic write
        invalid = true;
        terms[size_t(i)] = 0.0;
      } else {
        terms[size_t(i)] = std::log(g);
      }
    }
  }
  if (invalid) return -std::numeric_limits<double>::infinity();
  return compensated_total(terms);
}

double loo_log_likelihood_serial(const Eigen::MatrixXd& train, const Eigen::VectorXd& h) {
  const Eigen::Index n = train.rows();
  const Eigen::Index d = train.cols();
  const double norm = std::pow(kInvSqrt2Pi, double(d)) / (double(n - 1) * h.prod());
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      double usq = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) {
        const double u = (train(i, k) - train(j, k)) / h(k);
        usq += u * u;
      }
      s += std::exp(-0.5 * usq);
    }
    const double g = norm * s;
    if (g <= 0.0) return -std::numeric_limits<double>::infinity();
    total += std::log(g);
  }
  return total;
}

double lscv_objective(const Eigen::MatrixXd& train, const Eigen::VectorXd& h) {
  const Eigen::Index n = train.rows();
  const Eigen::Index d = train.cols();
  const double nd = double(n);
  // integral of g^2: Gaussian double sum at bandwidth h*sqrt(2)
  const double int_norm =
      std::pow(kInvSqrt2Pi, double(d)) / (nd * nd * std::pow(std::sqrt(2.0), double(d)) * h.prod());
  const double loo_norm = std::pow(kInvSqrt2Pi, double(d)) / ((nd - 1.0) * h.prod());

  std::vector<double> int_terms(static_cast<size_t>(n));
  std::vector<double> loo_terms(static_cast<size_t>(n));

  if (d == 1) {
    const std::vector<double> sorted = sorted_column(train);
    const double bw = h(0);
    const double bw2 = bw * std::sqrt(2.0);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
      const double t = sorted[size_t(i)];
      int_terms[size_t(i)] = window_kernel_sum(sorted, t, bw2);
      loo_terms[size_t(i)] = window_kernel_sum(sorted, t, bw) - 1.0;
    }
  } else {
    const double cutoff_sq = kGaussianCutoff * kGaussianCutoff;
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
      double si = 0.0;
      double sl = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        const double usq = pair_exponent(train, j, train, i, h, 2.0 * cutoff_sq);
        if (std::isfinite(usq)) {
          if (usq <= cutoff_sq && j != i) sl += std::exp(-0.5 * usq);
          si += std::exp(-0.25 * usq);
        }
      }
      int_terms[size_t(i)] = si;
      loo_terms[size_t(i)] = sl;
    }
  }

  const double integral = int_norm * compensated_total(int_terms);
  const double loo_mean = (2.0 / nd) * loo_norm * compensated_total(loo_terms);
  return integral - loo_mean;
}

double lscv_objective_serial(const Eigen::MatrixXd& train, const Eigen::VectorXd& h) {
  const Eigen::Index n = train.rows();
  const Eigen::Index d = train.cols();
  const double nd = double(n);
  const double int_norm =
      std::pow(kInvSqrt2Pi, double(d)) / (nd * nd * std::pow(std::sqrt(2.0), double(d)) * h.prod());
  const double loo_norm = std::pow(kInvSqrt2Pi, double(d)) / ((nd - 1.0) * h.prod());
  double integral = 0.0;
  double loo = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double usq = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) {
        const double u = (train(i, k) - train(j, k)) / h(k);
        usq += u * u;
      }
      integral += std::exp(-0.25 * usq);
      if (j != i) loo += std::exp(-0.5 * usq);
    }
  }
  return int_norm * integral - (2.0 / nd) * loo_norm * loo;
}

Eigen::MatrixXd rbf_gram(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double gamma) {
  const Eigen::Index na = a.rows();
  const Eigen::Index nb = b.rows();
  Eigen::MatrixXd k(na, nb);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < nb; ++j) {
      k(i, j) = std::exp(-gamma * (a.row(i) - b.row(j)).squaredNorm());
    }
  }
  return k;
}

Eigen::MatrixXd rbf_gram_serial(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double gamma) {
  const Eigen::Index na = a.rows();
  const Eigen::Index nb = b.rows();
  Eigen::MatrixXd k(na, nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < nb; ++j) {
      k(i, j) = std::exp(-gamma * (a.row(i) - b.row(j)).squaredNorm());
    }
  }
  return k;
}

}  // namespace densiscore::kernels

// augsel/kernels.hpp
//
// Copyright 2026 The augsel authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "augsel/errors.hpp"

namespace augsel {

/// n x n kernel matrix; symmetric, PSD for the constructors below.
using GramMatrix = Eigen::MatrixXd;

/// A (conditional) dependence value together with the sample count and the
/// regularizer it was computed at. Scores are only comparable at equal
/// epsilon.
struct DependenceScore {
  double value = 0.0;
  int n = 0;
  double epsilon = 0.0;
};

/// K[i][j] = exp(-||x_i - x_j||^2 / (2 sigma^2))
inline GramMatrix gaussian_gram(const std::vector<Eigen::VectorXd>& points, double sigma) {
  if (!(sigma > 0.0)) throw DataError("gaussian_gram: bandwidth must be positive");
  const auto n = static_cast<Eigen::Index>(points.size());
  for (const auto& p : points) {
    if (p.size() != points.front().size()) {
      throw DataError("gaussian_gram: points must share one dimension");
    }
  }
  GramMatrix k(n, n);
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d2 = (points[static_cast<std::size_t>(i)] - points[static_cast<std::size_t>(j)])
                            .squaredNorm();
      const double v = std::exp(-d2 * inv);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

/// K[i][j] = 1 if labels match, else 0.
template <class Label>
GramMatrix delta_gram(const std::vector<Label>& labels) {
  if (labels.empty()) throw DataError("delta_gram: need at least one label");
  const auto n = static_cast<Eigen::Index>(labels.size());
  GramMatrix k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      k(i, j) = labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)] ? 1.0
                                                                                           : 0.0;
    }
  }
  return k;
}

/// HKH with H = I - (1/n) 11^T, computed through row/column mean removal.
inline GramMatrix center_gram(const GramMatrix& k) {
  if (k.rows() != k.cols()) throw DataError("center_gram: matrix must be square");
  const Eigen::VectorXd row_mean = k.rowwise().mean();
  const Eigen::RowVectorXd col_mean = k.colwise().mean();
  const double total_mean = k.mean();
  GramMatrix out = k;
  out.colwise() -= row_mean;
  out.rowwise() -= col_mean;
  out.array() += total_mean;
  return out;
}

/// Median of pairwise Euclidean distances over distinct index pairs;
/// falls back to 1.0 when the median vanishes (all points identical).
inline double median_heuristic(const std::vector<Eigen::VectorXd>& points) {
  if (points.size() < 2) throw DataError("median_heuristic: need at least two points");
  std::vector<double> dists;
  dists.reserve(points.size() * (points.size() - 1) / 2);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      dists.push_back((points[i] - points[j]).norm());
    }
  }
  const std::size_t m = dists.size();
  auto mid = dists.begin() + static_cast<std::ptrdiff_t>(m / 2);
  std::nth_element(dists.begin(), mid, dists.end());
  double median = *mid;
  if (m % 2 == 0) {
    auto lower = std::max_element(dists.begin(), mid);
    median = 0.5 * (median + *lower);
  }
  return median > 0.0 ? median : 1.0;
}

/// Biased HSIC estimator trace(HKH HLH) / (n-1)^2.
inline DependenceScore hsic_biased(const GramMatrix& k, const GramMatrix& l) {
  if (k.rows() != l.rows() || k.cols() != l.cols() || k.rows() != k.cols()) {
    throw DataError("hsic_biased: Gram matrices must be square and equal-sized");
  }
  const auto n = k.rows();
  if (n < 2) throw DataError("hsic_biased: need at least two samples");
  const GramMatrix kc = center_gram(k);
  const GramMatrix lc = center_gram(l);
  const double tr = kc.cwiseProduct(lc.transpose()).sum();
  const double denom = static_cast<double>(n - 1) * static_cast<double>(n - 1);
  return {tr / denom, static_cast<int>(n), 0.0};
}

namespace detail {

/// R = Mbar (Mbar + n eps I)^(-1) for a centered Gram Mbar; computed with a
/// Cholesky solve, no explicit inverse. The regularized matrix commutes with
/// Mbar, so solving (Mbar + n eps I) X = Mbar yields R itself.
inline Eigen::MatrixXd regularized_projection(const GramMatrix& centered, double epsilon) {
  const auto n = centered.rows();
  Eigen::MatrixXd reg = centered;
  reg.diagonal().array() += static_cast<double>(n) * epsilon;
  Eigen::LLT<Eigen::MatrixXd> llt(reg);
  if (llt.info() != Eigen::Success) {
    throw NumericError("conditional_dependence: factorization failed; epsilon too small for "
                       "the conditioning of the Gram matrix");
  }
  return llt.solve(centered);
}

}  // namespace detail

/// Conditional dependence of X and Z given Y in normalized conditional
/// cross-covariance form: with R_M = Mbar (Mbar + n eps I)^(-1),
///
///   value = tr(R_x R_z) - 2 tr(R_x R_z R_y) + tr(R_x R_y R_z R_y).
///
/// Low values mean Z carries little information about X beyond Y.
inline DependenceScore conditional_dependence(const GramMatrix& gx, const GramMatrix& gz,
                                              const GramMatrix& gy, double epsilon) {
  if (gx.rows() != gx.cols() || gx.rows() != gz.rows() || gz.rows() != gz.cols() ||
      gx.rows() != gy.rows() || gy.rows() != gy.cols()) {
    throw DataError("conditional_dependence: Gram matrices must be square and equal-sized");
  }
  const auto n = gx.rows();
  if (n < 2) throw DataError("conditional_dependence: need at least two samples");
  if (!(epsilon > 0.0)) throw DataError("conditional_dependence: epsilon must be positive");

  const Eigen::MatrixXd rx = detail::regularized_projection(center_gram(gx), epsilon);
  const Eigen::MatrixXd rz = detail::regularized_projection(center_gram(gz), epsilon);
  const Eigen::MatrixXd ry = detail::regularized_projection(center_gram(gy), epsilon);

  const Eigen::MatrixXd xz = rx * rz;
  const double t1 = xz.trace();
  const double t2 = xz.cwiseProduct(ry.transpose()).sum();          // tr(R_x R_z R_y)
  const Eigen::MatrixXd xy = rx * ry;
  const Eigen::MatrixXd zy = rz * ry;
  const double t3 = xy.cwiseProduct(zy.transpose()).sum();          // tr(R_x R_y R_z R_y)

  const double value = t1 - 2.0 * t2 + t3;
  if (!std::isfinite(value)) {
    throw NumericError("conditional_dependence: non-finite score");
  }
  return {value, static_cast<int>(n), epsilon};
}

}  // namespace augsel

// Copyright 2026 The fastdda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fastdda/gaussian_process.hpp"

#include <algorithm>

namespace fastdda {

namespace {
const double kSqrt5 = std::sqrt(5.0);
}

double Matern52Kernel::at(double r) const {
  return amplitude * amplitude * (1.0 + kSqrt5 * r + (5.0 / 3.0) * r * r) *
         std::exp(-kSqrt5 * r);
}

double Matern52Kernel::operator()(const GpPoint& a, const GpPoint& b) const {
  double sq = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sq += d * d;
  }
  return at(std::sqrt(sq) / lengthscale);
}

void Matern52Kernel::validate() const {
  if (!(amplitude > 0.0) || !(lengthscale > 0.0) || !(noise_variance >= 0.0)) {
    throw std::invalid_argument(
        "Matern52Kernel: need amplitude > 0, lengthscale > 0, noise_variance >= 0");
  }
}

double factorize_with_jitter(const Eigen::MatrixXd& gram, Eigen::LLT<Eigen::MatrixXd>& llt) {
  llt.compute(gram);
  if (llt.info() == Eigen::Success) return 0.0;
  const Eigen::Index n = gram.rows();
  for (double jitter = 1e-10; jitter <= 1e-6 * 1.0001; jitter *= 10.0) {
    llt.compute(gram + jitter * Eigen::MatrixXd::Identity(n, n));
    if (llt.info() == Eigen::Success) return jitter;
  }
  throw GpFactorizationError("Cholesky factorization failed even with 1e-6 jitter");
}

GaussianProcess::GaussianProcess(Matern52Kernel kernel) : kernel_(kernel) {
  kernel_.validate();
}

void GaussianProcess::add_observation(const GpPoint& x, double prior_mean, double value) {
  xs_.push_back(x);
  residuals_.push_back(value - prior_mean);
  refactor();
}

void GaussianProcess::refactor() {
  const auto n = static_cast<Eigen::Index>(xs_.size());
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double k = kernel_(xs_[static_cast<std::size_t>(i)], xs_[static_cast<std::size_t>(j)]);
      gram(i, j) = k;
      gram(j, i) = k;
    }
    gram(i, i) += kernel_.noise_variance;
  }
  jitter_ = factorize_with_jitter(gram, llt_);
  alpha_ = llt_.solve(Eigen::Map<const Eigen::VectorXd>(residuals_.data(), n));
}

Prediction GaussianProcess::predict(const GpPoint& x, double prior_mean) const {
  const double prior_var = kernel_.at(0.0);
  if (xs_.empty()) return {prior_mean, prior_var};
  const auto n = static_cast<Eigen::Index>(xs_.size());
  Eigen::VectorXd kx(n);
  for (Eigen::Index i = 0; i < n; ++i) kx(i) = kernel_(x, xs_[static_cast<std::size_t>(i)]);
  const Eigen::VectorXd v = llt_.matrixL().solve(kx);
  Prediction p;
  p.mean = prior_mean + kx.dot(alpha_);
  p.variance = std::max(0.0, prior_var - v.squaredNorm());
  return p;
}

}  // namespace fastdda

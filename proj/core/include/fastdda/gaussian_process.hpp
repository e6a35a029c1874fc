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

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace fastdda {

using GpPoint = std::array<double, 3>;

// Matern 5/2 covariance:
//   k(x, x') = amplitude^2 (1 + sqrt(5) r + 5/3 r^2) exp(-sqrt(5) r),
//   r = |x - x'| / lengthscale.
struct Matern52Kernel {
  double amplitude = 1.0;
  double lengthscale = 1.0;
  double noise_variance = 0.1;

  double operator()(const GpPoint& a, const GpPoint& b) const;
  // Covariance at scaled distance r.
  double at(double r) const;

  void validate() const;
};

struct Prediction {
  double mean = 0.0;
  double variance = 0.0;

  double stddev() const { return std::sqrt(variance); }
};

class GpFactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// GP regression with an externally supplied prior mean. Observations are
// stored as residuals f_i - mu0(x_i); predictions return
//   mean     = mu0(x) + k(x)^T K^-1 (f - mu0(X))
//   variance = k(x, x) - k(x)^T K^-1 k(x)
// with K = [k(x_i, x_j)] + noise_variance * I. The Cholesky factor is
// rebuilt on every observation; if it fails, diagonal jitter escalates from
// 1e-10 to 1e-6 before giving up with GpFactorizationError.
class GaussianProcess {
 public:
  explicit GaussianProcess(Matern52Kernel kernel = {});

  void add_observation(const GpPoint& x, double prior_mean, double value);
  Prediction predict(const GpPoint& x, double prior_mean) const;

  std::size_t size() const { return xs_.size(); }
  double jitter() const { return jitter_; }
  const Matern52Kernel& kernel() const { return kernel_; }

 private:
  void refactor();

  Matern52Kernel kernel_;
  std::vector<GpPoint> xs_;
  std::vector<double> residuals_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd alpha_;
  double jitter_ = 0.0;
};

// Factorizes `gram` (already including any noise term), escalating diagonal
// jitter 0, 1e-10, 1e-9, ..., 1e-6. Returns the jitter that worked.
double factorize_with_jitter(const Eigen::MatrixXd& gram, Eigen::LLT<Eigen::MatrixXd>& llt);

}  // namespace fastdda

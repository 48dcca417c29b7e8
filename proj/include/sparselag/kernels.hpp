#pragma once

// Data-parallel inner loops shared by the fitting pipeline. Every kernel has a
// serial twin in kernels::serial with the same per-element summation order, so
// the two agree bit for bit and the serial one serves as the test reference.

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace sparselag::kernels {

/// Lag-j sums  sum_{t>=j} (y_t - mean)(y_{t-j} - mean)  for j = 0..max_lag.
std::vector<double> autocovariance_sums(std::span<const double> values, std::size_t max_lag);

/// X^T X for a column-major design. Only the upper triangle is computed and mirrored.
Eigen::MatrixXd gram(const Eigen::MatrixXd& x);

/// X^T y.
Eigen::VectorXd cross_product(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

/// Per-column mean and sample standard deviation (n - 1 divisor).
void column_moments(const Eigen::MatrixXd& x, Eigen::VectorXd& means, Eigen::VectorXd& sds);

/// Number of threads the parallel kernels will use.
int thread_count();

namespace serial {

std::vector<double> autocovariance_sums(std::span<const double> values, std::size_t max_lag);
Eigen::MatrixXd gram(const Eigen::MatrixXd& x);
Eigen::VectorXd cross_product(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);
void column_moments(const Eigen::MatrixXd& x, Eigen::VectorXd& means, Eigen::VectorXd& sds);

}  // namespace serial

}  // namespace sparselag::kernels

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <memory>
#include <vector>

namespace sparselag {

inline constexpr std::size_t kDefaultLambdaCount = 101;

struct LassoOptions {
    double tol = 1e-7;        // max absolute coefficient change per sweep
    int max_iter = 10000;     // sweeps per lambda
};

/// Sufficient statistics of a design and response for the covariance-update
/// coordinate descent: centered Gram matrix, centered X^T y and the means
/// needed to recover intercepts. Built once and shared read-only by every
/// path fit over the same data.
struct LassoData {
    Eigen::MatrixXd gram;     // Xc^T Xc
    Eigen::VectorXd xty;      // Xc^T yc
    double yty = 0.0;         // yc^T yc
    Eigen::VectorXd x_means;
    double y_mean = 0.0;
    std::size_t rows = 0;

    std::size_t cols() const { return static_cast<std::size_t>(gram.cols()); }

    /// `parallel` selects the OpenMP kernels; the serial ones give identical bits.
    static LassoData from(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, bool parallel = true);
};

struct LassoProblem {
    std::shared_ptr<const LassoData> data;
    std::vector<double> weights;       // >= 0, one per column; 0 = unpenalized
    std::vector<double> lambda_grid;   // strictly decreasing, positive
    LassoOptions options;
};

struct LassoPath {
    std::vector<double> lambdas;
    Eigen::MatrixXd betas;             // n_lambda x q
    std::vector<double> intercepts;
    std::vector<double> rss;
    std::vector<std::size_t> df;       // nonzero penalized + unpenalized + intercept
    std::vector<bool> converged;
    std::vector<int> n_iter;
    double lambda_max = 0.0;
};

/// sign(z) * max(|z| - t, 0)
inline double soft_threshold(double z, double t) {
    if (z > t) return z - t;
    if (z < -t) return z + t;
    return 0.0;
}

/// Smallest lambda at which every penalized coefficient is zero, after the
/// response has been residualized on the unpenalized columns by least squares.
double lambda_max(const LassoData& data, const std::vector<double>& weights);
double lambda_max(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const std::vector<double>& weights);

/// n_lambda log-spaced values from lambda_max down to min_ratio * lambda_max.
std::vector<double> lambda_grid(double lambda_max, std::size_t n_lambda, double min_ratio);

/// 1e-3, or 1e-2 when the design has at least as many columns as rows.
double default_min_ratio(std::size_t rows, std::size_t cols);

/// Weighted lasso path by cyclic coordinate descent with warm starts and
/// active-set cycling. Minimizes
///   (1 / 2r) ||y - b0 - X b||^2 + lambda * sum_j w_j |b_j|
/// at every lambda of the grid.
LassoPath fit_path(const LassoProblem& problem);

/// Convenience: statistics from (x, y), grid from lambda_max with the default ratio.
LassoPath fit_path(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const std::vector<double>& weights,
                   std::size_t n_lambda = kDefaultLambdaCount, LassoOptions options = {});

/// The objective above evaluated from sufficient statistics.
double lasso_objective(const LassoData& data, const std::vector<double>& weights, double lambda,
                       const Eigen::VectorXd& beta);

}  // namespace sparselag

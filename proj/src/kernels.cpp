#include "sparselag/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <numeric>

namespace sparselag::kernels {

namespace {

double mean_of(std::span<const double> values) {
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double lag_sum(std::span<const double> values, double mean, std::size_t lag) {
    double acc = 0.0;
    for (std::size_t t = lag; t < values.size(); ++t) {
        acc += (values[t] - mean) * (values[t - lag] - mean);
    }
    return acc;
}

void moments_of_column(const Eigen::MatrixXd& x, Eigen::Index j, double& mean, double& sd) {
    const auto col = x.col(j);
    const double rows = static_cast<double>(x.rows());
    mean = col.sum() / rows;
    const double ss = (col.array() - mean).square().sum();
    sd = x.rows() > 1 ? std::sqrt(ss / (rows - 1.0)) : 0.0;
}

}  // namespace

int thread_count() { return omp_get_max_threads(); }

std::vector<double> autocovariance_sums(std::span<const double> values, std::size_t max_lag) {
    std::vector<double> out(max_lag + 1, 0.0);
    if (values.empty()) return out;
    const double mean = mean_of(values);
    const auto lags = static_cast<long>(max_lag);
#pragma omp parallel for schedule(static)
    for (long j = 0; j <= lags; ++j) {
        out[static_cast<std::size_t>(j)] = lag_sum(values, mean, static_cast<std::size_t>(j));
    }
    return out;
}

Eigen::MatrixXd gram(const Eigen::MatrixXd& x) {
    const Eigen::Index q = x.cols();
    Eigen::MatrixXd g(q, q);
    // Column j costs j+1 dot products; dynamic scheduling evens that out.
#pragma omp parallel for schedule(dynamic, 4)
    for (Eigen::Index j = 0; j < q; ++j) {
        for (Eigen::Index i = 0; i <= j; ++i) {
            g(i, j) = x.col(i).dot(x.col(j));
        }
    }
    for (Eigen::Index j = 0; j < q; ++j) {
        for (Eigen::Index i = 0; i < j; ++i) g(j, i) = g(i, j);
    }
    return g;
}

Eigen::VectorXd cross_product(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    Eigen::VectorXd out(x.cols());
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        out(j) = x.col(j).dot(y);
    }
    return out;
}

void column_moments(const Eigen::MatrixXd& x, Eigen::VectorXd& means, Eigen::VectorXd& sds) {
    means.resize(x.cols());
    sds.resize(x.cols());
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        moments_of_column(x, j, means(j), sds(j));
    }
}

namespace serial {

std::vector<double> autocovariance_sums(std::span<const double> values, std::size_t max_lag) {
    std::vector<double> out(max_lag + 1, 0.0);
    if (values.empty()) return out;
    const double mean = mean_of(values);
    for (std::size_t j = 0; j <= max_lag; ++j) out[j] = lag_sum(values, mean, j);
    return out;
}

Eigen::MatrixXd gram(const Eigen::MatrixXd& x) {
    const Eigen::Index q = x.cols();
    Eigen::MatrixXd g(q, q);
    for (Eigen::Index j = 0; j < q; ++j) {
        for (Eigen::Index i = 0; i <= j; ++i) {
            g(i, j) = x.col(i).dot(x.col(j));
            g(j, i) = g(i, j);
        }
    }
    return g;
}

Eigen::VectorXd cross_product(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    Eigen::VectorXd out(x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) out(j) = x.col(j).dot(y);
    return out;
}

void column_moments(const Eigen::MatrixXd& x, Eigen::VectorXd& means, Eigen::VectorXd& sds) {
    means.resize(x.cols());
    sds.resize(x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) moments_of_column(x, j, means(j), sds(j));
}

}  // namespace serial

}  // namespace sparselag::kernels

#include "sparselag/lasso.hpp"

#include "sparselag/error.hpp"
#include "sparselag/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace sparselag {

LassoData LassoData::from(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, bool parallel) {
    if (x.rows() != y.size()) {
        throw Error(ErrorCode::config, "design and response have different row counts");
    }
    if (x.rows() == 0) {
        throw Error(ErrorCode::invalid_order, "lasso needs at least one row");
    }
    if (!x.allFinite() || !y.allFinite()) {
        throw Error(ErrorCode::parse, "design or response contains NaN or infinite values");
    }
    LassoData d;
    d.rows = static_cast<std::size_t>(x.rows());
    d.x_means = x.colwise().mean().transpose();
    d.y_mean = y.mean();
    const Eigen::VectorXd yc = y.array() - d.y_mean;
    // Standardized designs are centered up to rounding; correct the Gram
    // algebraically instead of copying the matrix.
    const bool nearly_centered = x.cols() == 0 || d.x_means.cwiseAbs().maxCoeff() <= 1e-10;
    if (nearly_centered) {
        d.gram = parallel ? kernels::gram(x) : kernels::serial::gram(x);
        d.gram.noalias() -= static_cast<double>(d.rows) * d.x_means * d.x_means.transpose();
        d.xty = parallel ? kernels::cross_product(x, yc) : kernels::serial::cross_product(x, yc);
    } else {
        const Eigen::MatrixXd xc = x.rowwise() - d.x_means.transpose();
        d.gram = parallel ? kernels::gram(xc) : kernels::serial::gram(xc);
        d.xty = parallel ? kernels::cross_product(xc, yc) : kernels::serial::cross_product(xc, yc);
    }
    d.yty = yc.squaredNorm();
    return d;
}

namespace {

struct SolverState {
    Eigen::VectorXd beta;
    Eigen::VectorXd grad;  // Xc^T (yc - Xc beta)
};

bool usable(const LassoData& d, Eigen::Index j) { return d.gram(j, j) > 0.0; }

// Unpenalized columns at their least-squares values, penalized ones at zero.
SolverState initial_state(const LassoData& d, const std::vector<double>& w) {
    const auto q = static_cast<Eigen::Index>(d.cols());
    SolverState s{Eigen::VectorXd::Zero(q), d.xty};
    std::vector<Eigen::Index> free_cols;
    for (Eigen::Index j = 0; j < q; ++j) {
        if (w[static_cast<std::size_t>(j)] == 0.0 && usable(d, j)) free_cols.push_back(j);
    }
    if (free_cols.empty()) return s;
    const auto u = static_cast<Eigen::Index>(free_cols.size());
    Eigen::MatrixXd g(u, u);
    Eigen::VectorXd c(u);
    for (Eigen::Index a = 0; a < u; ++a) {
        c(a) = d.xty(free_cols[a]);
        for (Eigen::Index b = 0; b < u; ++b) g(a, b) = d.gram(free_cols[a], free_cols[b]);
    }
    const Eigen::VectorXd sol = g.completeOrthogonalDecomposition().solve(c);
    for (Eigen::Index a = 0; a < u; ++a) s.beta(free_cols[a]) = sol(a);
    s.grad = d.xty - d.gram * s.beta;
    return s;
}

double lambda_max_from(const LassoData& d, const std::vector<double>& w, const SolverState& s) {
    const double r = static_cast<double>(d.rows);
    double best = 0.0;
    bool any = false;
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(d.cols()); ++j) {
        const double wj = w[static_cast<std::size_t>(j)];
        if (wj <= 0.0 || !usable(d, j)) continue;
        any = true;
        best = std::max(best, std::abs(s.grad(j)) / (r * wj));
    }
    if (!any) {
        throw Error(ErrorCode::numerical,
                    "no penalized column with variation: the fit reduces to least squares and has no path");
    }
    return best;
}

void check_weights(const LassoData& d, const std::vector<double>& w) {
    if (w.size() != d.cols()) {
        throw Error(ErrorCode::config, "penalty weight count does not match design columns");
    }
    for (double v : w) {
        if (!std::isfinite(v) || v < 0.0) {
            throw Error(ErrorCode::config, "penalty weights must be finite and non-negative");
        }
    }
}

// One cyclic pass over `cols`; returns the largest absolute coefficient change.
template <class Cols>
double sweep(const LassoData& d, const std::vector<double>& w, double lambda, const Cols& cols,
             SolverState& s) {
    const double r = static_cast<double>(d.rows);
    double max_change = 0.0;
    for (const Eigen::Index j : cols) {
        const double gjj = d.gram(j, j);
        const double old = s.beta(j);
        const double z = (s.grad(j) + gjj * old) / r;
        const double updated = soft_threshold(z, lambda * w[static_cast<std::size_t>(j)]) / (gjj / r);
        const double delta = updated - old;
        if (delta != 0.0) {
            s.grad.noalias() -= delta * d.gram.col(j);
            s.beta(j) = updated;
            max_change = std::max(max_change, std::abs(delta));
        }
    }
    return max_change;
}

double rss_of(const LassoData& d, const SolverState& s) {
    // yc'yc - 2 b'c + b'G b with G b = c - grad.
    const double value = d.yty - s.beta.dot(d.xty + s.grad);
    return std::max(value, 0.0);
}

}  // namespace

double lasso_objective(const LassoData& data, const std::vector<double>& weights, double lambda,
                       const Eigen::VectorXd& beta) {
    const double quad = beta.dot(data.gram * beta);
    const double rss = std::max(data.yty - 2.0 * beta.dot(data.xty) + quad, 0.0);
    double pen = 0.0;
    for (Eigen::Index j = 0; j < beta.size(); ++j) pen += weights[static_cast<std::size_t>(j)] * std::abs(beta(j));
    return rss / (2.0 * static_cast<double>(data.rows)) + lambda * pen;
}

double lambda_max(const LassoData& data, const std::vector<double>& weights) {
    check_weights(data, weights);
    return lambda_max_from(data, weights, initial_state(data, weights));
}

double lambda_max(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const std::vector<double>& weights) {
    return lambda_max(LassoData::from(x, y), weights);
}

std::vector<double> lambda_grid(double lambda_max, std::size_t n_lambda, double min_ratio) {
    if (!(lambda_max > 0.0) || n_lambda == 0 || !(min_ratio > 0.0 && min_ratio < 1.0)) {
        throw Error(ErrorCode::numerical, "invalid lambda grid request");
    }
    std::vector<double> grid(n_lambda);
    if (n_lambda == 1) {
        grid[0] = lambda_max;
        return grid;
    }
    const double step = std::log(min_ratio) / static_cast<double>(n_lambda - 1);
    for (std::size_t k = 0; k < n_lambda; ++k) {
        grid[k] = lambda_max * std::exp(step * static_cast<double>(k));
    }
    return grid;
}

double default_min_ratio(std::size_t rows, std::size_t cols) { return cols >= rows ? 1e-2 : 1e-3; }

LassoPath fit_path(const LassoProblem& problem) {
    if (!problem.data) throw Error(ErrorCode::config, "lasso problem has no data");
    const LassoData& d = *problem.data;
    const auto& w = problem.weights;
    check_weights(d, w);
    const auto& grid = problem.lambda_grid;
    if (grid.empty()) throw Error(ErrorCode::config, "empty lambda grid");
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!(grid[k] > 0.0) || (k > 0 && !(grid[k] < grid[k - 1]))) {
            throw Error(ErrorCode::config, "lambda grid must be positive and strictly decreasing");
        }
    }

    const auto q = static_cast<Eigen::Index>(d.cols());
    SolverState s = initial_state(d, w);
    const double lmax = lambda_max_from(d, w, s);

    std::vector<Eigen::Index> all_cols;
    std::size_t always_counted = 1;  // intercept
    for (Eigen::Index j = 0; j < q; ++j) {
        if (!usable(d, j)) continue;
        all_cols.push_back(j);
        if (w[static_cast<std::size_t>(j)] == 0.0) ++always_counted;
    }

    LassoPath path;
    path.lambdas = grid;
    path.lambda_max = lmax;
    path.betas.resize(static_cast<Eigen::Index>(grid.size()), q);
    path.intercepts.resize(grid.size());
    path.rss.resize(grid.size());
    path.df.resize(grid.size());
    path.converged.assign(grid.size(), true);
    path.n_iter.assign(grid.size(), 0);

    std::vector<Eigen::Index> active;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double lambda = grid[k];
        int iter = 0;
        bool done = lambda >= lmax;  // the initial state is already optimal
#ifndef NDEBUG
        double last_obj = lasso_objective(d, w, lambda, s.beta);
        auto check_descent = [&] {
            const double obj = lasso_objective(d, w, lambda, s.beta);
            assert(obj <= last_obj + 1e-10 * std::max(1.0, std::abs(last_obj)));
            last_obj = obj;
        };
#else
        auto check_descent = [] {};
#endif
        while (!done && iter < problem.options.max_iter) {
            const double change = sweep(d, w, lambda, all_cols, s);
            ++iter;
            check_descent();
            if (change < problem.options.tol) {
                done = true;
                break;
            }
            active.clear();
            for (const Eigen::Index j : all_cols) {
                if (s.beta(j) != 0.0) active.push_back(j);
            }
            while (iter < problem.options.max_iter) {
                const double inner = sweep(d, w, lambda, active, s);
                ++iter;
                check_descent();
                if (inner < problem.options.tol) break;
            }
        }
        const auto row = static_cast<Eigen::Index>(k);
        path.betas.row(row) = s.beta.transpose();
        path.intercepts[k] = d.y_mean - d.x_means.dot(s.beta);
        path.rss[k] = rss_of(d, s);
        std::size_t df = always_counted;
        for (const Eigen::Index j : all_cols) {
            if (w[static_cast<std::size_t>(j)] > 0.0 && s.beta(j) != 0.0) ++df;
        }
        path.df[k] = df;
        path.converged[k] = done;
        path.n_iter[k] = iter;
    }
    return path;
}

LassoPath fit_path(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const std::vector<double>& weights,
                   std::size_t n_lambda, LassoOptions options) {
    auto data = std::make_shared<const LassoData>(LassoData::from(x, y));
    LassoProblem problem;
    problem.data = data;
    problem.weights = weights;
    problem.options = options;
    const double lmax = lambda_max(*data, weights);
    problem.lambda_grid = lambda_grid(lmax, n_lambda, default_min_ratio(data->rows, data->cols()));
    return fit_path(problem);
}

}  // namespace sparselag

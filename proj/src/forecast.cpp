#include "sparselag/forecast.hpp"

#include "sparselag/error.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace sparselag {

namespace {

struct SparseLags {
    std::vector<std::size_t> lags;  // 1-based
    std::vector<double> coefs;
};

SparseLags sparse_lags(const ArModel& model) {
    SparseLags s;
    for (std::size_t j = 0; j < model.lag_coefs.size(); ++j) {
        if (model.lag_coefs[j] != 0.0) {
            s.lags.push_back(j + 1);
            s.coefs.push_back(model.lag_coefs[j]);
        }
    }
    return s;
}

double exog_term(const ArModel& model, const Eigen::MatrixXd& exog, Eigen::Index row) {
    double acc = 0.0;
    for (std::size_t i = 0; i < model.exog_coefs.size(); ++i) {
        acc += model.exog_coefs[i] * exog(row, static_cast<Eigen::Index>(i));
    }
    return acc;
}

// Recursion shared by every entry point. `path` holds the history followed by
// room for h predictions; exog_row(s) gives the covariate row index for step s.
template <class ExogAt>
void run_recursion(const ArModel& model, const SparseLags& lags, std::vector<double>& path, std::size_t start,
                   std::size_t h, ExogAt&& exog_at) {
    for (std::size_t s = 0; s < h; ++s) {
        const std::size_t t = start + s;
        double y = model.intercept;
        for (std::size_t a = 0; a < lags.lags.size(); ++a) y += lags.coefs[a] * path[t - lags.lags[a]];
        y += exog_at(s);
        path[t] = y;
    }
}

void check_lengths(std::span<const double> pred, std::span<const double> actual) {
    if (pred.size() != actual.size()) {
        throw Error(ErrorCode::config, "prediction and actual vectors differ in length");
    }
    if (pred.empty()) throw Error(ErrorCode::invalid_order, "accuracy metrics need at least one observation");
}

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::vector<double> predict_recursive(const ArModel& model, std::span<const double> history,
                                      const Eigen::MatrixXd& exog_future, std::size_t h) {
    const std::size_t p = model.p_star();
    if (history.size() < p) {
        std::ostringstream msg;
        msg << "forecast history has " << history.size() << " values; the model needs " << p;
        throw Error(ErrorCode::invalid_order, msg.str());
    }
    const bool needs_exog = !model.exog_coefs.empty();
    if (needs_exog && (static_cast<std::size_t>(exog_future.rows()) < h ||
                       static_cast<std::size_t>(exog_future.cols()) != model.exog_coefs.size())) {
        throw Error(ErrorCode::config, "future exogenous values are required: one row per step, one column per covariate");
    }
    std::vector<double> path(history.end() - static_cast<std::ptrdiff_t>(p), history.end());
    path.resize(p + h);
    const auto lags = sparse_lags(model);
    run_recursion(model, lags, path, p, h, [&](std::size_t s) {
        return needs_exog ? exog_term(model, exog_future, static_cast<Eigen::Index>(s)) : 0.0;
    });
    return {path.begin() + static_cast<std::ptrdiff_t>(p), path.end()};
}

std::vector<double> predict_recursive(const ArModel& model, std::span<const double> history, std::size_t h) {
    return predict_recursive(model, history, Eigen::MatrixXd(0, 0), h);
}

ForecastResult forecast_origins(const ArModel& model, const TimeSeries& series, std::size_t test_start,
                                std::size_t h, bool parallel) {
    const std::size_t n = series.size();
    const std::size_t p = model.p_star();
    if (h == 0) throw Error(ErrorCode::invalid_order, "forecast horizon must be positive");
    if (test_start < std::max<std::size_t>(p, 1) || test_start >= n) {
        std::ostringstream msg;
        msg << "test part must start after the first " << p << " observations and before n = " << n;
        throw Error(ErrorCode::invalid_order, msg.str());
    }
    if (!model.exog_coefs.empty() && series.exog_count() != model.exog_coefs.size()) {
        throw Error(ErrorCode::config, "series exogenous columns do not match the model");
    }
    ForecastResult out;
    out.horizon = h;
    out.first_origin = test_start - 1;
    const std::size_t origins = n - test_start;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.point_forecasts = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(origins), static_cast<Eigen::Index>(h), nan);
    out.actuals = out.point_forecasts;

    const auto values = series.values();
    const auto lags = sparse_lags(model);
    const bool has_exog = !model.exog_coefs.empty();
    const auto n_origins = static_cast<long>(origins);
#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i < n_origins; ++i) {
        const std::size_t t = out.first_origin + static_cast<std::size_t>(i);
        const std::size_t steps = std::min(h, n - 1 - t);
        std::vector<double> path(values.begin() + static_cast<std::ptrdiff_t>(t + 1 - p),
                                 values.begin() + static_cast<std::ptrdiff_t>(t + 1));
        path.resize(p + steps);
        run_recursion(model, lags, path, p, steps, [&](std::size_t s) {
            return has_exog ? exog_term(model, series.exog(), static_cast<Eigen::Index>(t + 1 + s)) : 0.0;
        });
        for (std::size_t s = 0; s < steps; ++s) {
            out.point_forecasts(i, static_cast<Eigen::Index>(s)) = path[p + s];
            out.actuals(i, static_cast<Eigen::Index>(s)) = values[t + 1 + s];
        }
    }

    if (origins < h) {
        out.warnings.push_back("test part is shorter than the horizon; no rolling sums");
        return out;
    }
    const std::size_t windows = origins - h + 1;
    out.rolling_sums.resize(windows);
    out.actual_rolling_sums.resize(windows);
    for (std::size_t i = 0; i < windows; ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        out.rolling_sums[i] = out.point_forecasts.row(row).sum();
        out.actual_rolling_sums[i] = out.actuals.row(row).sum();
    }
    return out;
}

RollingSums rolling_sum_forecast(const ArModel& model, const TimeSeries& series, std::size_t test_start,
                                 std::size_t h, bool parallel) {
    auto result = forecast_origins(model, series, test_start, h, parallel);
    return {std::move(result.rolling_sums), std::move(result.actual_rolling_sums), std::move(result.warnings)};
}

double rmspe(std::span<const double> pred, std::span<const double> actual) {
    check_lengths(pred, actual);
    double ss = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) ss += (pred[i] - actual[i]) * (pred[i] - actual[i]);
    return std::sqrt(ss / static_cast<double>(pred.size()));
}

double r_squared(std::span<const double> pred, std::span<const double> actual) {
    check_lengths(pred, actual);
    const double ybar = mean_of(actual);
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        ss_res += (pred[i] - actual[i]) * (pred[i] - actual[i]);
        ss_tot += (actual[i] - ybar) * (actual[i] - ybar);
    }
    if (!(ss_tot > 0.0)) throw Error(ErrorCode::degenerate, "R-squared is undefined for constant actual values");
    return 1.0 - ss_res / ss_tot;
}

double mae(std::span<const double> pred, std::span<const double> actual) {
    check_lengths(pred, actual);
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) acc += std::abs(pred[i] - actual[i]);
    return acc / static_cast<double>(pred.size());
}

double mape(std::span<const double> pred, std::span<const double> actual) {
    check_lengths(pred, actual);
    const double ybar = mean_of(actual);
    if (ybar == 0.0) throw Error(ErrorCode::degenerate, "MAPE is undefined when the mean actual value is 0");
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) acc += std::abs(pred[i] - actual[i]) / ybar;
    return 100.0 * acc / static_cast<double>(pred.size());
}

AccuracyReport accuracy(std::span<const double> pred, std::span<const double> actual) {
    AccuracyReport r;
    r.r2 = r_squared(pred, actual);
    r.rmspe = rmspe(pred, actual);
    r.mae = mae(pred, actual);
    r.mape = mape(pred, actual);
    r.n_star = pred.size();
    return r;
}

}  // namespace sparselag

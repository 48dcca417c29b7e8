#pragma once

#include "sparselag/series.hpp"
#include "sparselag/tuning.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sparselag {

/// Recursive h-step forecast from the end of `history`. Step s uses observed
/// lags where available and earlier predictions otherwise. `exog_future` has
/// one row per step when the model carries exogenous terms.
std::vector<double> predict_recursive(const ArModel& model, std::span<const double> history,
                                      const Eigen::MatrixXd& exog_future, std::size_t h);

std::vector<double> predict_recursive(const ArModel& model, std::span<const double> history, std::size_t h);

/// Forecasts from successive origins inside one series.
///
/// Row i is the origin t = first_origin + i (0-based index of the last
/// observation used). Column s - 1 holds the s-step prediction of y_{t+s};
/// cells whose target lies past the end of the series are NaN, as are the
/// matching actuals.
struct ForecastResult {
    std::size_t horizon = 0;
    std::size_t first_origin = 0;
    Eigen::MatrixXd point_forecasts;
    Eigen::MatrixXd actuals;
    std::vector<double> rolling_sums;         // origins whose h targets all exist
    std::vector<double> actual_rolling_sums;
    std::vector<std::string> warnings;
};

/// Forecast from every origin t in [test_start - 1, n - 2], the rows that
/// predict the test part y[test_start..n). `parallel` spreads origins over
/// OpenMP threads; origins are independent so the result is identical.
ForecastResult forecast_origins(const ArModel& model, const TimeSeries& series, std::size_t test_start,
                                std::size_t h, bool parallel = true);

struct RollingSums {
    std::vector<double> predicted;
    std::vector<double> actual;
    std::vector<std::string> warnings;
};

/// Sum of the 1..h step forecasts from each origin with a full h-step window
/// in the test part, next to the observed sum over the same window.
RollingSums rolling_sum_forecast(const ArModel& model, const TimeSeries& series, std::size_t test_start,
                                 std::size_t h, bool parallel = true);

double rmspe(std::span<const double> pred, std::span<const double> actual);
double r_squared(std::span<const double> pred, std::span<const double> actual);
double mae(std::span<const double> pred, std::span<const double> actual);
/// Percent error relative to the mean of `actual` (not per observation).
double mape(std::span<const double> pred, std::span<const double> actual);

struct AccuracyReport {
    double r2 = 0.0;
    double rmspe = 0.0;
    double mae = 0.0;
    double mape = 0.0;
    std::size_t n_star = 0;
};

AccuracyReport accuracy(std::span<const double> pred, std::span<const double> actual);

}  // namespace sparselag

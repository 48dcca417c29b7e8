#pragma once

#include "sparselag/series.hpp"
#include "sparselag/tuning.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace sparselag {

struct CoefficientRow {
    std::string name;
    double estimate = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    bool baseline = false;  // reference level of a categorical block; not estimated
};

struct CoefficientTable {
    std::vector<CoefficientRow> rows;
    double level = 0.95;
    std::size_t n_rows_used = 0;
    double residual_sd = 0.0;
    Eigen::VectorXd offset;     // penalized lag predictor, one entry per design row
    Eigen::VectorXd fitted;     // offset + intercept + exogenous part
    Eigen::VectorXd residuals;
    Eigen::VectorXd response;
    std::vector<std::string> warnings;
};

/// Least squares for the intercept and exogenous coefficients with the fitted
/// lag predictor sum_j b_j y_{t-j} held fixed as an offset:
///   y_t = offset_t + intercept + x_t' delta + e_t.
/// Standard errors are the classical ones, intervals use normal quantiles.
/// Only valid when the exogenous columns were left unpenalized.
CoefficientTable infer_exogenous(const SrlFit& fit, const TimeSeries& train, double level = 0.95);

/// The same regression for an explicit lag model.
CoefficientTable offset_regression(const ArModel& model, const TimeSeries& train, double level,
                                   const std::vector<CategoricalBlock>& categorical = {});

}  // namespace sparselag

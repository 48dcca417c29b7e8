#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sparselag {

/// Indicator columns produced from one categorical exogenous input. The
/// baseline level has no column; its effect is absorbed by the intercept.
struct CategoricalBlock {
    std::string name;
    std::string baseline;
    std::vector<std::string> levels;   // non-baseline levels, in column order
    std::vector<std::string> columns;  // exogenous column names for `levels`
};

/// A regularly spaced target series with optional aligned exogenous columns.
/// Immutable once constructed; the constructor enforces the invariants.
class TimeSeries {
public:
    TimeSeries() = default;
    explicit TimeSeries(std::vector<double> values);
    TimeSeries(std::vector<double> values, Eigen::MatrixXd exog, std::vector<std::string> exog_names,
               std::vector<CategoricalBlock> categorical = {});

    std::span<const double> values() const { return values_; }
    const Eigen::MatrixXd& exog() const { return exog_; }
    const std::vector<std::string>& exog_names() const { return exog_names_; }
    const std::vector<CategoricalBlock>& categorical() const { return categorical_; }

    std::size_t size() const { return values_.size(); }
    std::size_t exog_count() const { return static_cast<std::size_t>(exog_.cols()); }
    bool has_exog() const { return exog_.cols() > 0; }

    /// Rows [begin, end) as a new series; exogenous rows follow the values.
    TimeSeries slice(std::size_t begin, std::size_t end) const;

private:
    std::vector<double> values_;
    Eigen::MatrixXd exog_;
    std::vector<std::string> exog_names_;
    std::vector<CategoricalBlock> categorical_;
};

/// Expand a categorical column into 0/1 indicators, one per non-baseline level.
/// Levels are ordered by first appearance.
std::pair<CategoricalBlock, Eigen::MatrixXd> expand_categorical(const std::string& name,
                                                                std::span<const std::string> labels,
                                                                const std::string& baseline);

/// Response vector and lag/exogenous design for maximum lag p*.
///
/// Row i corresponds to observation t = p* + i (0-based); column j - 1 holds
/// lag j, i.e. y_{t-j}. Exogenous columns follow the p* lag columns. After
/// standardize() the columns are centered and scaled and the constants needed
/// to map coefficients back to the original scale are kept alongside.
struct ArDesign {
    Eigen::VectorXd response;
    Eigen::MatrixXd columns;
    std::size_t p_star = 0;
    std::size_t exog_count = 0;
    std::vector<bool> constant;  // column has no variation in this sample
    Eigen::VectorXd col_means;
    Eigen::VectorXd col_sds;
    double response_center = 0.0;
    bool standardized = false;

    std::size_t rows() const { return static_cast<std::size_t>(response.size()); }
    std::size_t cols() const { return static_cast<std::size_t>(columns.cols()); }
    auto lag_cols() const { return columns.leftCols(static_cast<Eigen::Index>(p_star)); }
    auto exog_cols() const { return columns.rightCols(static_cast<Eigen::Index>(exog_count)); }
    bool has_constant_columns() const;
};

/// Default maximum lag: min(ceil(n / 4), p_max). p_max = 0 means "no cap".
std::size_t default_p_star(std::size_t n, std::size_t p_max);

ArDesign build_design(const TimeSeries& ts, std::size_t p_star);

/// Center and scale every non-constant column to unit sample standard deviation
/// and center the response. Composes with earlier standardization, so applying
/// it twice leaves the design unchanged.
ArDesign standardize(ArDesign design);

/// Coefficients on the original scale of the design's columns.
struct OriginalScaleCoefficients {
    double intercept = 0.0;
    Eigen::VectorXd beta;
};

OriginalScaleCoefficients destandardize(const ArDesign& design, const Eigen::VectorXd& beta_std,
                                        double intercept_std = 0.0);

/// Chronological split; the test part starts at floor(train_fraction * n).
/// train_fraction = 1 gives an empty test series.
std::pair<TimeSeries, TimeSeries> split_train_test(const TimeSeries& ts, double train_fraction,
                                                   std::size_t min_train = 2);

std::size_t train_length(std::size_t n, double train_fraction);

}  // namespace sparselag

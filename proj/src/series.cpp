#include "sparselag/series.hpp"

#include "sparselag/error.hpp"
#include "sparselag/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sparselag {

TimeSeries::TimeSeries(std::vector<double> values)
    : TimeSeries(std::move(values), Eigen::MatrixXd(0, 0), {}) {}

TimeSeries::TimeSeries(std::vector<double> values, Eigen::MatrixXd exog,
                       std::vector<std::string> exog_names,
                       std::vector<CategoricalBlock> categorical)
    : values_(std::move(values)),
      exog_(std::move(exog)),
      exog_names_(std::move(exog_names)),
      categorical_(std::move(categorical)) {
    if (values_.size() < 2) {
        throw Error(ErrorCode::invalid_order, "time series needs at least 2 observations");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            std::ostringstream msg;
            msg << "missing or non-finite value at observation " << i + 1;
            throw Error(ErrorCode::parse, msg.str());
        }
    }
    if (exog_.cols() == 0) {
        exog_.resize(static_cast<Eigen::Index>(values_.size()), 0);
    }
    if (static_cast<std::size_t>(exog_.rows()) != values_.size()) {
        throw Error(ErrorCode::config, "exogenous matrix must have one row per observation");
    }
    if (exog_names_.empty() && exog_.cols() > 0) {
        for (Eigen::Index j = 0; j < exog_.cols(); ++j) {
            exog_names_.push_back("x" + std::to_string(j + 1));
        }
    }
    if (static_cast<Eigen::Index>(exog_names_.size()) != exog_.cols()) {
        throw Error(ErrorCode::config, "exogenous names do not match exogenous column count");
    }
    if (!exog_.allFinite()) {
        throw Error(ErrorCode::parse, "missing or non-finite exogenous value");
    }
}

TimeSeries TimeSeries::slice(std::size_t begin, std::size_t end) const {
    std::vector<double> v(values_.begin() + static_cast<std::ptrdiff_t>(begin),
                          values_.begin() + static_cast<std::ptrdiff_t>(end));
    Eigen::MatrixXd x = exog_.middleRows(static_cast<Eigen::Index>(begin),
                                         static_cast<Eigen::Index>(end - begin));
    return TimeSeries(std::move(v), std::move(x), exog_names_, categorical_);
}

std::pair<CategoricalBlock, Eigen::MatrixXd> expand_categorical(const std::string& name,
                                                                std::span<const std::string> labels,
                                                                const std::string& baseline) {
    CategoricalBlock block{name, baseline, {}, {}};
    bool saw_baseline = false;
    for (const auto& label : labels) {
        if (label == baseline) {
            saw_baseline = true;
            continue;
        }
        if (std::find(block.levels.begin(), block.levels.end(), label) == block.levels.end()) {
            block.levels.push_back(label);
        }
    }
    if (!saw_baseline) {
        throw Error(ErrorCode::config,
                    "baseline level '" + baseline + "' does not occur in column '" + name + "'");
    }
    Eigen::MatrixXd ind = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()),
                                                static_cast<Eigen::Index>(block.levels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto it = std::find(block.levels.begin(), block.levels.end(), labels[i]);
        if (it != block.levels.end()) {
            ind(static_cast<Eigen::Index>(i), it - block.levels.begin()) = 1.0;
        }
    }
    for (const auto& level : block.levels) block.columns.push_back(name + "=" + level);
    return {std::move(block), std::move(ind)};
}

bool ArDesign::has_constant_columns() const {
    return std::find(constant.begin(), constant.end(), true) != constant.end();
}

std::size_t default_p_star(std::size_t n, std::size_t p_max) {
    const std::size_t quarter = (n + 3) / 4;
    return p_max == 0 ? quarter : std::min(quarter, p_max);
}

ArDesign build_design(const TimeSeries& ts, std::size_t p_star) {
    const std::size_t n = ts.size();
    if (p_star == 0 || p_star >= n) {
        std::ostringstream msg;
        msg << "maximum lag " << p_star << " must be in [1, n) with n = " << n;
        throw Error(ErrorCode::invalid_order, msg.str());
    }
    const auto rows = static_cast<Eigen::Index>(n - p_star);
    const auto k = static_cast<Eigen::Index>(ts.exog_count());
    const auto values = ts.values();

    ArDesign d;
    d.p_star = p_star;
    d.exog_count = ts.exog_count();
    d.response = Eigen::Map<const Eigen::VectorXd>(values.data() + p_star, rows);
    d.columns.resize(rows, static_cast<Eigen::Index>(p_star) + k);
    for (std::size_t j = 1; j <= p_star; ++j) {
        d.columns.col(static_cast<Eigen::Index>(j - 1)) =
            Eigen::Map<const Eigen::VectorXd>(values.data() + p_star - j, rows);
    }
    if (k > 0) {
        d.columns.rightCols(k) = ts.exog().bottomRows(rows);
    }
    d.constant.assign(d.cols(), false);
    for (Eigen::Index j = 0; j < d.columns.cols(); ++j) {
        const auto col = d.columns.col(j);
        d.constant[static_cast<std::size_t>(j)] = (col.array() == col(0)).all();
    }
    d.col_means = Eigen::VectorXd::Zero(d.columns.cols());
    d.col_sds = Eigen::VectorXd::Ones(d.columns.cols());
    return d;
}

ArDesign standardize(ArDesign design) {
    Eigen::VectorXd means;
    Eigen::VectorXd sds;
    kernels::column_moments(design.columns, means, sds);
    const auto q = design.columns.cols();
    if (design.col_means.size() != q) design.col_means = Eigen::VectorXd::Zero(q);
    if (design.col_sds.size() != q) design.col_sds = Eigen::VectorXd::Ones(q);
    design.constant.resize(static_cast<std::size_t>(q), false);
    for (Eigen::Index j = 0; j < design.columns.cols(); ++j) {
        const auto ju = static_cast<std::size_t>(j);
        if (design.constant[ju]) {
            design.col_means(j) += design.col_sds(j) * means(j);
            design.columns.col(j).setZero();
            continue;
        }
        if (!(sds(j) > 0.0)) {
            throw Error(ErrorCode::degenerate,
                        "column " + std::to_string(j + 1) + " has zero variance and is not flagged constant");
        }
        design.columns.col(j) = (design.columns.col(j).array() - means(j)) / sds(j);
        design.col_means(j) += design.col_sds(j) * means(j);
        design.col_sds(j) *= sds(j);
    }
    const double center = design.response.mean();
    design.response.array() -= center;
    design.response_center += center;
    design.standardized = true;
    return design;
}

OriginalScaleCoefficients destandardize(const ArDesign& design, const Eigen::VectorXd& beta_std,
                                        double intercept_std) {
    OriginalScaleCoefficients out;
    out.beta = beta_std.array() / design.col_sds.array();
    for (std::size_t j = 0; j < design.constant.size(); ++j) {
        if (design.constant[j]) out.beta(static_cast<Eigen::Index>(j)) = 0.0;
    }
    out.intercept = design.response_center + intercept_std - out.beta.dot(design.col_means);
    return out;
}

std::size_t train_length(std::size_t n, double train_fraction) {
    return static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n) + 1e-9));
}

std::pair<TimeSeries, TimeSeries> split_train_test(const TimeSeries& ts, double train_fraction,
                                                   std::size_t min_train) {
    if (!(train_fraction > 0.0 && train_fraction <= 1.0)) {
        throw Error(ErrorCode::invalid_order, "train fraction must lie in (0, 1]");
    }
    const std::size_t n = ts.size();
    const std::size_t n_train = std::min(train_length(n, train_fraction), n);
    if (n_train < std::max<std::size_t>(min_train, 2)) {
        std::ostringstream msg;
        msg << "training split has " << n_train << " observations; at least "
            << std::max<std::size_t>(min_train, 2) << " required";
        throw Error(ErrorCode::invalid_order, msg.str());
    }
    if (train_fraction < 1.0 && n_train == n) {
        throw Error(ErrorCode::invalid_order, "train fraction below 1 leaves an empty test split");
    }
    TimeSeries train = ts.slice(0, n_train);
    if (n_train == n) return {std::move(train), TimeSeries{}};
    if (n - n_train < 2) {
        throw Error(ErrorCode::invalid_order, "test split must contain at least 2 observations");
    }
    return {std::move(train), ts.slice(n_train, n)};
}

}  // namespace sparselag

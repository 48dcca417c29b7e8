#pragma once

#include "sparselag/lasso.hpp"
#include "sparselag/penalty.hpp"
#include "sparselag/series.hpp"

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace sparselag {

enum class Criterion { aicc, bic };

std::string to_string(Criterion criterion);
Criterion parse_criterion(const std::string& text);

/// n log(rss / n) + 2k + 2k(k + 1) / (n - k - 1); +inf when n <= k + 1.
double aicc(double rss, std::size_t n, std::size_t k);

/// n log(rss / n) + k log(n)
double bic(double rss, std::size_t n, std::size_t k);

struct TuningGrid {
    std::vector<double> gammas{0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 16.0};
    std::size_t n_lambda = kDefaultLambdaCount;
    Criterion criterion = Criterion::aicc;
};

/// How the per-gamma penalty weights are formed. For the parametrized
/// schemes the grid exponent gamma multiplies the base strengths: the local
/// scheme uses gamma_l = gamma * locality_strength, the seasonal scheme
/// gamma_s = gamma * seasonal_strength, and combined uses both. gamma = 0 is
/// therefore the ordinary lasso under every scheme.
struct WeightConfig {
    WeightScheme scheme = WeightScheme::pacf;
    double locality_strength = 1.0;
    double seasonal_strength = 1.0;
    double period = 0.0;                 // m, seasonal and combined schemes
    double locality_c = kDefaultLocality;
    double cap = kDefaultWeightCap;
    ExoMode exo_mode = ExoMode::unpenalized;
};

struct SrlOptions {
    std::size_t p_star = 0;
    WeightConfig weights;
    TuningGrid grid;
    LassoOptions lasso;
    bool parallel = true;  // fit the per-gamma paths concurrently
};

struct IcRow {
    double gamma = 0.0;
    double lambda = 0.0;
    std::size_t df = 0;
    double rss = 0.0;
    double aicc = 0.0;
    double bic = 0.0;
};

/// Original-scale autoregressive model with exogenous terms:
///   y_t = intercept + sum_j lag_coefs[j-1] y_{t-j} + sum_i exog_coefs[i] x_{t,i}
struct ArModel {
    double intercept = 0.0;
    std::vector<double> lag_coefs;
    std::vector<double> exog_coefs;

    std::size_t p_star() const { return lag_coefs.size(); }
    std::vector<std::size_t> active_lags() const;  // 1-based
};

struct SrlFit {
    ArModel model;
    double gamma_opt = 0.0;
    double lambda_opt = 0.0;
    std::size_t gamma_index = 0;
    std::size_t lambda_index = 0;
    double criterion_value = 0.0;
    std::vector<std::size_t> active_lags;
    std::vector<IcRow> ic_table;  // gamma-major, |gammas| x n_lambda rows

    // Training metadata.
    std::size_t p_star = 0;
    std::size_t n_train = 0;      // length of the series the fit used
    std::size_t rows = 0;         // design rows, the sample size in the criteria
    Eigen::VectorXd beta_std;     // selected coefficients on the standardized scale
    Eigen::VectorXd col_means;
    Eigen::VectorXd col_sds;
    double response_center = 0.0;
    std::vector<double> selected_weights;
    WeightConfig weights;
    TuningGrid grid;
    std::vector<std::string> exog_names;
    std::vector<CategoricalBlock> categorical;
    std::vector<std::string> warnings;
};

/// Endogenous weights for one grid exponent.
std::vector<double> endogenous_weights(const WeightConfig& config, std::size_t p_star, double gamma,
                                       const PacfResult* pacf);

/// Fit one weighted-lasso path per gamma, score every (gamma, lambda) with
/// AICc and BIC and keep the minimizer of the configured criterion. Ties go
/// to the larger lambda, then the smaller gamma.
SrlFit fit_srl(const TimeSeries& train, const SrlOptions& options);

/// Index into `table` of the selected row under `criterion`; throws when no
/// row is admissible.
std::size_t select_row(const std::vector<IcRow>& table, Criterion criterion);

}  // namespace sparselag

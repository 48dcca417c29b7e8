#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sparselag {

struct PacfResult {
    std::vector<double> pacf;  // lags 1..max_lag
    std::vector<double> acf;   // lags 1..max_lag
    std::size_t max_lag = 0;
    std::size_t n = 0;
    double conf_band = 0.0;    // 2 / sqrt(n)
    std::vector<std::string> warnings;
};

/// Sample autocorrelations r_1..r_max_lag with the n divisor:
/// r_j = sum_{t>j} (y_t - ybar)(y_{t-j} - ybar) / sum_t (y_t - ybar)^2.
std::vector<double> acf(std::span<const double> values, std::size_t max_lag);

/// Partial autocorrelations from the Durbin-Levinson recursion over acf().
/// A step with |phi_jj| >= 1 is clamped to sign * (1 - 1e-10) and reported
/// in `warnings`.
PacfResult pacf(std::span<const double> values, std::size_t max_lag);

/// Durbin-Levinson applied to a given autocorrelation sequence r_1..r_L
/// (r_0 = 1 implied). Exposed so that population autocorrelations can be fed
/// in directly.
std::vector<double> durbin_levinson(std::span<const double> autocorrelations,
                                    std::vector<std::string>* warnings = nullptr);

}  // namespace sparselag

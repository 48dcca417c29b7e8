#include "sparselag/pacf.hpp"

#include "sparselag/error.hpp"
#include "sparselag/kernels.hpp"

#include <cmath>
#include <sstream>

namespace sparselag {

namespace {

void check_order(std::size_t n, std::size_t max_lag) {
    if (max_lag == 0 || max_lag >= n) {
        std::ostringstream msg;
        msg << "maximum lag " << max_lag << " must be in [1, n) with n = " << n;
        throw Error(ErrorCode::invalid_order, msg.str());
    }
}

}  // namespace

std::vector<double> acf(std::span<const double> values, std::size_t max_lag) {
    check_order(values.size(), max_lag);
    const auto sums = kernels::autocovariance_sums(values, max_lag);
    if (!(sums[0] > 0.0)) {
        throw Error(ErrorCode::degenerate, "autocorrelation of a constant series is undefined");
    }
    std::vector<double> r(max_lag);
    for (std::size_t j = 1; j <= max_lag; ++j) r[j - 1] = sums[j] / sums[0];
    return r;
}

std::vector<double> durbin_levinson(std::span<const double> autocorrelations,
                                    std::vector<std::string>* warnings) {
    const std::size_t lags = autocorrelations.size();
    std::vector<double> partial(lags, 0.0);
    std::vector<double> phi(lags, 0.0);
    std::vector<double> prev(lags, 0.0);
    double variance = 1.0;  // innovation variance ratio v_{k-1} / gamma_0

    for (std::size_t k = 1; k <= lags; ++k) {
        double num = autocorrelations[k - 1];
        for (std::size_t j = 1; j < k; ++j) num -= prev[j - 1] * autocorrelations[k - j - 1];
        double kappa = variance > 0.0 ? num / variance : 0.0;
        if (!(std::abs(kappa) < 1.0)) {
            const double clamped = std::copysign(1.0 - 1e-10, kappa);
            if (warnings) {
                std::ostringstream msg;
                msg << "partial autocorrelation at lag " << k << " clamped from " << kappa;
                warnings->push_back(msg.str());
            }
            kappa = clamped;
        }
        for (std::size_t j = 1; j < k; ++j) phi[j - 1] = prev[j - 1] - kappa * prev[k - j - 1];
        phi[k - 1] = kappa;
        partial[k - 1] = kappa;
        variance *= (1.0 - kappa * kappa);
        prev = phi;
    }
    return partial;
}

PacfResult pacf(std::span<const double> values, std::size_t max_lag) {
    PacfResult out;
    out.acf = acf(values, max_lag);
    out.pacf = durbin_levinson(out.acf, &out.warnings);
    out.max_lag = max_lag;
    out.n = values.size();
    out.conf_band = 2.0 / std::sqrt(static_cast<double>(values.size()));
    return out;
}

}  // namespace sparselag

#include "sparselag/penalty.hpp"

#include "sparselag/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace sparselag {

std::string to_string(WeightScheme scheme) {
    switch (scheme) {
    case WeightScheme::uniform: return "uniform";
    case WeightScheme::local: return "local";
    case WeightScheme::seasonal: return "seasonal";
    case WeightScheme::combined: return "combined";
    case WeightScheme::pacf: return "pacf";
    }
    return "uniform";
}

std::string to_string(ExoMode mode) {
    switch (mode) {
    case ExoMode::unpenalized: return "unpenalized";
    case ExoMode::adaptive: return "adaptive";
    case ExoMode::uniform: return "uniform";
    }
    return "unpenalized";
}

WeightScheme parse_weight_scheme(const std::string& text) {
    for (auto s : {WeightScheme::uniform, WeightScheme::local, WeightScheme::seasonal,
                   WeightScheme::combined, WeightScheme::pacf}) {
        if (to_string(s) == text) return s;
    }
    throw Error(ErrorCode::config, "unknown weight scheme '" + text +
                                       "' (expected uniform, local, seasonal, combined or pacf)");
}

ExoMode parse_exo_mode(const std::string& text) {
    for (auto m : {ExoMode::unpenalized, ExoMode::adaptive, ExoMode::uniform}) {
        if (to_string(m) == text) return m;
    }
    throw Error(ErrorCode::config,
                "unknown exogenous mode '" + text + "' (expected unpenalized, adaptive or uniform)");
}

std::size_t PenaltyWeights::penalized_count() const {
    return static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](double v) { return v > 0.0; }));
}

double local_psf(std::size_t j, double gamma_l, std::size_t p_star, double c) {
    return std::pow(static_cast<double>(j) / static_cast<double>(p_star) + c, gamma_l);
}

double seasonal_psf(std::size_t j, double gamma_s, double m) {
    return std::exp(-gamma_s * std::cos(2.0 * std::numbers::pi * static_cast<double>(j) / m));
}

double combined_psf(std::size_t j, double gamma_s, double gamma_l, double m, std::size_t p_star,
                    double c) {
    const double wave = -gamma_s * std::cos(2.0 * std::numbers::pi * static_cast<double>(j) / m);
    const double locality = gamma_l * std::log(static_cast<double>(j) / static_cast<double>(p_star) + c);
    return std::exp(wave + locality);
}

std::vector<double> pacf_weights(std::span<const double> partial, double gamma, double cap) {
    std::vector<double> w(partial.size());
    for (std::size_t j = 0; j < partial.size(); ++j) {
        const double a = std::abs(partial[j]);
        if (gamma == 0.0) {
            w[j] = 1.0;
        } else if (a == 0.0) {
            w[j] = cap;
        } else {
            w[j] = std::min(std::pow(1.0 / a, gamma), cap);
        }
    }
    return w;
}

std::vector<double> pacf_weights(const PacfResult& pacf, double gamma, double cap) {
    return pacf_weights(pacf.pacf, gamma, cap);
}

std::vector<double> parametrized_weights(WeightScheme scheme, std::size_t p_star, double gamma_l,
                                         double gamma_s, double m, double c) {
    if ((scheme == WeightScheme::seasonal || scheme == WeightScheme::combined) && !(m >= 2.0)) {
        throw Error(ErrorCode::config, "seasonal penalty scaling needs a period m >= 2");
    }
    std::vector<double> w(p_star, 1.0);
    for (std::size_t j = 1; j <= p_star; ++j) {
        switch (scheme) {
        case WeightScheme::local: w[j - 1] = local_psf(j, gamma_l, p_star, c); break;
        case WeightScheme::seasonal: w[j - 1] = seasonal_psf(j, gamma_s, m); break;
        case WeightScheme::combined: w[j - 1] = combined_psf(j, gamma_s, gamma_l, m, p_star, c); break;
        case WeightScheme::uniform: break;
        case WeightScheme::pacf:
            throw Error(ErrorCode::config, "pacf weights need partial autocorrelations; use pacf_weights");
        }
    }
    return w;
}

PenaltyWeights assemble_weights(std::span<const double> endo, std::size_t exog_count, ExoMode exo_mode,
                                std::optional<std::span<const double>> exo_stats, double gamma,
                                double cap) {
    PenaltyWeights out;
    out.cap = cap;
    out.w.assign(endo.begin(), endo.end());
    out.w.reserve(endo.size() + exog_count);
    switch (exo_mode) {
    case ExoMode::unpenalized:
        out.w.insert(out.w.end(), exog_count, 0.0);
        break;
    case ExoMode::uniform:
        out.w.insert(out.w.end(), exog_count, 1.0);
        break;
    case ExoMode::adaptive: {
        if (!exo_stats || exo_stats->size() != exog_count) {
            throw Error(ErrorCode::config, "adaptive exogenous weights need one first-stage estimate per column");
        }
        for (std::size_t i = 0; i < exog_count; ++i) {
            const double a = std::abs((*exo_stats)[i]);
            if (a == 0.0 && gamma != 0.0) {
                out.warnings.push_back("exogenous column " + std::to_string(i + 1) +
                                       " has a zero first-stage estimate; weight capped");
            }
        }
        const auto adaptive = pacf_weights(*exo_stats, gamma, cap);
        out.w.insert(out.w.end(), adaptive.begin(), adaptive.end());
        break;
    }
    }
    for (double v : out.w) {
        if (!std::isfinite(v) || v < 0.0) {
            throw Error(ErrorCode::config, "penalty weights must be finite and non-negative");
        }
    }
    return out;
}

void normalize_weights(std::vector<double>& w) {
    double sum = 0.0;
    std::size_t count = 0;
    for (double v : w) {
        if (v > 0.0) {
            sum += v;
            ++count;
        }
    }
    if (count == 0) return;
    const double scale = static_cast<double>(count) / sum;
    for (double& v : w) v *= scale;
}

}  // namespace sparselag

#pragma once

#include "sparselag/pacf.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sparselag {

enum class WeightScheme { uniform, local, seasonal, combined, pacf };
enum class ExoMode { unpenalized, adaptive, uniform };

std::string to_string(WeightScheme scheme);
std::string to_string(ExoMode mode);
WeightScheme parse_weight_scheme(const std::string& text);
ExoMode parse_exo_mode(const std::string& text);

inline constexpr double kDefaultWeightCap = 1e6;
inline constexpr double kDefaultLocality = 0.5;

/// Penalty multipliers in the objective convention: the fit minimizes
/// loss + lambda * sum_j w[j] |beta_j|, so w[j] = 0 leaves column j
/// unpenalized and larger values demand more evidence. Columns are the p*
/// lags followed by the exogenous columns.
struct PenaltyWeights {
    std::vector<double> w;
    WeightScheme endo_scheme = WeightScheme::uniform;
    double gamma = 0.0;
    double gamma_l = 0.0;
    double gamma_s = 0.0;
    double m = 0.0;
    double c = kDefaultLocality;
    double cap = kDefaultWeightCap;
    std::vector<std::string> warnings;

    std::size_t penalized_count() const;
};

/// (j / p* + c)^gamma_l
double local_psf(std::size_t j, double gamma_l, std::size_t p_star, double c = kDefaultLocality);

/// exp(-gamma_s cos(2 pi j / m))
double seasonal_psf(std::size_t j, double gamma_s, double m);

/// exp(-gamma_s cos(2 pi j / m) + gamma_l log(j / p* + c))
double combined_psf(std::size_t j, double gamma_s, double gamma_l, double m, std::size_t p_star,
                    double c = kDefaultLocality);

/// min((1 / |phi_j|)^gamma, cap); a zero partial autocorrelation gets the cap.
std::vector<double> pacf_weights(std::span<const double> partial, double gamma,
                                 double cap = kDefaultWeightCap);
std::vector<double> pacf_weights(const PacfResult& pacf, double gamma,
                                 double cap = kDefaultWeightCap);

/// Weights for lags 1..p* under a parametrized scheme (uniform, local, seasonal, combined).
std::vector<double> parametrized_weights(WeightScheme scheme, std::size_t p_star, double gamma_l,
                                         double gamma_s, double m, double c = kDefaultLocality);

/// Append exogenous multipliers to endogenous ones. `unpenalized` gives 0,
/// `uniform` gives 1, `adaptive` gives min((1 / |exo_stats[i]|)^gamma, cap).
PenaltyWeights assemble_weights(std::span<const double> endo, std::size_t exog_count, ExoMode exo_mode,
                                std::optional<std::span<const double>> exo_stats = std::nullopt,
                                double gamma = 1.0, double cap = kDefaultWeightCap);

/// Rescale so the mean over penalized (w > 0) entries is 1. Zero entries stay 0.
void normalize_weights(std::vector<double>& w);

}  // namespace sparselag

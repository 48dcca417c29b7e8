#pragma once

#include "sparselag/series.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sparselag {

/// 1 on `width` consecutive steps out of every `period`, starting at `offset`.
struct PulseGenerator {
    std::size_t period = 24;
    std::size_t width = 1;
    std::size_t offset = 0;
};

/// Time is cut into blocks of `block` steps; each block is switched on
/// independently with probability `probability` (holiday-like days).
struct RandomBlockGenerator {
    std::size_t block = 24;
    double probability = 0.05;
};

struct BernoulliGenerator {
    double probability = 0.5;
};

struct GaussianGenerator {
    double mean = 0.0;
    double sd = 1.0;
};

using ExogGenerator = std::variant<PulseGenerator, RandomBlockGenerator, BernoulliGenerator, GaussianGenerator>;

struct ExogEffect {
    std::string name;
    ExogGenerator generator;
    double coefficient = 0.0;
};

/// Additive seasonal autoregression
///   y_t = beta0 + sum_j phi_j y_{t-j} + sum_j theta_j y_{t-jm} + sum_i delta_i x_{t,i} + sigma e_t
/// with independent standard normal e_t.
struct SarSpec {
    std::vector<double> phi;
    std::vector<double> theta;
    std::size_t m = 0;
    double beta0 = 0.0;
    double sigma = 1.0;
    std::vector<ExogEffect> exog_effects;
    std::uint64_t seed = 1;
    std::optional<std::size_t> burn_in;  // default 10 * (p + P m)
};

/// Coefficients a_1..a_L of the combined lag polynomial, L = max(p, P m).
std::vector<double> ar_polynomial(const SarSpec& spec);

/// Spectral radius of the companion matrix of ar_polynomial(); < 1 is stationary.
double spectral_radius(const SarSpec& spec);

std::size_t default_burn_in(const SarSpec& spec);

/// Deterministic for a fixed seed. Exogenous effects enter the recursion, so
/// regressing y_t on its lags and x_t recovers delta.
TimeSeries simulate_sar(const SarSpec& spec, std::size_t n);

}  // namespace sparselag

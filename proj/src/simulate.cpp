#include "sparselag/simulate.hpp"

#include "sparselag/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <sstream>

namespace sparselag {

std::vector<double> ar_polynomial(const SarSpec& spec) {
    std::size_t order = spec.phi.size();
    if (!spec.theta.empty()) {
        if (spec.m == 0) throw Error(ErrorCode::config, "seasonal coefficients need a period m >= 1");
        order = std::max(order, spec.theta.size() * spec.m);
    }
    std::vector<double> a(order, 0.0);
    for (std::size_t j = 0; j < spec.phi.size(); ++j) a[j] += spec.phi[j];
    for (std::size_t j = 0; j < spec.theta.size(); ++j) a[(j + 1) * spec.m - 1] += spec.theta[j];
    return a;
}

double spectral_radius(const SarSpec& spec) {
    const auto a = ar_polynomial(spec);
    if (a.empty()) return 0.0;
    const auto order = static_cast<Eigen::Index>(a.size());
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(order, order);
    for (Eigen::Index j = 0; j < order; ++j) companion(0, j) = a[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 1; i < order; ++i) companion(i, i - 1) = 1.0;
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

std::size_t default_burn_in(const SarSpec& spec) {
    return 10 * (spec.phi.size() + spec.theta.size() * spec.m);
}

namespace {

// Pulses and blocks are phased so that index `origin` (the first kept
// observation) starts a period and a block.
std::vector<double> generate(const ExogGenerator& gen, std::size_t length, std::size_t origin, std::mt19937_64& rng) {
    std::vector<double> x(length, 0.0);
    std::visit(
        [&](const auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, PulseGenerator>) {
                if (g.period == 0) throw Error(ErrorCode::config, "pulse period must be positive");
                const std::size_t shift = g.period - (origin + g.offset) % g.period;
                for (std::size_t t = 0; t < length; ++t) {
                    x[t] = ((t + shift) % g.period) < g.width ? 1.0 : 0.0;
                }
            } else if constexpr (std::is_same_v<G, RandomBlockGenerator>) {
                if (g.block == 0) throw Error(ErrorCode::config, "block length must be positive");
                std::bernoulli_distribution on(g.probability);
                std::size_t start = 0;
                std::size_t end = origin % g.block == 0 ? g.block : origin % g.block;
                while (start < length) {
                    const double v = on(rng) ? 1.0 : 0.0;
                    for (std::size_t t = start; t < std::min(length, end); ++t) x[t] = v;
                    start = end;
                    end += g.block;
                }
            } else if constexpr (std::is_same_v<G, BernoulliGenerator>) {
                std::bernoulli_distribution on(g.probability);
                for (auto& v : x) v = on(rng) ? 1.0 : 0.0;
            } else {
                std::normal_distribution<double> draw(g.mean, g.sd);
                for (auto& v : x) v = draw(rng);
            }
        },
        gen);
    return x;
}

}  // namespace

TimeSeries simulate_sar(const SarSpec& spec, std::size_t n) {
    if (n < 2) throw Error(ErrorCode::invalid_order, "simulation length must be at least 2");
    if (spec.sigma < 0.0) throw Error(ErrorCode::config, "innovation standard deviation must be >= 0");
    const auto a = ar_polynomial(spec);
    const double radius = spectral_radius(spec);
    if (!(radius < 1.0)) {
        std::ostringstream msg;
        msg << "autoregressive specification is not stationary: companion spectral radius " << radius << " >= 1";
        throw Error(ErrorCode::config, msg.str());
    }
    const std::size_t burn = spec.burn_in.value_or(default_burn_in(spec));
    const std::size_t total = burn + n;
    const std::size_t order = a.size();

    std::seed_seq exog_seed{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32), 2u};
    std::mt19937_64 exog_rng(exog_seed);
    const auto k = static_cast<Eigen::Index>(spec.exog_effects.size());
    Eigen::MatrixXd exog(static_cast<Eigen::Index>(total), k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const auto x = generate(spec.exog_effects[static_cast<std::size_t>(i)].generator, total, burn, exog_rng);
        exog.col(i) = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(total));
    }

    double coef_sum = 0.0;
    for (double v : a) coef_sum += v;
    const double mean = spec.beta0 / (1.0 - coef_sum);

    std::seed_seq noise_seed{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32), 1u};
    std::mt19937_64 rng(noise_seed);
    std::normal_distribution<double> innovation(0.0, 1.0);

    std::vector<double> y(total, 0.0);
    for (std::size_t t = 0; t < total; ++t) {
        double v = spec.beta0;
        for (std::size_t j = 1; j <= order; ++j) {
            if (a[j - 1] == 0.0) continue;
            v += a[j - 1] * (t >= j ? y[t - j] : mean);
        }
        for (Eigen::Index i = 0; i < k; ++i) {
            v += spec.exog_effects[static_cast<std::size_t>(i)].coefficient * exog(static_cast<Eigen::Index>(t), i);
        }
        y[t] = v + spec.sigma * innovation(rng);
    }

    std::vector<double> kept(y.begin() + static_cast<std::ptrdiff_t>(burn), y.end());
    Eigen::MatrixXd kept_exog = exog.bottomRows(static_cast<Eigen::Index>(n));
    std::vector<std::string> names;
    for (const auto& e : spec.exog_effects) names.push_back(e.name);
    return TimeSeries(std::move(kept), std::move(kept_exog), std::move(names));
}

}  // namespace sparselag

#include "sparselag/tuning.hpp"

#include "sparselag/error.hpp"
#include "sparselag/pacf.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <sstream>

namespace sparselag {

std::string to_string(Criterion criterion) { return criterion == Criterion::bic ? "bic" : "aicc"; }

Criterion parse_criterion(const std::string& text) {
    if (text == "aicc" || text == "AICc") return Criterion::aicc;
    if (text == "bic" || text == "BIC") return Criterion::bic;
    throw Error(ErrorCode::config, "unknown criterion '" + text + "' (expected aicc or bic)");
}

namespace {

double log_likelihood_term(double rss, std::size_t n) {
    const double nd = static_cast<double>(n);
    if (!(rss > 0.0)) return -std::numeric_limits<double>::infinity();
    return nd * std::log(rss / nd);
}

}  // namespace

double aicc(double rss, std::size_t n, std::size_t k) {
    if (n <= k + 1) return std::numeric_limits<double>::infinity();
    const double kd = static_cast<double>(k);
    return log_likelihood_term(rss, n) + 2.0 * kd + 2.0 * kd * (kd + 1.0) / static_cast<double>(n - k - 1);
}

double bic(double rss, std::size_t n, std::size_t k) {
    return log_likelihood_term(rss, n) + static_cast<double>(k) * std::log(static_cast<double>(n));
}

std::vector<std::size_t> ArModel::active_lags() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < lag_coefs.size(); ++j) {
        if (lag_coefs[j] != 0.0) out.push_back(j + 1);
    }
    return out;
}

std::vector<double> endogenous_weights(const WeightConfig& config, std::size_t p_star, double gamma,
                                       const PacfResult* pacf) {
    switch (config.scheme) {
    case WeightScheme::pacf:
        if (!pacf) throw Error(ErrorCode::config, "pacf scheme needs partial autocorrelations");
        return pacf_weights(*pacf, gamma, config.cap);
    case WeightScheme::uniform:
        return std::vector<double>(p_star, 1.0);
    case WeightScheme::local:
        return parametrized_weights(config.scheme, p_star, gamma * config.locality_strength, 0.0,
                                    config.period, config.locality_c);
    case WeightScheme::seasonal:
        return parametrized_weights(config.scheme, p_star, 0.0, gamma * config.seasonal_strength,
                                    config.period, config.locality_c);
    case WeightScheme::combined:
        return parametrized_weights(config.scheme, p_star, gamma * config.locality_strength,
                                    gamma * config.seasonal_strength, config.period, config.locality_c);
    }
    return std::vector<double>(p_star, 1.0);
}

std::size_t select_row(const std::vector<IcRow>& table, Criterion criterion) {
    std::size_t best = table.size();
    double best_ic = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < table.size(); ++i) {
        const double ic = criterion == Criterion::bic ? table[i].bic : table[i].aicc;
        if (std::isnan(ic) || ic == std::numeric_limits<double>::infinity()) continue;
        bool better = best == table.size() || ic < best_ic;
        if (!better && ic == best_ic) {
            const auto& cur = table[best];
            better = table[i].lambda > cur.lambda ||
                     (table[i].lambda == cur.lambda && table[i].gamma < cur.gamma);
        }
        if (better) {
            best = i;
            best_ic = ic;
        }
    }
    if (best == table.size()) {
        throw Error(ErrorCode::numerical, "tuning failed: no (gamma, lambda) pair has an admissible criterion value");
    }
    return best;
}

namespace {

void validate(const TimeSeries& train, const SrlOptions& options) {
    if (train.size() < 2) throw Error(ErrorCode::invalid_order, "training series is empty");
    if (options.p_star == 0 || options.p_star + 2 > train.size()) {
        std::ostringstream msg;
        msg << "maximum lag " << options.p_star << " needs at least " << options.p_star + 2
            << " training observations, have " << train.size();
        throw Error(ErrorCode::invalid_order, msg.str());
    }
    const auto& gammas = options.grid.gammas;
    if (std::find(gammas.begin(), gammas.end(), 0.0) == gammas.end()) {
        throw Error(ErrorCode::config, "gamma grid must contain 0 so the ordinary lasso is always a candidate");
    }
    for (double g : gammas) {
        if (!(g >= 0.0) || !std::isfinite(g)) throw Error(ErrorCode::config, "gamma values must be finite and >= 0");
    }
    if (options.grid.n_lambda == 0) throw Error(ErrorCode::config, "n_lambda must be positive");
}

struct GammaPath {
    std::vector<double> weights;
    LassoPath path;
    std::vector<std::string> warnings;
};

GammaPath fit_one_gamma(const std::shared_ptr<const LassoData>& data, const ArDesign& design,
                        const SrlOptions& options, double gamma, const PacfResult* pacf,
                        const std::vector<double>& exo_stats) {
    GammaPath out;
    const auto endo = endogenous_weights(options.weights, design.p_star, gamma, pacf);
    auto assembled = assemble_weights(endo, design.exog_count, options.weights.exo_mode,
                                      std::span<const double>(exo_stats), gamma, options.weights.cap);
    out.warnings = std::move(assembled.warnings);
    out.weights = std::move(assembled.w);
    normalize_weights(out.weights);

    LassoProblem problem;
    problem.data = data;
    problem.weights = out.weights;
    problem.options = options.lasso;
    const double lmax = lambda_max(*data, out.weights);
    problem.lambda_grid = lambda_grid(lmax, options.grid.n_lambda, default_min_ratio(design.rows(), design.cols()));
    out.path = fit_path(problem);
    return out;
}

}  // namespace

SrlFit fit_srl(const TimeSeries& train, const SrlOptions& options) {
    validate(train, options);
    const ArDesign design = standardize(build_design(train, options.p_star));
    auto data = std::make_shared<const LassoData>(LassoData::from(design.columns, design.response, options.parallel));

    SrlFit fit;
    std::unique_ptr<PacfResult> pacf_result;
    if (options.weights.scheme == WeightScheme::pacf) {
        pacf_result = std::make_unique<PacfResult>(pacf(train.values(), options.p_star));
        fit.warnings = pacf_result->warnings;
    }
    for (std::size_t j = 0; j < design.constant.size(); ++j) {
        if (design.constant[j]) {
            fit.warnings.push_back((j < design.p_star ? "lag " + std::to_string(j + 1)
                                                      : "exogenous column '" + train.exog_names()[j - design.p_star] + "'") +
                                   " is constant in the training design and was dropped");
        }
    }

    // First-stage marginal least-squares slopes on the standardized scale.
    std::vector<double> exo_stats(design.exog_count, 0.0);
    for (std::size_t i = 0; i < design.exog_count; ++i) {
        const auto j = static_cast<Eigen::Index>(design.p_star + i);
        const double gjj = data->gram(j, j);
        exo_stats[i] = gjj > 0.0 ? data->xty(j) / gjj : 0.0;
    }

    const auto& gammas = options.grid.gammas;
    const auto n_gamma = static_cast<long>(gammas.size());
    std::vector<GammaPath> paths(gammas.size());
    std::vector<std::exception_ptr> failures(gammas.size());
#pragma omp parallel for schedule(dynamic) if (options.parallel)
    for (long g = 0; g < n_gamma; ++g) {
        const auto gi = static_cast<std::size_t>(g);
        try {
            paths[gi] = fit_one_gamma(data, design, options, gammas[gi], pacf_result.get(), exo_stats);
        } catch (...) {
            failures[gi] = std::current_exception();
        }
    }
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }

    const std::size_t rows = design.rows();
    fit.ic_table.reserve(gammas.size() * options.grid.n_lambda);
    for (std::size_t g = 0; g < gammas.size(); ++g) {
        const auto& p = paths[g].path;
        for (std::size_t k = 0; k < p.lambdas.size(); ++k) {
            IcRow row;
            row.gamma = gammas[g];
            row.lambda = p.lambdas[k];
            row.df = p.df[k];
            row.rss = p.rss[k];
            row.aicc = aicc(row.rss, rows, row.df);
            row.bic = bic(row.rss, rows, row.df);
            fit.ic_table.push_back(row);
        }
        for (auto& w : paths[g].warnings) fit.warnings.push_back(std::move(w));
        for (std::size_t k = 0; k < p.converged.size(); ++k) {
            if (!p.converged[k]) {
                std::ostringstream msg;
                msg << "coordinate descent hit the iteration cap at gamma " << gammas[g] << ", lambda index " << k;
                fit.warnings.push_back(msg.str());
            }
        }
    }

    const std::size_t best = select_row(fit.ic_table, options.grid.criterion);
    fit.gamma_index = best / options.grid.n_lambda;
    fit.lambda_index = best % options.grid.n_lambda;
    fit.gamma_opt = fit.ic_table[best].gamma;
    fit.lambda_opt = fit.ic_table[best].lambda;
    fit.criterion_value = options.grid.criterion == Criterion::bic ? fit.ic_table[best].bic : fit.ic_table[best].aicc;

    const auto& chosen = paths[fit.gamma_index];
    fit.beta_std = chosen.path.betas.row(static_cast<Eigen::Index>(fit.lambda_index)).transpose();
    fit.selected_weights = chosen.weights;
    const auto original = destandardize(design, fit.beta_std);
    fit.model.intercept = original.intercept;
    fit.model.lag_coefs.assign(original.beta.data(), original.beta.data() + design.p_star);
    fit.model.exog_coefs.assign(original.beta.data() + design.p_star, original.beta.data() + original.beta.size());
    fit.active_lags = fit.model.active_lags();

    fit.p_star = options.p_star;
    fit.n_train = train.size();
    fit.rows = rows;
    fit.col_means = design.col_means;
    fit.col_sds = design.col_sds;
    fit.response_center = design.response_center;
    fit.weights = options.weights;
    fit.grid = options.grid;
    fit.exog_names = train.exog_names();
    fit.categorical = train.categorical();
    return fit;
}

}  // namespace sparselag

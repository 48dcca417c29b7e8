#include "sparselag/commands.hpp"

#include "sparselag/error.hpp"
#include "sparselag/kernels.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace sparselag {

using nlohmann::json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// RunConfig serialization

std::string serialize(const RunConfig& c) {
    json categorical = json::array();
    for (const auto& spec : c.columns.categorical) {
        categorical.push_back({{"column", spec.column}, {"baseline", spec.baseline}, {"levels", spec.levels}});
    }
    json doc{
        {"input", c.input},
        {"value_column", c.columns.value},
        {"exog_columns", c.columns.exog},
        {"categorical", categorical},
        {"time_column", c.columns.time ? json(*c.columns.time) : json(nullptr)},
        {"p_star", c.p_star},
        {"p_max", c.p_max},
        {"scheme", to_string(c.weights.scheme)},
        {"locality_strength", c.weights.locality_strength},
        {"seasonal_strength", c.weights.seasonal_strength},
        {"period", c.weights.period},
        {"locality_c", c.weights.locality_c},
        {"weight_cap", c.weights.cap},
        {"exo_mode", to_string(c.weights.exo_mode)},
        {"gammas", c.gammas},
        {"criterion", to_string(c.criterion)},
        {"n_lambda", c.n_lambda},
        {"train_fraction", c.train_fraction},
        {"horizon", c.horizon},
        {"output_dir", c.output_dir},
        {"seed", c.seed},
        {"parallel", c.parallel},
    };
    return doc.dump(2) + "\n";
}

RunConfig parse_run_config(const std::string& json_text) {
    RunConfig c;
    try {
        const json doc = json::parse(json_text);
        c.input = doc.at("input").get<std::string>();
        c.columns.value = doc.at("value_column").get<std::string>();
        c.columns.exog = doc.at("exog_columns").get<std::vector<std::string>>();
        for (const auto& e : doc.at("categorical")) {
            c.columns.categorical.push_back({e.at("column").get<std::string>(), e.at("baseline").get<std::string>(),
                                             e.at("levels").get<std::vector<std::string>>()});
        }
        if (!doc.at("time_column").is_null()) c.columns.time = doc.at("time_column").get<std::string>();
        c.p_star = doc.at("p_star").get<std::size_t>();
        c.p_max = doc.at("p_max").get<std::size_t>();
        c.weights.scheme = parse_weight_scheme(doc.at("scheme").get<std::string>());
        c.weights.locality_strength = doc.at("locality_strength").get<double>();
        c.weights.seasonal_strength = doc.at("seasonal_strength").get<double>();
        c.weights.period = doc.at("period").get<double>();
        c.weights.locality_c = doc.at("locality_c").get<double>();
        c.weights.cap = doc.at("weight_cap").get<double>();
        c.weights.exo_mode = parse_exo_mode(doc.at("exo_mode").get<std::string>());
        c.gammas = doc.at("gammas").get<std::vector<double>>();
        c.criterion = parse_criterion(doc.at("criterion").get<std::string>());
        c.n_lambda = doc.at("n_lambda").get<std::size_t>();
        c.train_fraction = doc.at("train_fraction").get<double>();
        c.horizon = doc.at("horizon").get<std::size_t>();
        c.output_dir = doc.at("output_dir").get<std::string>();
        c.seed = doc.at("seed").get<std::uint64_t>();
        c.parallel = doc.at("parallel").get<bool>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::config, std::string("invalid run configuration: ") + e.what());
    }
    return c;
}

bool operator==(const RunConfig& a, const RunConfig& b) { return serialize(a) == serialize(b); }

// ---------------------------------------------------------------------------
// CSV writers

void write_pacf_csv(const PacfResult& result, std::ostream& out) {
    write_csv_row(out, {"lag", "acf", "pacf", "conf_band"});
    for (std::size_t j = 0; j < result.max_lag; ++j) {
        write_csv_row(out, {std::to_string(j + 1), format_double(result.acf[j]), format_double(result.pacf[j]),
                            format_double(result.conf_band)});
    }
}

void write_ic_table_csv(const std::vector<IcRow>& table, std::ostream& out) {
    write_csv_row(out, {"gamma", "lambda", "df", "rss", "aicc", "bic"});
    for (const auto& r : table) {
        write_csv_row(out, {format_double(r.gamma), format_double(r.lambda), std::to_string(r.df), format_double(r.rss),
                            format_double(r.aicc), format_double(r.bic)});
    }
}

void write_coefficients_csv(const CoefficientTable& table, std::ostream& out) {
    write_csv_row(out, {"term", "estimate", "std_error", "ci_low", "ci_high", "baseline"});
    for (const auto& r : table.rows) {
        if (r.baseline) {
            write_csv_row(out, {r.name, "", "", "", "", "true"});
        } else {
            write_csv_row(out, {r.name, format_double(r.estimate), format_double(r.std_error), format_double(r.ci_low),
                                format_double(r.ci_high), "false"});
        }
    }
}

void write_accuracy_csv(const AccuracyReport& report, std::ostream& out) {
    write_csv_row(out, {"r2", "rmspe", "mae", "mape", "n_star"});
    write_csv_row(out, {format_double(report.r2), format_double(report.rmspe), format_double(report.mae),
                        format_double(report.mape), std::to_string(report.n_star)});
}

namespace {

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot open '" + path.string() + "' for writing");
    return out;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::io, "cannot create output directory '" + dir + "': " + ec.message());
}

std::string join_lags(const std::vector<std::size_t>& lags) {
    std::ostringstream s;
    for (std::size_t i = 0; i < lags.size(); ++i) s << (i ? " " : "") << lags[i];
    return lags.empty() ? "(none)" : s.str();
}

std::string make_summary(const FitOutcome& outcome) {
    const SrlFit& fit = outcome.model.fit;
    std::ostringstream s;
    s << "sparselag fit\n";
    s << "  observations (train / total): " << fit.n_train << " / " << outcome.model.n_total << "\n";
    s << "  maximum lag p*: " << fit.p_star << "  design rows: " << fit.rows << "\n";
    s << "  weight scheme: " << to_string(fit.weights.scheme)
      << "  exogenous mode: " << to_string(fit.weights.exo_mode) << "\n";
    s << "  criterion: " << to_string(fit.grid.criterion) << " = " << format_double(fit.criterion_value) << "\n";
    s << "  selected gamma: " << format_double(fit.gamma_opt) << "  lambda: " << format_double(fit.lambda_opt) << "\n";
    s << "  intercept: " << format_double(fit.model.intercept) << "\n";
    s << "  active lags (" << fit.active_lags.size() << "): " << join_lags(fit.active_lags) << "\n";
    if (!fit.model.exog_coefs.empty()) {
        s << "  exogenous coefficients:\n";
        if (outcome.coefficients) {
            for (const auto& r : outcome.coefficients->rows) {
                if (r.baseline) {
                    s << "    " << r.name << ": baseline\n";
                } else {
                    s << "    " << r.name << ": " << format_double(r.estimate) << " ("
                      << format_double(r.ci_low) << ", " << format_double(r.ci_high) << ")\n";
                }
            }
        } else {
            for (std::size_t i = 0; i < fit.model.exog_coefs.size(); ++i) {
                s << "    " << fit.exog_names[i] << ": " << format_double(fit.model.exog_coefs[i]) << "\n";
            }
        }
    }
    if (!outcome.evaluation_enabled) {
        s << "  evaluation: disabled (train fraction 1.0 leaves no test data)\n";
    }
    for (const auto& w : fit.warnings) s << "  warning: " << w << "\n";
    return s.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Commands

FitOutcome fit_series(const TimeSeries& series, const RunConfig& config) {
    auto [train, test] = split_train_test(series, config.train_fraction);
    const std::size_t p_star = config.p_star > 0 ? config.p_star : default_p_star(train.size(), config.p_max);

    SrlOptions options;
    options.p_star = p_star;
    options.weights = config.weights;
    options.grid.gammas = config.gammas;
    options.grid.n_lambda = config.n_lambda;
    options.grid.criterion = config.criterion;
    options.parallel = config.parallel;

    FitOutcome outcome;
    outcome.model.fit = fit_srl(train, options);
    outcome.model.columns = config.columns;
    for (std::size_t i = 0; i < outcome.model.columns.categorical.size(); ++i) {
        outcome.model.columns.categorical[i].levels = outcome.model.fit.categorical.at(i).levels;
    }
    outcome.model.train_fraction = config.train_fraction;
    outcome.model.n_total = series.size();
    outcome.model.seed = config.seed;
    outcome.ic_table = outcome.model.fit.ic_table;
    outcome.evaluation_enabled = test.size() > 0;
    if (train.has_exog() && config.weights.exo_mode == ExoMode::unpenalized) {
        outcome.coefficients = infer_exogenous(outcome.model.fit, train);
    }
    outcome.summary = make_summary(outcome);
    return outcome;
}

FitOutcome cmd_fit(const RunConfig& config) {
    const TimeSeries series = load_series(read_csv_file(config.input), config.columns);
    FitOutcome outcome = fit_series(series, config);
    ensure_dir(config.output_dir);
    const fs::path dir(config.output_dir);
    save_model(outcome.model, (dir / "model.json").string());
    {
        auto out = open_output(dir / "ic_table.csv");
        write_ic_table_csv(outcome.ic_table, out);
    }
    {
        auto out = open_output(dir / "weights.csv");
        const auto& fit = outcome.model.fit;
        write_csv_row(out, {"column", "weight"});
        for (std::size_t j = 0; j < fit.selected_weights.size(); ++j) {
            const std::string name = j < fit.p_star ? "lag" + std::to_string(j + 1) : fit.exog_names[j - fit.p_star];
            write_csv_row(out, {name, format_double(fit.selected_weights[j])});
        }
    }
    if (outcome.coefficients) {
        auto out = open_output(dir / "coefficients.csv");
        write_coefficients_csv(*outcome.coefficients, out);
    }
    {
        auto out = open_output(dir / "summary.txt");
        out << outcome.summary;
    }
    return outcome;
}

TimeSeries load_model_series(const ModelFile& model, const std::string& input) {
    const CsvTable table = read_csv_file(input);
    TimeSeries series;
    try {
        series = load_series(table, model.columns);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::config) throw;
        throw Error(ErrorCode::model_format, std::string("input does not match the model's columns: ") + e.what());
    }
    if (series.exog_names() != model.fit.exog_names) {
        throw Error(ErrorCode::model_format, "input columns do not match the exogenous columns the model was fitted with");
    }
    return series;
}

EvaluateOutcome evaluate_model(const ModelFile& model, const TimeSeries& series, std::size_t h, bool parallel) {
    const std::size_t test_start = model.fit.n_train;
    if (series.size() <= test_start) {
        throw Error(ErrorCode::invalid_order,
                    "no test data: the model was trained on the first " + std::to_string(test_start) +
                        " observations and the input has " + std::to_string(series.size()));
    }
    if (series.exog_count() != model.fit.model.exog_coefs.size()) {
        throw Error(ErrorCode::model_format, "input exogenous columns do not match the model");
    }
    EvaluateOutcome out;
    out.forecasts = forecast_origins(model.fit.model, series, test_start, h, parallel);
    const auto rows = out.forecasts.point_forecasts.rows();
    out.one_step_pred.resize(static_cast<std::size_t>(rows));
    out.one_step_actual.resize(static_cast<std::size_t>(rows));
    for (Eigen::Index i = 0; i < rows; ++i) {
        out.one_step_pred[static_cast<std::size_t>(i)] = out.forecasts.point_forecasts(i, 0);
        out.one_step_actual[static_cast<std::size_t>(i)] = out.forecasts.actuals(i, 0);
    }
    out.one_step = accuracy(out.one_step_pred, out.one_step_actual);
    if (!out.forecasts.rolling_sums.empty()) {
        out.rolling = accuracy(out.forecasts.rolling_sums, out.forecasts.actual_rolling_sums);
    }
    return out;
}

EvaluateOutcome cmd_evaluate(const std::string& model_path, const std::string& input, std::size_t h,
                             const std::string& output_dir) {
    const ModelFile model = load_model(model_path);
    const TimeSeries series = load_model_series(model, input);
    EvaluateOutcome out = evaluate_model(model, series, h);

    ensure_dir(output_dir);
    const fs::path dir(output_dir);
    {
        auto f = open_output(dir / "metrics_one_step.csv");
        write_accuracy_csv(out.one_step, f);
    }
    if (out.rolling) {
        auto f = open_output(dir / "metrics_rolling_sum.csv");
        write_accuracy_csv(*out.rolling, f);
    }
    {
        auto report = [](const AccuracyReport& r) {
            return json{{"r2", r.r2}, {"rmspe", r.rmspe}, {"mae", r.mae}, {"mape", r.mape}, {"n_star", r.n_star}};
        };
        json doc{{"horizon", h}, {"one_step", report(out.one_step)},
                 {"rolling_sum", out.rolling ? report(*out.rolling) : json(nullptr)}};
        auto f = open_output(dir / "metrics.json");
        f << doc.dump(2) << "\n";
    }
    {
        auto f = open_output(dir / "predictions.csv");
        write_csv_row(f, {"index", "predicted", "actual"});
        for (std::size_t i = 0; i < out.one_step_pred.size(); ++i) {
            write_csv_row(f, {std::to_string(model.fit.n_train + i + 1), format_double(out.one_step_pred[i]),
                              format_double(out.one_step_actual[i])});
        }
    }
    {
        auto f = open_output(dir / "rolling_sums.csv");
        write_csv_row(f, {"origin", "predicted_sum", "actual_sum"});
        for (std::size_t i = 0; i < out.forecasts.rolling_sums.size(); ++i) {
            write_csv_row(f, {std::to_string(out.forecasts.first_origin + i + 1), format_double(out.forecasts.rolling_sums[i]),
                              format_double(out.forecasts.actual_rolling_sums[i])});
        }
    }
    return out;
}

std::vector<double> cmd_forecast(const std::string& model_path, const std::string& input, std::size_t h,
                                 const std::optional<std::string>& exog_future_path, std::ostream& out) {
    const ModelFile model = load_model(model_path);
    const TimeSeries series = load_model_series(model, input);
    Eigen::MatrixXd future(0, 0);
    if (!model.fit.model.exog_coefs.empty()) {
        if (!exog_future_path) {
            throw Error(ErrorCode::config, "the model has exogenous terms; pass their future values with --exog-future");
        }
        auto exog = load_exog(read_csv_file(*exog_future_path), model.columns);
        if (exog.names != model.fit.exog_names) {
            throw Error(ErrorCode::model_format, "future exogenous columns do not match the model");
        }
        future = std::move(exog.matrix);
    }
    const auto pred = predict_recursive(model.fit.model, series.values(), future, h);
    write_csv_row(out, {"step", "index", "forecast"});
    for (std::size_t s = 0; s < pred.size(); ++s) {
        write_csv_row(out, {std::to_string(s + 1), std::to_string(series.size() + s + 1), format_double(pred[s])});
    }
    return pred;
}

CoefficientTable cmd_coefficients(const std::string& model_path, const std::string& input, double level,
                                  std::ostream& out) {
    const ModelFile model = load_model(model_path);
    const TimeSeries series = load_model_series(model, input);
    if (series.size() < model.fit.n_train) {
        throw Error(ErrorCode::invalid_order, "input is shorter than the training part of the model");
    }
    const auto table = infer_exogenous(model.fit, series.slice(0, model.fit.n_train), level);
    write_coefficients_csv(table, out);
    return table;
}

PacfResult cmd_pacf(const std::string& input, const std::string& value_column, std::size_t max_lag,
                    std::ostream& out) {
    SeriesColumns columns;
    columns.value = value_column;
    const TimeSeries series = load_series(read_csv_file(input), columns);
    const auto result = pacf(series.values(), max_lag);
    write_pacf_csv(result, out);
    return result;
}

void cmd_simulate(const SarSpec& spec, std::size_t n, std::ostream& out) {
    const TimeSeries ts = simulate_sar(spec, n);
    std::vector<std::string> header{"t", "y"};
    header.insert(header.end(), ts.exog_names().begin(), ts.exog_names().end());
    write_csv_row(out, header);
    const auto values = ts.values();
    std::vector<std::string> cells;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        cells.clear();
        cells.push_back(std::to_string(i + 1));
        cells.push_back(format_double(values[i]));
        for (Eigen::Index j = 0; j < ts.exog().cols(); ++j) {
            cells.push_back(format_double(ts.exog()(static_cast<Eigen::Index>(i), j)));
        }
        write_csv_row(out, cells);
    }
}

// ---------------------------------------------------------------------------
// Argument parsing

namespace {

std::vector<std::string> split_fields(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

double to_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::config, "cannot read '" + s + "' as a number in " + what);
    }
}

std::size_t to_size(const std::string& s, const std::string& what) {
    const double v = to_double(s, what);
    if (v < 0.0 || v != std::floor(v)) throw Error(ErrorCode::config, "'" + s + "' must be a non-negative integer in " + what);
    return static_cast<std::size_t>(v);
}

ExogEffect parse_effect(const std::string& text, const std::string& kind) {
    const auto f = split_fields(text, ':');
    auto need = [&](std::size_t count, const char* form) {
        if (f.size() != count) throw Error(ErrorCode::config, "--exog-" + kind + " expects " + form + ", got '" + text + "'");
    };
    ExogEffect e;
    if (kind == "pulse") {
        need(5, "name:period:width:offset:effect");
        e.generator = PulseGenerator{to_size(f[1], text), to_size(f[2], text), to_size(f[3], text)};
    } else if (kind == "blocks") {
        need(4, "name:block:probability:effect");
        e.generator = RandomBlockGenerator{to_size(f[1], text), to_double(f[2], text)};
    } else if (kind == "bernoulli") {
        need(3, "name:probability:effect");
        e.generator = BernoulliGenerator{to_double(f[1], text)};
    } else {
        need(4, "name:mean:sd:effect");
        e.generator = GaussianGenerator{to_double(f[1], text), to_double(f[2], text)};
    }
    e.name = f.front();
    e.coefficient = to_double(f.back(), text);
    return e;
}

std::vector<CategoricalSpec> parse_categorical(const std::vector<std::string>& specs) {
    std::vector<CategoricalSpec> out;
    for (const auto& s : specs) {
        const auto pos = s.find(':');
        if (pos == std::string::npos || pos == 0 || pos + 1 == s.size()) {
            throw Error(ErrorCode::config, "--categorical expects column:baseline, got '" + s + "'");
        }
        out.push_back({s.substr(0, pos), s.substr(pos + 1), {}});
    }
    return out;
}

struct CliState {
    RunConfig config;
    std::string scheme = "pacf";
    std::string exo_mode = "unpenalized";
    std::string criterion = "aicc";
    std::vector<std::string> categorical;
    std::string time_column;
    std::string model_path;
    std::string output;  // file or "-" for stdout
    std::size_t max_lag = 0;
    std::string exog_future;
    double level = 0.95;
    int threads = 0;
    bool serial = false;
    bool print_config = false;

    SarSpec sim;
    std::size_t sim_n = 1000;
    std::size_t sim_burn_in = 0;
    bool sim_burn_in_set = false;
    std::vector<std::string> pulses, blocks, bernoullis, gaussians;

    std::size_t weight_p_star = 0;
    double weight_gamma = 1.0;
    std::string weight_input;
};

void add_series_options(CLI::App* cmd, CliState& st) {
    cmd->add_option("--input,-i", st.config.input, "Input CSV with a header row")->required();
    cmd->add_option("--value", st.config.columns.value, "Target column")->capture_default_str();
    cmd->add_option("--exog", st.config.columns.exog, "Numeric exogenous columns")->delimiter(',');
    cmd->add_option("--categorical", st.categorical, "Categorical exogenous column as column:baseline")->delimiter(',');
    cmd->add_option("--time", st.time_column, "Optional time column, checked for increasing order");
}

void add_tuning_options(CLI::App* cmd, CliState& st) {
    auto& c = st.config;
    cmd->add_option("--p-star", c.p_star, "Maximum lag (0: min(ceil(n_train/4), p-max))")->capture_default_str();
    cmd->add_option("--p-max", c.p_max, "Cap on the default maximum lag (0: none)")->capture_default_str();
    cmd->add_option("--scheme", st.scheme, "Lag weights: pacf, uniform, local, seasonal, combined")->capture_default_str();
    cmd->add_option("--gammas", c.gammas, "Grid of weight exponents (must contain 0)")->delimiter(',')->capture_default_str();
    cmd->add_option("--gamma-l", c.weights.locality_strength, "Locality strength for local/combined")->capture_default_str();
    cmd->add_option("--gamma-s", c.weights.seasonal_strength, "Seasonal strength for seasonal/combined")->capture_default_str();
    cmd->add_option("--period", c.weights.period, "Suspected seasonal period m")->capture_default_str();
    cmd->add_option("--c", c.weights.locality_c, "Locality constant c")->capture_default_str();
    cmd->add_option("--cap", c.weights.cap, "Largest finite penalty weight before normalization")->capture_default_str();
    cmd->add_option("--exo-mode", st.exo_mode, "Exogenous penalty: unpenalized, adaptive, uniform")->capture_default_str();
    cmd->add_option("--criterion", st.criterion, "aicc or bic")->capture_default_str();
    cmd->add_option("--n-lambda", c.n_lambda, "Lambda values per path")->capture_default_str();
    cmd->add_option("--train-fraction", c.train_fraction, "Leading share of the series used for fitting")->capture_default_str();
    cmd->add_option("--horizon", c.horizon, "Forecast horizon recorded with the run")->capture_default_str();
    cmd->add_option("--out-dir,-o", c.output_dir, "Output directory")->capture_default_str();
    cmd->add_option("--seed", c.seed, "Run seed recorded in the model file")->capture_default_str();
}

void finish_config(CliState& st) {
    auto& c = st.config;
    c.weights.scheme = parse_weight_scheme(st.scheme);
    c.weights.exo_mode = parse_exo_mode(st.exo_mode);
    c.criterion = parse_criterion(st.criterion);
    c.columns.categorical = parse_categorical(st.categorical);
    if (!st.time_column.empty()) c.columns.time = st.time_column;
    c.parallel = !st.serial;
}

template <class Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(fallback);
        return;
    }
    auto f = open_output(path);
    fn(f);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sparse autoregressive forecasting with rank-weighted lasso penalties"};
    app.set_config("--config", "", "TOML/INI file supplying any option; command-line flags take precedence");
    app.require_subcommand(1);
    CliState st;
    app.add_option("--threads", st.threads, "OpenMP threads (0: runtime default)");
    app.add_flag("--serial", st.serial, "Use the serial reference kernels");

    auto* sim = app.add_subcommand("simulate", "Write a simulated seasonal AR series as CSV");
    sim->add_option("--n", st.sim_n, "Length")->capture_default_str();
    sim->add_option("--phi", st.sim.phi, "Local AR coefficients")->delimiter(',');
    sim->add_option("--theta", st.sim.theta, "Seasonal AR coefficients")->delimiter(',');
    sim->add_option("--period", st.sim.m, "Seasonal period m");
    sim->add_option("--intercept", st.sim.beta0, "Intercept beta0")->capture_default_str();
    sim->add_option("--sigma", st.sim.sigma, "Innovation standard deviation")->capture_default_str();
    sim->add_option("--seed", st.sim.seed, "RNG seed")->capture_default_str();
    sim->add_option("--burn-in", st.sim_burn_in, "Discarded initial steps (default 10 (p + P m))")
        ->each([&](const std::string&) { st.sim_burn_in_set = true; });
    sim->add_option("--exog-pulse", st.pulses, "name:period:width:offset:effect");
    sim->add_option("--exog-blocks", st.blocks, "name:block:probability:effect");
    sim->add_option("--exog-bernoulli", st.bernoullis, "name:probability:effect");
    sim->add_option("--exog-gaussian", st.gaussians, "name:mean:sd:effect");
    sim->add_option("--output", st.output, "Output CSV (default stdout)");

    auto* pacf_cmd = app.add_subcommand("pacf", "Autocorrelation and partial autocorrelation table");
    pacf_cmd->add_option("--input,-i", st.config.input, "Input CSV")->required();
    pacf_cmd->add_option("--value", st.config.columns.value, "Target column")->capture_default_str();
    pacf_cmd->add_option("--max-lag", st.max_lag, "Largest lag")->required();
    pacf_cmd->add_option("--output", st.output, "Output CSV (default stdout)");

    auto* weights_cmd = app.add_subcommand("weights", "Penalty weight curve for lags 1..p*");
    weights_cmd->add_option("--p-star", st.weight_p_star, "Maximum lag")->required();
    weights_cmd->add_option("--scheme", st.scheme, "pacf, uniform, local, seasonal, combined")->capture_default_str();
    weights_cmd->add_option("--gamma", st.weight_gamma, "Weight exponent")->capture_default_str();
    weights_cmd->add_option("--gamma-l", st.config.weights.locality_strength, "Locality strength")->capture_default_str();
    weights_cmd->add_option("--gamma-s", st.config.weights.seasonal_strength, "Seasonal strength")->capture_default_str();
    weights_cmd->add_option("--period", st.config.weights.period, "Seasonal period m");
    weights_cmd->add_option("--c", st.config.weights.locality_c, "Locality constant")->capture_default_str();
    weights_cmd->add_option("--cap", st.config.weights.cap, "Weight cap")->capture_default_str();
    weights_cmd->add_option("--input,-i", st.weight_input, "Series CSV (pacf scheme)");
    weights_cmd->add_option("--value", st.config.columns.value, "Target column")->capture_default_str();
    weights_cmd->add_option("--output", st.output, "Output CSV (default stdout)");

    auto* fit_cmd = app.add_subcommand("fit", "Tune and fit the sparse lag model");
    add_series_options(fit_cmd, st);
    add_tuning_options(fit_cmd, st);
    fit_cmd->add_flag("--print-config", st.print_config, "Print the resolved configuration as JSON");

    auto* forecast_cmd = app.add_subcommand("forecast", "Recursive forecasts from the end of a series");
    forecast_cmd->add_option("--model,-m", st.model_path, "Model file")->required();
    forecast_cmd->add_option("--input,-i", st.config.input, "Series CSV")->required();
    forecast_cmd->add_option("--horizon", st.config.horizon, "Steps ahead")->capture_default_str();
    forecast_cmd->add_option("--exog-future", st.exog_future, "CSV of future exogenous rows");
    forecast_cmd->add_option("--output", st.output, "Output CSV (default stdout)");

    auto* eval_cmd = app.add_subcommand("evaluate", "Test-set accuracy: one-step and rolling-sum tables");
    eval_cmd->add_option("--model,-m", st.model_path, "Model file")->required();
    eval_cmd->add_option("--input,-i", st.config.input, "Full series CSV (training part followed by test part)")->required();
    eval_cmd->add_option("--horizon", st.config.horizon, "Rolling-sum horizon")->capture_default_str();
    eval_cmd->add_option("--out-dir,-o", st.config.output_dir, "Output directory")->capture_default_str();

    auto* coef_cmd = app.add_subcommand("coefficients", "Exogenous coefficient estimates and confidence intervals");
    coef_cmd->add_option("--model,-m", st.model_path, "Model file")->required();
    coef_cmd->add_option("--input,-i", st.config.input, "Series CSV used for fitting")->required();
    coef_cmd->add_option("--level", st.level, "Confidence level")->capture_default_str();
    coef_cmd->add_option("--output", st.output, "Output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : static_cast<int>(ErrorCode::config);
    }

    try {
        if (st.threads > 0) omp_set_num_threads(st.threads);
        if (sim->parsed()) {
            if (st.sim_burn_in_set) st.sim.burn_in = st.sim_burn_in;
            for (const auto& s : st.pulses) st.sim.exog_effects.push_back(parse_effect(s, "pulse"));
            for (const auto& s : st.blocks) st.sim.exog_effects.push_back(parse_effect(s, "blocks"));
            for (const auto& s : st.bernoullis) st.sim.exog_effects.push_back(parse_effect(s, "bernoulli"));
            for (const auto& s : st.gaussians) st.sim.exog_effects.push_back(parse_effect(s, "gaussian"));
            with_output(st.output, out, [&](std::ostream& o) { cmd_simulate(st.sim, st.sim_n, o); });
        } else if (pacf_cmd->parsed()) {
            with_output(st.output, out, [&](std::ostream& o) {
                const auto r = cmd_pacf(st.config.input, st.config.columns.value, st.max_lag, o);
                for (const auto& w : r.warnings) err << "warning: " << w << "\n";
            });
        } else if (weights_cmd->parsed()) {
            const auto scheme = parse_weight_scheme(st.scheme);
            std::vector<double> w;
            if (scheme == WeightScheme::pacf) {
                if (st.weight_input.empty()) throw Error(ErrorCode::config, "the pacf scheme needs --input");
                SeriesColumns cols;
                cols.value = st.config.columns.value;
                const auto series = load_series(read_csv_file(st.weight_input), cols);
                w = pacf_weights(pacf(series.values(), st.weight_p_star), st.weight_gamma, st.config.weights.cap);
            } else {
                WeightConfig wc = st.config.weights;
                wc.scheme = scheme;
                w = endogenous_weights(wc, st.weight_p_star, st.weight_gamma, nullptr);
            }
            with_output(st.output, out, [&](std::ostream& o) {
                write_csv_row(o, {"lag", "weight"});
                for (std::size_t j = 0; j < w.size(); ++j) write_csv_row(o, {std::to_string(j + 1), format_double(w[j])});
            });
        } else if (fit_cmd->parsed()) {
            finish_config(st);
            if (st.print_config) out << serialize(st.config);
            const auto outcome = cmd_fit(st.config);
            out << outcome.summary;
        } else if (forecast_cmd->parsed()) {
            std::optional<std::string> future;
            if (!st.exog_future.empty()) future = st.exog_future;
            with_output(st.output, out,
                        [&](std::ostream& o) { cmd_forecast(st.model_path, st.config.input, st.config.horizon, future, o); });
        } else if (eval_cmd->parsed()) {
            const auto r = cmd_evaluate(st.model_path, st.config.input, st.config.horizon, st.config.output_dir);
            out << "table,r2,rmspe,mae,mape,n_star\n";
            auto line = [&](const char* name, const AccuracyReport& a) {
                out << name << "," << format_double(a.r2) << "," << format_double(a.rmspe) << "," << format_double(a.mae)
                    << "," << format_double(a.mape) << "," << a.n_star << "\n";
            };
            line("one_step", r.one_step);
            if (r.rolling) line("rolling_sum", *r.rolling);
            for (const auto& w : r.forecasts.warnings) err << "warning: " << w << "\n";
        } else if (coef_cmd->parsed()) {
            with_output(st.output, out, [&](std::ostream& o) {
                const auto t = cmd_coefficients(st.model_path, st.config.input, st.level, o);
                for (const auto& w : t.warnings) err << "warning: " << w << "\n";
            });
        }
    } catch (const Error& e) {
        err << "error[" << to_string(e.code()) << "]: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace sparselag

#pragma once

// Command layer behind the `sparselag` executable. Each cmd_* function does
// the work of one subcommand; run_cli parses arguments and maps errors to
// exit codes.

#include "sparselag/csv.hpp"
#include "sparselag/forecast.hpp"
#include "sparselag/inference.hpp"
#include "sparselag/model_io.hpp"
#include "sparselag/pacf.hpp"
#include "sparselag/simulate.hpp"
#include "sparselag/tuning.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sparselag {

struct RunConfig {
    std::string input;
    SeriesColumns columns;
    std::size_t p_star = 0;   // 0: min(ceil(n_train / 4), p_max)
    std::size_t p_max = 0;    // 0: no cap
    WeightConfig weights;
    std::vector<double> gammas = TuningGrid{}.gammas;
    Criterion criterion = Criterion::aicc;
    std::size_t n_lambda = kDefaultLambdaCount;
    double train_fraction = 0.9;
    std::size_t horizon = 10;
    std::string output_dir = ".";
    std::uint64_t seed = 1;
    bool parallel = true;
};

/// Canonical JSON form; parse(serialize(c)) == c and serialize is byte-stable.
std::string serialize(const RunConfig& config);
RunConfig parse_run_config(const std::string& json_text);
bool operator==(const RunConfig& a, const RunConfig& b);

struct FitOutcome {
    ModelFile model;
    std::vector<IcRow> ic_table;
    std::optional<CoefficientTable> coefficients;
    std::string summary;
    bool evaluation_enabled = true;
};

/// Fit on the training part of `series`. No files are touched.
FitOutcome fit_series(const TimeSeries& series, const RunConfig& config);

/// Read config.input, fit, and write model.json, ic_table.csv, weights.csv,
/// summary.txt and (with unpenalized exogenous columns) coefficients.csv to
/// config.output_dir.
FitOutcome cmd_fit(const RunConfig& config);

struct EvaluateOutcome {
    AccuracyReport one_step;
    std::optional<AccuracyReport> rolling;
    ForecastResult forecasts;
    std::vector<double> one_step_pred;
    std::vector<double> one_step_actual;
};

/// One-step rolling-origin metrics over the test part and h-step rolling-sum
/// metrics, both computed by the forecast module.
EvaluateOutcome evaluate_model(const ModelFile& model, const TimeSeries& series, std::size_t h,
                               bool parallel = true);

/// Load model and data, evaluate, write metrics_one_step.csv,
/// metrics_rolling_sum.csv, metrics.json, predictions.csv and rolling_sums.csv.
EvaluateOutcome cmd_evaluate(const std::string& model_path, const std::string& input, std::size_t h,
                             const std::string& output_dir);

/// Rebuild the model's series from a CSV, checking it has the columns the model was fitted with.
TimeSeries load_model_series(const ModelFile& model, const std::string& input);

std::vector<double> cmd_forecast(const std::string& model_path, const std::string& input, std::size_t h,
                                 const std::optional<std::string>& exog_future_path, std::ostream& out);

CoefficientTable cmd_coefficients(const std::string& model_path, const std::string& input, double level,
                                  std::ostream& out);

PacfResult cmd_pacf(const std::string& input, const std::string& value_column, std::size_t max_lag,
                    std::ostream& out);

void cmd_simulate(const SarSpec& spec, std::size_t n, std::ostream& out);

void write_pacf_csv(const PacfResult& result, std::ostream& out);
void write_ic_table_csv(const std::vector<IcRow>& table, std::ostream& out);
void write_coefficients_csv(const CoefficientTable& table, std::ostream& out);
void write_accuracy_csv(const AccuracyReport& report, std::ostream& out);

/// Parse argv and run one subcommand. Returns the process exit code:
/// 0 on success, otherwise the ErrorCode value (1 for unexpected failures).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sparselag

#include "sparselag/model_io.hpp"

#include "sparselag/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace sparselag {

using nlohmann::json;

namespace {

json to_json_vector(const Eigen::VectorXd& v) {
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd vector_from(const json& j) {
    const auto v = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

std::string model_to_json(const ModelFile& model) {
    const SrlFit& fit = model.fit;
    json categorical = json::array();
    for (std::size_t i = 0; i < model.columns.categorical.size(); ++i) {
        const auto& spec = model.columns.categorical[i];
        json entry{{"column", spec.column}, {"baseline", spec.baseline}};
        entry["levels"] = i < fit.categorical.size() ? fit.categorical[i].levels : spec.levels;
        categorical.push_back(entry);
    }
    json exog = json::array();
    for (std::size_t i = 0; i < fit.model.exog_coefs.size(); ++i) {
        exog.push_back({{"name", fit.exog_names.at(i)}, {"coefficient", fit.model.exog_coefs[i]}});
    }
    json doc;
    doc["format"] = "sparselag-model";
    doc["format_version"] = std::to_string(kModelFormatMajor) + "." + std::to_string(kModelFormatMinor);
    doc["seed"] = model.seed;
    doc["data"] = {
        {"value_column", model.columns.value},
        {"exog_columns", model.columns.exog},
        {"categorical", categorical},
        {"time_column", model.columns.time ? json(*model.columns.time) : json(nullptr)},
        {"n_total", model.n_total},
        {"train_fraction", model.train_fraction},
        {"n_train", fit.n_train},
    };
    doc["tuning"] = {
        {"scheme", to_string(fit.weights.scheme)},
        {"locality_strength", fit.weights.locality_strength},
        {"seasonal_strength", fit.weights.seasonal_strength},
        {"period", fit.weights.period},
        {"locality_c", fit.weights.locality_c},
        {"weight_cap", fit.weights.cap},
        {"exo_mode", to_string(fit.weights.exo_mode)},
        {"criterion", to_string(fit.grid.criterion)},
        {"gammas", fit.grid.gammas},
        {"n_lambda", fit.grid.n_lambda},
    };
    doc["selection"] = {
        {"gamma", fit.gamma_opt},
        {"lambda", fit.lambda_opt},
        {"gamma_index", fit.gamma_index},
        {"lambda_index", fit.lambda_index},
        {"criterion_value", fit.criterion_value},
        {"design_rows", fit.rows},
    };
    doc["model"] = {
        {"p_star", fit.p_star},
        {"intercept", fit.model.intercept},
        {"lag_coefficients", fit.model.lag_coefs},
        {"active_lags", fit.active_lags},
        {"exogenous", exog},
    };
    doc["standardization"] = {
        {"col_means", to_json_vector(fit.col_means)},
        {"col_sds", to_json_vector(fit.col_sds)},
        {"response_center", fit.response_center},
        {"beta_standardized", to_json_vector(fit.beta_std)},
        {"penalty_weights", fit.selected_weights},
    };
    doc["warnings"] = fit.warnings;
    return doc.dump(2) + "\n";
}

ModelFile model_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::model_format, std::string("model file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("format", "") != "sparselag-model") {
        throw Error(ErrorCode::model_format, "not a sparselag model file");
    }
    const std::string version = doc.value("format_version", "");
    const auto dot = version.find('.');
    int major = -1;
    try {
        major = std::stoi(version.substr(0, dot));
    } catch (...) {
        throw Error(ErrorCode::model_format, "model file has no readable format_version");
    }
    if (major != kModelFormatMajor) {
        throw Error(ErrorCode::model_format, "model format version " + version + " is not supported (this build reads " +
                                                 std::to_string(kModelFormatMajor) + ".x)");
    }

    ModelFile m;
    try {
        const auto& data = doc.at("data");
        m.seed = doc.at("seed").get<std::uint64_t>();
        m.columns.value = data.at("value_column").get<std::string>();
        m.columns.exog = data.at("exog_columns").get<std::vector<std::string>>();
        if (!data.at("time_column").is_null()) m.columns.time = data.at("time_column").get<std::string>();
        m.n_total = data.at("n_total").get<std::size_t>();
        m.train_fraction = data.at("train_fraction").get<double>();

        SrlFit& fit = m.fit;
        fit.n_train = data.at("n_train").get<std::size_t>();
        for (const auto& c : data.at("categorical")) {
            CategoricalSpec spec{c.at("column").get<std::string>(), c.at("baseline").get<std::string>(),
                                 c.at("levels").get<std::vector<std::string>>()};
            CategoricalBlock block{spec.column, spec.baseline, spec.levels, {}};
            for (const auto& level : spec.levels) block.columns.push_back(spec.column + "=" + level);
            m.columns.categorical.push_back(spec);
            fit.categorical.push_back(block);
        }

        const auto& tuning = doc.at("tuning");
        fit.weights.scheme = parse_weight_scheme(tuning.at("scheme").get<std::string>());
        fit.weights.locality_strength = tuning.at("locality_strength").get<double>();
        fit.weights.seasonal_strength = tuning.at("seasonal_strength").get<double>();
        fit.weights.period = tuning.at("period").get<double>();
        fit.weights.locality_c = tuning.at("locality_c").get<double>();
        fit.weights.cap = tuning.at("weight_cap").get<double>();
        fit.weights.exo_mode = parse_exo_mode(tuning.at("exo_mode").get<std::string>());
        fit.grid.criterion = parse_criterion(tuning.at("criterion").get<std::string>());
        fit.grid.gammas = tuning.at("gammas").get<std::vector<double>>();
        fit.grid.n_lambda = tuning.at("n_lambda").get<std::size_t>();

        const auto& sel = doc.at("selection");
        fit.gamma_opt = sel.at("gamma").get<double>();
        fit.lambda_opt = sel.at("lambda").get<double>();
        fit.gamma_index = sel.at("gamma_index").get<std::size_t>();
        fit.lambda_index = sel.at("lambda_index").get<std::size_t>();
        fit.criterion_value = sel.at("criterion_value").get<double>();
        fit.rows = sel.at("design_rows").get<std::size_t>();

        const auto& model = doc.at("model");
        fit.p_star = model.at("p_star").get<std::size_t>();
        fit.model.intercept = model.at("intercept").get<double>();
        fit.model.lag_coefs = model.at("lag_coefficients").get<std::vector<double>>();
        fit.active_lags = model.at("active_lags").get<std::vector<std::size_t>>();
        for (const auto& e : model.at("exogenous")) {
            fit.exog_names.push_back(e.at("name").get<std::string>());
            fit.model.exog_coefs.push_back(e.at("coefficient").get<double>());
        }

        const auto& st = doc.at("standardization");
        fit.col_means = vector_from(st.at("col_means"));
        fit.col_sds = vector_from(st.at("col_sds"));
        fit.response_center = st.at("response_center").get<double>();
        fit.beta_std = vector_from(st.at("beta_standardized"));
        fit.selected_weights = st.at("penalty_weights").get<std::vector<double>>();
        fit.warnings = doc.at("warnings").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::model_format, std::string("model file is missing or has malformed fields: ") + e.what());
    }
    if (m.fit.model.lag_coefs.size() != m.fit.p_star) {
        throw Error(ErrorCode::model_format, "model file lag coefficient count does not match p_star");
    }
    return m;
}

void save_model(const ModelFile& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot open '" + path + "' for writing");
    out << model_to_json(model);
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json(buf.str());
}

}  // namespace sparselag

#include "sparselag/inference.hpp"

#include "sparselag/error.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sparselag {

namespace {

double normal_quantile(double level) {
    const boost::math::normal standard(0.0, 1.0);
    return boost::math::quantile(standard, 0.5 + level / 2.0);
}

// Greedy column selection: keep a column only if it is not (numerically) in
// the span of the ones kept before it.
std::vector<Eigen::Index> independent_columns(const Eigen::MatrixXd& z) {
    std::vector<Eigen::Index> kept;
    Eigen::MatrixXd basis(z.rows(), 0);
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
        const Eigen::VectorXd col = z.col(j);
        const double norm = col.norm();
        if (norm == 0.0) continue;
        Eigen::VectorXd resid = col;
        if (basis.cols() > 0) {
            resid -= basis * (basis.transpose() * col);
            resid -= basis * (basis.transpose() * resid);  // second pass for orthogonality
        }
        const double rn = resid.norm();
        if (rn <= 1e-9 * norm) continue;
        basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
        basis.col(basis.cols() - 1) = resid / rn;
        kept.push_back(j);
    }
    return kept;
}

}  // namespace

CoefficientTable offset_regression(const ArModel& model, const TimeSeries& train, double level,
                                   const std::vector<CategoricalBlock>& categorical) {
    if (!(level > 0.0 && level < 1.0)) throw Error(ErrorCode::config, "confidence level must lie in (0, 1)");
    const std::size_t p = model.p_star();
    const std::size_t n = train.size();
    const std::size_t k = train.exog_count();
    if (k != model.exog_coefs.size()) throw Error(ErrorCode::config, "series exogenous columns do not match the model");
    if (n <= p + 1) throw Error(ErrorCode::invalid_order, "not enough observations after the lag window");

    const auto rows = static_cast<Eigen::Index>(n - p);
    const auto values = train.values();
    CoefficientTable table;
    table.level = level;
    table.n_rows_used = static_cast<std::size_t>(rows);
    table.response = Eigen::Map<const Eigen::VectorXd>(values.data() + p, rows);
    table.offset = Eigen::VectorXd::Zero(rows);
    for (std::size_t j = 1; j <= p; ++j) {
        const double b = model.lag_coefs[j - 1];
        if (b == 0.0) continue;
        table.offset += b * Eigen::Map<const Eigen::VectorXd>(values.data() + p - j, rows);
    }

    Eigen::MatrixXd z(rows, static_cast<Eigen::Index>(k) + 1);
    z.col(0).setOnes();
    if (k > 0) z.rightCols(static_cast<Eigen::Index>(k)) = train.exog().bottomRows(rows);
    std::vector<std::string> names{"(Intercept)"};
    for (const auto& name : train.exog_names()) names.push_back(name);

    const auto kept = independent_columns(z);
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
        if (std::find(kept.begin(), kept.end(), j) == kept.end()) {
            table.warnings.push_back("column '" + names[static_cast<std::size_t>(j)] +
                                     "' is aliased with earlier columns and was dropped");
        }
    }
    const auto cols = static_cast<Eigen::Index>(kept.size());
    if (rows <= cols) throw Error(ErrorCode::invalid_order, "offset regression has no residual degrees of freedom");
    Eigen::MatrixXd zk(rows, cols);
    for (Eigen::Index a = 0; a < cols; ++a) zk.col(a) = z.col(kept[static_cast<std::size_t>(a)]);

    const Eigen::VectorXd target = table.response - table.offset;
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(zk);
    const Eigen::VectorXd coef = qr.solve(target);
    const Eigen::VectorXd part = zk * coef;
    table.fitted = table.offset + part;
    table.residuals = target - part;
    const double sigma2 = table.residuals.squaredNorm() / static_cast<double>(rows - cols);
    table.residual_sd = std::sqrt(sigma2);

    const Eigen::MatrixXd r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv = r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(cols, cols));
    const Eigen::VectorXd var = sigma2 * r_inv.rowwise().squaredNorm();
    const double zq = normal_quantile(level);

    std::vector<CoefficientRow> estimated(static_cast<std::size_t>(z.cols()));
    std::vector<bool> present(static_cast<std::size_t>(z.cols()), false);
    for (Eigen::Index a = 0; a < cols; ++a) {
        const auto j = static_cast<std::size_t>(kept[static_cast<std::size_t>(a)]);
        CoefficientRow row;
        row.name = names[j];
        row.estimate = coef(a);
        row.std_error = std::sqrt(var(a));
        row.ci_low = row.estimate - zq * row.std_error;
        row.ci_high = row.estimate + zq * row.std_error;
        estimated[j] = row;
        present[j] = true;
    }

    // Intercept, then exogenous columns in order; each categorical block is
    // preceded by its baseline row.
    for (std::size_t j = 0; j < estimated.size(); ++j) {
        if (j > 0) {
            const auto& name = names[j];
            for (const auto& block : categorical) {
                if (!block.columns.empty() && block.columns.front() == name) {
                    CoefficientRow base;
                    base.name = block.name + "=" + block.baseline;
                    base.baseline = true;
                    table.rows.push_back(base);
                }
            }
        }
        if (present[j]) table.rows.push_back(estimated[j]);
    }
    return table;
}

CoefficientTable infer_exogenous(const SrlFit& fit, const TimeSeries& train, double level) {
    if (fit.weights.exo_mode != ExoMode::unpenalized && !fit.model.exog_coefs.empty()) {
        throw Error(ErrorCode::method_mismatch,
                    "exogenous coefficients were penalized (mode '" + to_string(fit.weights.exo_mode) +
                        "'); least-squares inference is only valid for unpenalized exogenous columns");
    }
    if (train.size() != fit.n_train) {
        std::ostringstream msg;
        msg << "inference series has " << train.size() << " observations; the fit used " << fit.n_train;
        throw Error(ErrorCode::config, msg.str());
    }
    return offset_regression(fit.model, train, level, fit.categorical);
}

}  // namespace sparselag

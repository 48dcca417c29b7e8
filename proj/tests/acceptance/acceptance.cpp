// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include "sparselag/commands.hpp"
#include "sparselag/forecast.hpp"
#include "sparselag/kernels.hpp"
#include "sparselag/lasso.hpp"
#include "sparselag/pacf.hpp"
#include "sparselag/simulate.hpp"
#include "sparselag/tuning.hpp"

#include "reference_lasso.hpp"
#include "test_util.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace sparselag;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s  %2d  %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// Random regression with correlated columns.
struct Instance {
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
};

Instance random_instance(std::size_t r, std::size_t q, std::uint64_t seed) {
    Instance in;
    in.x = testutil::random_matrix(r, q, seed);
    const Eigen::VectorXd common = testutil::random_vector(r, seed + 1);
    for (Eigen::Index j = 0; j < in.x.cols(); ++j) in.x.col(j) += 0.5 * common + 0.2 * static_cast<double>(j % 3) * Eigen::VectorXd::Ones(in.x.rows());
    std::mt19937_64 rng(seed + 2);
    std::normal_distribution<double> z;
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(q));
    for (std::size_t j = 0; j < q / 5; ++j) beta(static_cast<Eigen::Index>(rng() % q)) = 2.0 * z(rng);
    in.y = (in.x * beta).array() + 1.0 + 1.5 * testutil::random_vector(r, seed + 3).array();
    return in;
}

SarSpec seasonal_spec(std::uint64_t seed) {
    SarSpec spec;
    spec.phi = {0.5};
    spec.theta = {0.3};
    spec.m = 12;
    spec.sigma = 1.0;
    spec.seed = seed;
    return spec;
}

constexpr std::size_t kRecoveryN = 4000;
constexpr std::size_t kRecoveryPStar = 36;

struct SeedRun {
    std::vector<std::size_t> active;
    double rmspe_tuned = 0.0;
    double rmspe_oracle = 0.0;
    double seconds = 0.0;
};

// Shared by criteria 5 and 6: fit on the first 90%, one-step forecasts on the rest.
std::vector<SeedRun> recovery_runs() {
    static std::vector<SeedRun> runs;
    if (!runs.empty()) return runs;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto t0 = Clock::now();
        const auto ts = simulate_sar(seasonal_spec(seed), kRecoveryN);
        const auto [train, test] = split_train_test(ts, 0.9);
        SrlOptions o;
        o.p_star = kRecoveryPStar;
        o.grid.criterion = Criterion::bic;
        const auto fit = fit_srl(train, o);
        SeedRun run;
        run.active = fit.active_lags;
        run.seconds = seconds_since(t0);

        ArModel oracle;
        oracle.lag_coefs.assign(kRecoveryPStar, 0.0);
        oracle.lag_coefs[0] = 0.5;
        oracle.lag_coefs[11] = 0.3;
        auto one_step_rmspe = [&](const ArModel& m) {
            const auto fr = forecast_origins(m, ts, train.size(), 1);
            std::vector<double> p, a;
            for (Eigen::Index i = 0; i < fr.point_forecasts.rows(); ++i) {
                p.push_back(fr.point_forecasts(i, 0));
                a.push_back(fr.actuals(i, 0));
            }
            return rmspe(p, a);
        };
        run.rmspe_tuned = one_step_rmspe(fit.model);
        run.rmspe_oracle = one_step_rmspe(oracle);
        runs.push_back(run);
    }
    return runs;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main() {
    std::printf("sparselag acceptance suite (%d OpenMP threads)\n", kernels::thread_count());

    report(1, "solver KKT on 50 random weighted problems", [] {
        const auto t0 = Clock::now();
        double worst = 0.0;
        std::size_t checked = 0, unconverged = 0;
        for (std::uint64_t p = 0; p < 50; ++p) {
            const auto in = random_instance(200, 50, 1000 + 17 * p);
            std::mt19937_64 rng(p);
            std::uniform_real_distribution<double> u(0.1, 5.0);
            std::vector<double> w(50);
            for (auto& v : w) v = u(rng);
            for (std::size_t j = 0; j < 5; ++j) w[(p + 11 * j) % 50] = 0.0;
            const auto path = fit_path(in.x, in.y, w);
            for (std::size_t k = 0; k < path.lambdas.size(); ++k) {
                if (!path.converged[k]) ++unconverged;
                const Eigen::VectorXd b = path.betas.row(static_cast<Eigen::Index>(k)).transpose();
                worst = std::max(worst, testutil::kkt_violation(in.x, in.y, w, path.lambdas[k], b, path.intercepts[k]).worst);
                ++checked;
            }
        }
        const double secs = seconds_since(t0);
        return Outcome{worst <= 1e-6 && secs < 30.0 && unconverged == 0,
                       std::to_string(checked) + " solutions, worst violation " + fmt("%.2e", worst) +
                           " (tol 1e-6), unconverged " + std::to_string(unconverged) + ", " + fmt("%.2f", secs) +
                           " s (limit 30 s)"};
    });

    report(2, "orthonormal-design soft-threshold oracle", [] {
        double worst = 0.0;
        for (std::uint64_t s = 0; s < 10; ++s) {
            const std::size_t r = 150, q = 25;
            const Eigen::MatrixXd x = testutil::orthonormal_design(r, q, testutil::random_matrix(r, q, 50 + s));
            Eigen::VectorXd y = testutil::random_vector(r, 80 + s);
            y += 0.9 * x.col(0) - 0.4 * x.col(5) + 0.2 * x.col(9);
            std::vector<double> w(q);
            for (std::size_t j = 0; j < q; ++j) w[j] = 0.3 + 0.13 * static_cast<double>((j * 7 + s) % q);
            const auto path = fit_path(x, y, w);
            const Eigen::VectorXd z = x.transpose() * y / static_cast<double>(r);
            for (std::size_t k = 0; k < path.lambdas.size(); ++k)
                for (std::size_t j = 0; j < q; ++j)
                    worst = std::max(worst, std::abs(path.betas(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) -
                                                     soft_threshold(z(static_cast<Eigen::Index>(j)), path.lambdas[k] * w[j])));
        }
        return Outcome{worst <= 1e-8, "10 designs x 101 lambdas, max |diff| " + fmt("%.2e", worst) + " (tol 1e-8)"};
    });

    report(3, "gamma = 0 path vs independent reference lasso", [] {
        double worst = 0.0;
        for (std::uint64_t s = 0; s < 10; ++s) {
            const auto in = random_instance(200, 30, 500 + 31 * s);
            const std::vector<double> ones(30, 1.0);
            const auto path = fit_path(in.x, in.y, ones);
            for (std::size_t k = 0; k < path.lambdas.size(); ++k) {
                const auto ref = testutil::reference_lasso(in.x, in.y, ones, path.lambdas[k], 3000);
                const Eigen::VectorXd b = path.betas.row(static_cast<Eigen::Index>(k)).transpose();
                worst = std::max(worst, (b - ref.beta).cwiseAbs().maxCoeff());
            }
        }
        return Outcome{worst <= 1e-6, "10 instances x 101 lambdas, max |diff| " + fmt("%.2e", worst) + " (tol 1e-6)"};
    });

    report(4, "Durbin-Levinson PACF vs last AR(j) coefficient", [] {
        SarSpec spec;
        spec.phi = {0.5, -0.25, 0.1};
        spec.seed = 2024;
        const auto ts = simulate_sar(spec, 500);
        const auto res = pacf(ts.values(), 30);
        double worst = 0.0;
        for (std::size_t j = 1; j <= 30; ++j) {
            // Order-j Yule-Walker equations, solved directly.
            Eigen::MatrixXd toeplitz(j, j);
            Eigen::VectorXd rhs(j);
            for (std::size_t a = 0; a < j; ++a) {
                rhs(static_cast<Eigen::Index>(a)) = res.acf[a];
                for (std::size_t b = 0; b < j; ++b) {
                    const std::size_t d = a > b ? a - b : b - a;
                    toeplitz(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = d == 0 ? 1.0 : res.acf[d - 1];
                }
            }
            const double last = toeplitz.fullPivLu().solve(rhs)(static_cast<Eigen::Index>(j - 1));
            worst = std::max(worst, std::abs(last - res.pacf[j - 1]));
        }
        return Outcome{worst <= 1e-8, "n = 500, 30 lags, max |diff| " + fmt("%.2e", worst) + " (tol 1e-8)"};
    });

    report(5, "order recovery on SAR(1)(1)_12, BIC, 20 seeds", [] {
        const auto runs = recovery_runs();
        int good = 0;
        double slowest = 0.0;
        std::size_t max_spurious = 0;
        for (const auto& r : runs) {
            const auto& a = r.active;
            const bool has1 = std::find(a.begin(), a.end(), 1u) != a.end();
            bool seasonal = false;
            std::size_t spurious = 0;
            for (auto j : a) {
                if (j >= 11 && j <= 13) seasonal = true;
                if (j != 1 && (j < 11 || j > 13)) ++spurious;
            }
            max_spurious = std::max(max_spurious, spurious);
            if (has1 && seasonal && spurious <= 5) ++good;
            slowest = std::max(slowest, r.seconds);
        }
        return Outcome{good >= 18 && slowest < 10.0,
                       std::to_string(good) + "/20 seeds recover (need 18), max spurious " + std::to_string(max_spurious) +
                           ", slowest seed " + fmt("%.2f", slowest) + " s (limit 10 s)"};
    });

    report(6, "tuned vs oracle one-step test RMSPE", [] {
        const auto runs = recovery_runs();
        double worst = 0.0;
        int within = 0;
        for (const auto& r : runs) {
            const double dev = std::abs(r.rmspe_tuned / r.rmspe_oracle - 1.0);
            worst = std::max(worst, dev);
            if (dev <= 0.05) ++within;
        }
        return Outcome{within == 20, std::to_string(within) + "/20 seeds within 5%, largest relative gap " +
                                         fmt("%.2f%%", 100.0 * worst)};
    });

    report(7, "coverage of 95% intervals for an injected holiday effect", [] {
        const double delta = -1.5;
        int covered = 0;
        const int reps = 200;
        double mean_est = 0.0;
        for (int rep = 0; rep < reps; ++rep) {
            SarSpec spec;
            spec.phi = {0.5};
            spec.theta = {0.3};
            spec.m = 24;
            spec.seed = 7000 + static_cast<std::uint64_t>(rep);
            spec.exog_effects = {{"holiday", RandomBlockGenerator{24, 0.1}, delta}};
            const auto ts = simulate_sar(spec, 2000);
            SrlOptions o;
            o.p_star = 50;
            const auto fit = fit_srl(ts, o);
            const auto table = infer_exogenous(fit, ts, 0.95);
            const auto& row = table.rows.at(1);
            mean_est += row.estimate / reps;
            if (row.ci_low <= delta && delta <= row.ci_high) ++covered;
        }
        const double rate = static_cast<double>(covered) / reps;
        return Outcome{rate >= 0.88 && rate <= 0.99, std::to_string(covered) + "/" + std::to_string(reps) +
                                                         " intervals cover (rate " + fmt("%.3f", rate) +
                                                         ", need [0.88, 0.99]), mean estimate " + fmt("%.3f", mean_est)};
    });

    report(8, "metric identities", [] {
        const std::vector<double> actual{1, 2, 3}, flat{2, 2, 2}, rev{3, 2, 1};
        double worst = 0.0;
        worst = std::max(worst, std::abs(rmspe(flat, actual) - std::sqrt(2.0 / 3.0)));
        worst = std::max(worst, std::abs(mae(flat, actual) - 2.0 / 3.0));
        worst = std::max(worst, std::abs(mape(flat, actual) - 100.0 / 3.0));
        worst = std::max(worst, std::abs(r_squared(rev, actual) + 3.0));
        worst = std::max(worst, std::abs(r_squared(flat, actual)));
        worst = std::max(worst, std::abs(r_squared(actual, actual) - 1.0));
        worst = std::max(worst, rmspe(actual, actual) + mae(actual, actual) + mape(actual, actual));
        std::mt19937_64 rng(8);
        std::normal_distribution<double> z;
        std::uniform_real_distribution<double> level(1.0, 50.0);
        int order_ok = 0;
        double identity = 0.0;
        for (int rep = 0; rep < 1000; ++rep) {
            const std::size_t n = 5 + static_cast<std::size_t>(rng() % 200);
            const double mu = level(rng);
            std::vector<double> a(n), p(n);
            for (std::size_t i = 0; i < n; ++i) {
                a[i] = mu + 3.0 * z(rng);
                p[i] = a[i] + 2.0 * z(rng);
            }
            const double m = mae(p, a), r = rmspe(p, a);
            double ybar = 0.0;
            for (double v : a) ybar += v;
            ybar /= static_cast<double>(n);
            if (m <= r) ++order_ok;
            identity = std::max(identity, std::abs(mape(p, a) - 100.0 * m / ybar));
        }
        return Outcome{worst <= 1e-12 && order_ok == 1000 && identity <= 1e-12,
                       "hand examples max err " + fmt("%.1e", worst) + "; mae <= rmspe " + std::to_string(order_ok) +
                           "/1000; mape identity max err " + fmt("%.1e", identity) + " (tol 1e-12)"};
    });

    report(9, "scale: n = 40000, p* = 840, 7 x 101 grid, one thread", [] {
        omp_set_num_threads(1);
        const fs::path dir = fs::temp_directory_path() / "sparselag_acceptance_scale";
        fs::remove_all(dir);
        fs::create_directories(dir);
        SarSpec spec;
        spec.phi = {0.4, 0.1};
        spec.theta = {0.3};
        spec.m = 168;
        spec.beta0 = 5.0;
        spec.seed = 99;
        spec.exog_effects = {{"holiday", RandomBlockGenerator{24, 0.03}, -1.5}};
        {
            std::ofstream out(dir / "hourly.csv");
            cmd_simulate(spec, 40000, out);
        }
        RunConfig c;
        c.input = (dir / "hourly.csv").string();
        c.columns.exog = {"holiday"};
        c.p_star = 840;
        c.output_dir = (dir / "fit").string();
        const auto t0 = Clock::now();
        const auto outcome = cmd_fit(c);
        const double secs = seconds_since(t0);
        omp_set_num_threads(omp_get_num_procs());
        fs::remove_all(dir);
        const bool shape = outcome.ic_table.size() == 7 * 101 && outcome.model.fit.p_star == 840;
        std::string lags;
        for (auto j : outcome.model.fit.active_lags) lags += (lags.empty() ? "" : " ") + std::to_string(j);
        return Outcome{shape && secs < 600.0, fmt("%.1f s", secs) + " (limit 600 s), " +
                                                  std::to_string(outcome.ic_table.size()) + " grid rows, active lags {" +
                                                  lags + "}"};
    });

    report(10, "byte-identical model and metric files across runs", [] {
        const fs::path dir = fs::temp_directory_path() / "sparselag_acceptance_determinism";
        fs::remove_all(dir);
        fs::create_directories(dir);
        {
            SarSpec spec = seasonal_spec(31);
            spec.exog_effects = {{"holiday", RandomBlockGenerator{12, 0.1}, -1.0}};
            std::ofstream out(dir / "data.csv");
            cmd_simulate(spec, 3000, out);
        }
        std::vector<std::string> files_a, files_b;
        for (const char* run : {"a", "b"}) {
            RunConfig c;
            c.input = (dir / "data.csv").string();
            c.columns.exog = {"holiday"};
            c.p_max = 40;
            c.seed = 31;
            c.output_dir = (dir / (std::string("fit_") + run)).string();
            cmd_fit(c);
            cmd_evaluate(c.output_dir + "/model.json", c.input, 10, (dir / (std::string("eval_") + run)).string());
        }
        int same = 0, total = 0;
        for (const char* f : {"fit_%s/model.json", "fit_%s/ic_table.csv", "fit_%s/coefficients.csv",
                              "eval_%s/metrics_one_step.csv", "eval_%s/metrics_rolling_sum.csv", "eval_%s/metrics.json",
                              "eval_%s/predictions.csv"}) {
            char a[128], b[128];
            std::snprintf(a, sizeof a, f, "a");
            std::snprintf(b, sizeof b, f, "b");
            const auto ta = slurp(dir / a), tb = slurp(dir / b);
            ++total;
            if (!ta.empty() && ta == tb) ++same;
        }
        fs::remove_all(dir);
        return Outcome{same == total, std::to_string(same) + "/" + std::to_string(total) + " files byte-identical"};
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures;
}

#include "sparselag/error.hpp"
#include "sparselag/penalty.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace sparselag;

TEST_CASE("local scaling function") {
    for (std::size_t j = 1; j <= 24; ++j) CHECK(local_psf(j, 0.0, 24) == 1.0);
    CHECK(local_psf(12, 3.7, 24, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(local_psf(24, 2.0, 24, 0.5) == doctest::Approx(2.25).epsilon(1e-15));
    double prev = 0;
    for (std::size_t j = 1; j <= 50; ++j) {
        const double v = local_psf(j, 1.3, 50);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("seasonal scaling function") {
    const double m = 24;
    CHECK(seasonal_psf(24, 1.5, m) == doctest::Approx(std::exp(-1.5)).epsilon(1e-14));
    CHECK(seasonal_psf(12, 1.5, m) == doctest::Approx(std::exp(1.5)).epsilon(1e-14));
    for (std::size_t j = 1; j < 60; ++j) {
        CHECK(seasonal_psf(j, 0.0, m) == 1.0);
        CHECK(std::abs(seasonal_psf(j, 0.8, m) - seasonal_psf(j + 24, 0.8, m)) < 1e-12);
    }
}

TEST_CASE("combined scaling function") {
    CHECK(combined_psf(5, 0.0, 0.0, 12, 30) == 1.0);
    CHECK(combined_psf(12, 1.0, 1.0, 12, 12, 1.0) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
    CHECK(combined_psf(12, 1.0, 1.0, 12, 12, 1.0) == doctest::Approx(0.7358).epsilon(1e-4));
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const std::size_t p = 10 + rng() % 200;
        const std::size_t j = 1 + rng() % p;
        const double m = 2 + static_cast<double>(rng() % 50);
        const double gl = u(rng), gs = u(rng), c = 0.1 + u(rng);
        CHECK(std::abs(combined_psf(j, gs, gl, m, p, c) - local_psf(j, gl, p, c) * seasonal_psf(j, gs, m)) <
              1e-12 * combined_psf(j, gs, gl, m, p, c));
    }
}

TEST_CASE("pacf weights") {
    const std::vector<double> phi{0.5, -0.5, 1.0, 0.0, 0.25, -1.0};
    const auto w0 = pacf_weights(phi, 0.0);
    for (double w : w0) CHECK(w == 1.0);
    const auto w2 = pacf_weights(phi, 2.0);
    CHECK(w2[0] == doctest::Approx(4.0));
    CHECK(w2[1] == doctest::Approx(4.0));
    CHECK(w2[2] == 1.0);
    CHECK(w2[3] == kDefaultWeightCap);
    CHECK(w2[4] == doctest::Approx(16.0));
    CHECK(w2[5] == 1.0);
    CHECK(pacf_weights(std::vector<double>{1e-9}, 1.0, 100.0)[0] == 100.0);
}

TEST_CASE("pacf weights never grow with |pacf|") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double gamma : {0.25, 1.0, 4.0, 16.0}) {
        std::vector<double> phi(200);
        for (auto& x : phi) x = u(rng);
        const auto w = pacf_weights(phi, gamma);
        for (std::size_t a = 0; a < phi.size(); ++a)
            for (std::size_t b = 0; b < phi.size(); ++b)
                if (std::abs(phi[a]) > std::abs(phi[b])) CHECK(w[a] <= w[b]);
    }
}

TEST_CASE("assemble weights by exogenous mode") {
    const std::vector<double> endo{2.0, 0.5, 7.0};
    const auto un = assemble_weights(endo, 3, ExoMode::unpenalized);
    REQUIRE(un.w.size() == 6);
    CHECK(un.w[0] == 2.0);
    CHECK(un.w[1] == 0.5);
    CHECK(un.w[2] == 7.0);
    CHECK(un.w[3] == 0.0);
    CHECK(un.w[5] == 0.0);
    CHECK(un.penalized_count() == 3);

    const auto uni = assemble_weights(endo, 2, ExoMode::uniform);
    CHECK(uni.w[3] == 1.0);
    CHECK(uni.w[4] == 1.0);

    const std::vector<double> stats{0.5, 0.0};
    const auto ad = assemble_weights(endo, 2, ExoMode::adaptive, std::span<const double>(stats), 2.0);
    CHECK(ad.w[3] == doctest::Approx(4.0));
    CHECK(ad.w[4] == kDefaultWeightCap);
    CHECK_FALSE(ad.warnings.empty());

    CHECK_THROWS_AS(assemble_weights(endo, 2, ExoMode::adaptive), Error);
}

TEST_CASE("normalization: mean 1 over penalized entries, zeros untouched") {
    std::vector<double> w{2.0, 0.0, 6.0, 4.0, 0.0};
    normalize_weights(w);
    CHECK(w[0] == doctest::Approx(0.5));
    CHECK(w[1] == 0.0);
    CHECK(w[2] == doctest::Approx(1.5));
    CHECK(w[3] == doctest::Approx(1.0));
    CHECK(w[4] == 0.0);
}

TEST_CASE("all strengths zero reduce every scheme to the ordinary lasso") {
    for (auto scheme : {WeightScheme::uniform, WeightScheme::local, WeightScheme::seasonal, WeightScheme::combined}) {
        auto w = parametrized_weights(scheme, 48, 0.0, 0.0, 24);
        normalize_weights(w);
        for (double x : w) CHECK(x == 1.0);
    }
    std::vector<double> phi(30, 0.3);
    phi[4] = 0.0;
    for (double x : pacf_weights(phi, 0.0)) CHECK(x == 1.0);
}

TEST_CASE("parametrized weights follow the scaling functions") {
    const auto local = parametrized_weights(WeightScheme::local, 20, 1.5, 0.0, 0.0, 0.5);
    const auto seas = parametrized_weights(WeightScheme::seasonal, 20, 0.0, 0.7, 7.0);
    const auto comb = parametrized_weights(WeightScheme::combined, 20, 1.5, 0.7, 7.0, 0.5);
    for (std::size_t j = 1; j <= 20; ++j) {
        CHECK(local[j - 1] == doctest::Approx(local_psf(j, 1.5, 20, 0.5)));
        CHECK(seas[j - 1] == doctest::Approx(seasonal_psf(j, 0.7, 7.0)));
        CHECK(comb[j - 1] == doctest::Approx(combined_psf(j, 0.7, 1.5, 7.0, 20, 0.5)));
    }
    CHECK_THROWS_AS(parametrized_weights(WeightScheme::seasonal, 20, 0.0, 0.7, 1.0), Error);
    CHECK_THROWS_AS(parametrized_weights(WeightScheme::pacf, 20, 0.0, 0.7, 7.0), Error);
}

TEST_CASE("scheme names round-trip") {
    for (auto s : {WeightScheme::uniform, WeightScheme::local, WeightScheme::seasonal, WeightScheme::combined,
                   WeightScheme::pacf})
        CHECK(parse_weight_scheme(to_string(s)) == s);
    for (auto m : {ExoMode::unpenalized, ExoMode::adaptive, ExoMode::uniform}) CHECK(parse_exo_mode(to_string(m)) == m);
    CHECK_THROWS_AS(parse_weight_scheme("ridge"), Error);
}

#include "sparselag/csv.hpp"
#include "sparselag/error.hpp"
#include "sparselag/forecast.hpp"
#include "sparselag/model_io.hpp"
#include "sparselag/simulate.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace sparselag;

namespace {

CsvTable parse(const std::string& text) {
    std::istringstream in(text);
    return read_csv(in);
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::ok;
}

}  // namespace

TEST_CASE("csv reading with quotes") {
    const auto t = parse("a,\"b,c\",d\n1,\"x \"\"q\"\"\",3\r\n4,5,6\n");
    REQUIRE(t.header == std::vector<std::string>{"a", "b,c", "d"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][1] == "x \"q\"");
    CHECK(t.rows[1][2] == "6");
    CHECK(t.column("d") == 2);
}

TEST_CASE("unknown columns list what is available") {
    const auto t = parse("time,y,temp\n1,2,3\n");
    try {
        t.column("load");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::config);
        const std::string msg = e.what();
        CHECK(msg.find("time") != std::string::npos);
        CHECK(msg.find("temp") != std::string::npos);
    }
}

TEST_CASE("malformed input is a parse error with the row") {
    CHECK(code_of([] { parse("a,b\n1,2\n3\n"); }) == ErrorCode::parse);
    const auto t = parse("y,x\n1,2\n2,oops\n3,4\n");
    SeriesColumns cols;
    cols.exog = {"x"};
    try {
        load_series(t, cols);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::parse);
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
    CHECK(code_of([&] { load_series(parse("y\n1\n\n3\n"), SeriesColumns{}); }) != ErrorCode::ok);
    CHECK(code_of([&] { load_series(parse("y\n1\nNA\n3\n"), SeriesColumns{}); }) == ErrorCode::parse);
}

TEST_CASE("series loading with numeric, categorical and time columns") {
    const auto t = parse("t,y,temp,month\n1,10,0.5,jan\n2,11,0.7,feb\n3,12,0.1,mar\n4,9,0.2,jan\n");
    SeriesColumns cols;
    cols.exog = {"temp"};
    cols.categorical = {{"month", "mar", {}}};
    cols.time = "t";
    const auto ts = load_series(t, cols);
    CHECK(ts.size() == 4);
    CHECK(ts.exog_names() == std::vector<std::string>{"temp", "month=jan", "month=feb"});
    CHECK(ts.exog()(3, 1) == 1.0);
    CHECK(ts.exog()(2, 1) == 0.0);
    CHECK(ts.exog()(2, 2) == 0.0);
    REQUIRE(ts.categorical().size() == 1);
    CHECK(ts.categorical()[0].baseline == "mar");

    const auto bad_time = parse("t,y\n1,1\n3,2\n2,3\n");
    SeriesColumns tc;
    tc.time = "t";
    CHECK(code_of([&] { load_series(bad_time, tc); }) == ErrorCode::parse);
    const auto iso = parse("t,y\n2024-01-01T00,1\n2024-01-01T01,2\n2024-01-01T02,3\n");
    CHECK(load_series(iso, tc).size() == 3);
}

TEST_CASE("fixed categorical levels reject unseen labels") {
    const auto t = parse("y,g\n1,a\n2,b\n3,z\n");
    SeriesColumns cols;
    cols.categorical = {{"g", "a", {"b"}}};
    CHECK(code_of([&] { load_series(t, cols); }) == ErrorCode::parse);
}

TEST_CASE("number formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 123456789.125, 0.0}) CHECK(std::stod(format_double(v)) == v);
    CHECK(format_double(NAN) == "NA");
    std::ostringstream out;
    write_csv_row(out, {"a", "b,c", "d\"e"});
    CHECK(out.str() == "a,\"b,c\",\"d\"\"e\"\n");
}

TEST_CASE("model files round-trip and are byte-stable") {
    SarSpec spec;
    spec.phi = {0.5};
    spec.theta = {0.3};
    spec.m = 12;
    spec.exog_effects = {{"h", RandomBlockGenerator{12, 0.1}, -1.0}};
    const auto ts = simulate_sar(spec, 1200);
    SrlOptions o;
    o.p_star = 30;
    ModelFile mf;
    mf.columns.exog = {"h"};
    mf.fit = fit_srl(ts.slice(0, 1000), o);
    mf.n_total = 1200;
    mf.train_fraction = 1000.0 / 1200.0;
    mf.seed = 42;
    const auto text = model_to_json(mf);
    CHECK(text == model_to_json(mf));
    const auto back = model_from_json(text);
    CHECK(model_to_json(back) == text);
    CHECK(back.fit.model.lag_coefs == mf.fit.model.lag_coefs);
    CHECK(back.fit.model.exog_coefs == mf.fit.model.exog_coefs);
    CHECK(back.fit.model.intercept == mf.fit.model.intercept);
    CHECK(back.fit.n_train == 1000);
    CHECK(back.seed == 42);
    const auto a = forecast_origins(mf.fit.model, ts, 1000, 5);
    const auto b = forecast_origins(back.fit.model, ts, 1000, 5);
    CHECK(a.rolling_sums == b.rolling_sums);
}

TEST_CASE("model loader rejects other major versions and garbage") {
    CHECK(code_of([] { model_from_json("not json"); }) == ErrorCode::model_format);
    CHECK(code_of([] { model_from_json("{\"format\":\"sparselag-model\",\"format_version\":\"2.0\"}"); }) ==
          ErrorCode::model_format);
    CHECK(code_of([] { model_from_json("{\"format\":\"other\",\"format_version\":\"1.0\"}"); }) ==
          ErrorCode::model_format);
    try {
        model_from_json("{\"format\":\"sparselag-model\",\"format_version\":\"3.1\"}");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
    CHECK(code_of([] { load_model("/nonexistent/model.json"); }) == ErrorCode::io);
}

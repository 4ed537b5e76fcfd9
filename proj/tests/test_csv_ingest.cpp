#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "streamodt/csv.hpp"
#include "streamodt/ingest.hpp"

using namespace streamodt;

namespace {

struct TempCsv {
    std::string path;
    explicit TempCsv(const std::string& content, const char* name) {
        path = std::string("/tmp/streamodt_test_") + name + ".csv";
        std::ofstream out(path);
        out << content;
    }
    ~TempCsv() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("csv reader handles quoting, escapes, and CRLF") {
    TempCsv f("a,b,c\r\n1,\"two, half\",\"say \"\"hi\"\"\"\n,,\n", "quoting");
    CsvReader r(f.path);
    auto header = r.next_row();
    REQUIRE(header.has_value());
    CHECK((*header) == std::vector<std::string>{"a", "b", "c"});
    auto row = r.next_row();
    REQUIRE(row.has_value());
    CHECK((*row)[1] == "two, half");
    CHECK((*row)[2] == "say \"hi\"");
    auto empties = r.next_row();
    REQUIRE(empties.has_value());
    CHECK(empties->size() == 3);
    CHECK_FALSE(r.next_row().has_value());
}

TEST_CASE("csv escape round-trips through the reader") {
    const std::string nasty = "line\nwith,\"all\" of it";
    TempCsv f("v\n" + csv_escape(nasty) + "\n", "escape");
    CsvReader r(f.path);
    r.next_row();
    auto row = r.next_row();
    REQUIRE(row.has_value());
    CHECK((*row)[0] == nasty);
}

TEST_CASE("unterminated quotes are an error with a row number") {
    TempCsv f("a\n\"oops\n", "unterminated");
    CsvReader r(f.path);
    r.next_row();
    CHECK_THROWS_WITH_AS(r.next_row(), doctest::Contains("row 2"), DataError);
}

TEST_CASE("timestamp parsing accepts epoch and civil forms") {
    CHECK(parse_timestamp("0") == 0);
    CHECK(parse_timestamp("3600") == 3600);
    CHECK(parse_timestamp("1970-01-01 01:00:00") == 3600);
    CHECK(parse_timestamp("1970-01-02T00:00") == 86400);
    CHECK(parse_timestamp("2010-01-01 00:00:00") == 1262304000);
    CHECK_THROWS_AS(parse_timestamp("yesterday"), DataError);
}

TEST_CASE("hourly mean resampling collapses minute data") {
    std::string content = "ts,load\n";
    for (int i = 0; i < 60; ++i)
        content += std::to_string(i * 60) + ",2.0\n"; // one hour of constant 2.0
    for (int i = 0; i < 60; ++i)
        content += std::to_string(3600 + i * 60) + "," + std::to_string(i % 2 ? 3.0 : 1.0) + "\n";
    TempCsv f(content, "hourly");

    DatasetSpec spec;
    spec.path = f.path;
    spec.timestamp_column = "ts";
    spec.target_column = "load";
    spec.resample = DatasetSpec::Resample::hourly_mean;
    spec.lags = {1};

    auto samples = ingest(spec);
    REQUIRE(samples.size() == 1); // two buckets, first consumed by the lag
    CHECK(samples[0].features[0] == doctest::Approx(2.0)); // lag-1 = first bucket mean
    CHECK(samples[0].target == doctest::Approx(2.0));      // mean of alternating 1/3
    CHECK(*samples[0].timestamp == 3600);
}

TEST_CASE("lag features follow the configured order") {
    TempCsv f("t,y\n0,1\n1,2\n2,3\n3,4\n", "lags");
    DatasetSpec spec;
    spec.path = f.path;
    spec.timestamp_column = "t";
    spec.target_column = "y";
    spec.lags = {1, 2};

    auto samples = ingest(spec);
    REQUIRE(samples.size() == 2);
    CHECK(samples[0].features == FeatureVector{2.0, 1.0});
    CHECK(samples[0].target == doctest::Approx(3.0));
    CHECK(samples[1].features == FeatureVector{3.0, 2.0});
    CHECK(samples[1].target == doctest::Approx(4.0));
}

TEST_CASE("calendar features encode hour and weekday") {
    // 1970-01-01 was a Thursday (weekday 3 with Monday = 0)
    TempCsv f("t,y\n0,1\n3600,2\n90000,3\n", "calendar");
    DatasetSpec spec;
    spec.path = f.path;
    spec.timestamp_column = "t";
    spec.target_column = "y";
    spec.lags = {1};
    spec.calendar_features = true;

    auto samples = ingest(spec);
    REQUIRE(samples.size() == 2);
    // features: [lag1, hour, dow]
    CHECK(samples[0].features == FeatureVector{1.0, 1.0, 3.0});
    CHECK(samples[1].features == FeatureVector{2.0, 1.0, 4.0}); // 90000s = Friday 01:00
}

TEST_CASE("raw feature columns pass through ahead of lags") {
    TempCsv f("y,a,b\n10,1,-1\n20,2,-2\n30,3,-3\n", "covariates");
    DatasetSpec spec;
    spec.path = f.path;
    spec.target_column = "y";
    spec.feature_columns = {"b", "a"};
    spec.lags = {1};

    auto samples = ingest(spec);
    REQUIRE(samples.size() == 2);
    CHECK(samples[0].features == FeatureVector{-2.0, 2.0, 10.0});
    CHECK(samples[1].features == FeatureVector{-3.0, 3.0, 20.0});
}

TEST_CASE("data errors carry row numbers and column names") {
    TempCsv bad_target("t,y\n0,1\n1,oops\n", "badtarget");
    DatasetSpec spec;
    spec.path = bad_target.path;
    spec.timestamp_column = "t";
    spec.target_column = "y";
    spec.lags = {1};
    CHECK_THROWS_WITH_AS(ingest(spec), doctest::Contains("row 3"), DataError);

    DatasetSpec missing = spec;
    missing.target_column = "nothere";
    CHECK_THROWS_WITH_AS(ingest(missing), doctest::Contains("nothere"), DataError);

    TempCsv backwards("t,y\n100,1\n50,2\n", "backwards");
    DatasetSpec nonmono = spec;
    nonmono.path = backwards.path;
    CHECK_THROWS_WITH_AS(ingest(nonmono), doctest::Contains("non-monotone"), DataError);

    TempCsv ragged("t,y\n0,1\n1\n", "ragged");
    DatasetSpec raggedspec = spec;
    raggedspec.path = ragged.path;
    CHECK_THROWS_WITH_AS(ingest(raggedspec), doctest::Contains("row 3"), DataError);
}

TEST_CASE("spec validation rejects inconsistent recipes") {
    DatasetSpec spec;
    spec.path = "x.csv";
    CHECK_THROWS_AS(spec.validate(), ConfigError); // no target

    spec.target_column = "y";
    CHECK_THROWS_AS(spec.validate(), ConfigError); // no features at all

    spec.resample = DatasetSpec::Resample::hourly_mean;
    spec.lags = {1};
    CHECK_THROWS_AS(spec.validate(), ConfigError); // resample without timestamps

    spec.timestamp_column = "t";
    CHECK_NOTHROW(spec.validate());

    spec.lags = {0};
    CHECK_THROWS_AS(spec.validate(), ConfigError); // zero lag
}

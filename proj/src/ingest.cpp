#include "streamodt/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "streamodt/csv.hpp"

namespace streamodt {

void DatasetSpec::validate() const {
    if (path.empty()) throw ConfigError("dataset.path is required");
    if (target_column.empty()) throw ConfigError("dataset.target_column is required");
    if (resample != Resample::none && timestamp_column.empty())
        throw ConfigError("hourly resampling needs dataset.timestamp_column");
    if (calendar_features && timestamp_column.empty())
        throw ConfigError("calendar features need dataset.timestamp_column");
    if (!timestamp_column.empty() && feature_columns.empty() && lags.empty())
        throw ConfigError("time-series datasets need non-empty dataset.lags");
    if (feature_columns.empty() && lags.empty() && !calendar_features)
        throw ConfigError("no features configured: set feature_columns, lags, or calendar_features");
    for (const std::size_t l : lags)
        if (l == 0) throw ConfigError("dataset.lags entries must be positive");
}

namespace {

double parse_double(const std::string& text, const char* what, std::size_t row) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw DataError(std::string("cannot parse ") + what + " '" + text + "' at row " +
                        std::to_string(row));
    if (!std::isfinite(value))
        throw DataError(std::string("non-finite ") + what + " at row " + std::to_string(row));
    return value;
}

// Days since 1970-01-01 for a civil date (valid for the Gregorian calendar).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name,
                         const std::string& path) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError(path + ": missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

struct RawRow {
    std::int64_t timestamp = 0;
    double target = 0.0;
    std::vector<double> covariates;
};

} // namespace

std::int64_t parse_timestamp(const std::string& text) {
    // integer epoch seconds
    {
        const char* begin = text.data();
        const char* end = begin + text.size();
        std::int64_t value = 0;
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec == std::errc{} && ptr == end) return value;
    }
    // YYYY-MM-DD HH:MM[:SS]
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    const int got = std::sscanf(text.c_str(), "%d-%d-%d%*1[T ]%d:%d:%d", &y, &mo, &d, &h, &mi, &s);
    if (got < 5 || mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60)
        throw DataError("cannot parse timestamp '" + text + "'");
    return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
}

std::vector<Sample> ingest(const DatasetSpec& spec) {
    spec.validate();

    CsvReader reader(spec.path);
    const auto header_row = reader.next_row();
    if (!header_row) throw DataError(spec.path + ": empty file");
    const auto& header = *header_row;

    const bool with_ts = !spec.timestamp_column.empty();
    const std::size_t ts_col = with_ts ? column_index(header, spec.timestamp_column, spec.path) : 0;
    const std::size_t target_col = column_index(header, spec.target_column, spec.path);
    std::vector<std::size_t> covariate_cols;
    covariate_cols.reserve(spec.feature_columns.size());
    for (const auto& name : spec.feature_columns)
        covariate_cols.push_back(column_index(header, name, spec.path));

    std::vector<RawRow> rows;
    while (auto fields = reader.next_row()) {
        const std::size_t row = reader.row_number();
        if (fields->size() != header.size())
            throw DataError(spec.path + ": expected " + std::to_string(header.size()) +
                            " fields, got " + std::to_string(fields->size()) + " at row " +
                            std::to_string(row));
        RawRow r;
        r.target = parse_double((*fields)[target_col], "target", row);
        if (with_ts) {
            try {
                r.timestamp = parse_timestamp((*fields)[ts_col]);
            } catch (const DataError& e) {
                throw DataError(spec.path + ": " + e.what() + " at row " + std::to_string(row));
            }
            if (!rows.empty() && r.timestamp < rows.back().timestamp)
                throw DataError(spec.path + ": non-monotone timestamp at row " +
                                std::to_string(row));
        }
        r.covariates.reserve(covariate_cols.size());
        for (std::size_t c = 0; c < covariate_cols.size(); ++c)
            r.covariates.push_back(
                parse_double((*fields)[covariate_cols[c]], spec.feature_columns[c].c_str(), row));
        rows.push_back(std::move(r));
    }

    // hourly resampling: aggregate target per bucket, covariates by mean
    if (spec.resample != DatasetSpec::Resample::none) {
        std::vector<RawRow> buckets;
        std::size_t i = 0;
        while (i < rows.size()) {
            const std::int64_t bucket = floor_div(rows[i].timestamp, 3600);
            double target_acc = 0.0;
            std::vector<double> cov_acc(covariate_cols.size(), 0.0);
            std::size_t count = 0;
            while (i < rows.size() && floor_div(rows[i].timestamp, 3600) == bucket) {
                target_acc += rows[i].target;
                for (std::size_t c = 0; c < cov_acc.size(); ++c)
                    cov_acc[c] += rows[i].covariates[c];
                ++count;
                ++i;
            }
            RawRow r;
            r.timestamp = bucket * 3600;
            r.target = spec.resample == DatasetSpec::Resample::hourly_mean
                           ? target_acc / static_cast<double>(count)
                           : target_acc;
            for (double& v : cov_acc) v /= static_cast<double>(count);
            r.covariates = std::move(cov_acc);
            buckets.push_back(std::move(r));
        }
        rows = std::move(buckets);
    }

    const std::size_t max_lag = spec.lags.empty() ? 0 : *std::max_element(spec.lags.begin(),
                                                                          spec.lags.end());
    std::vector<Sample> out;
    if (rows.size() <= max_lag) return out;
    out.reserve(rows.size() - max_lag);

    for (std::size_t t = max_lag; t < rows.size(); ++t) {
        FeatureVector x;
        x.reserve(rows[t].covariates.size() + spec.lags.size() + (spec.calendar_features ? 2 : 0));
        for (const double v : rows[t].covariates) x.push_back(v);
        for (const std::size_t l : spec.lags) x.push_back(rows[t - l].target);
        if (spec.calendar_features) {
            const std::int64_t ts = rows[t].timestamp;
            const std::int64_t sec_of_day = ts - floor_div(ts, 86400) * 86400;
            x.push_back(static_cast<double>(sec_of_day / 3600));                        // hour 0..23
            x.push_back(static_cast<double>(((floor_div(ts, 86400) + 3) % 7 + 7) % 7)); // 0 = Monday
        }
        Sample s{std::move(x), rows[t].target,
                 with_ts ? std::optional<std::int64_t>(rows[t].timestamp) : std::nullopt};
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace streamodt

#pragma once
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "streamodt/errors.hpp"

namespace streamodt {

// RFC-4180 reader: comma separation, double-quote quoting with "" escapes,
// CRLF or LF endings, quoted fields may span lines. Rows are 1-based and
// reported in parse errors.
class CsvReader {
public:
    explicit CsvReader(const std::string& path);

    std::optional<std::vector<std::string>> next_row();
    std::size_t row_number() const { return row_; }

private:
    std::ifstream in_;
    std::string path_;
    std::size_t row_ = 0;
};

// Quotes a field when it contains a comma, quote, or newline.
std::string csv_escape(const std::string& field);

} // namespace streamodt

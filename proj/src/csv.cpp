#include "streamodt/csv.hpp"

namespace streamodt {

CsvReader::CsvReader(const std::string& path) : in_(path), path_(path) {
    if (!in_) throw DataError("cannot open file: " + path);
}

std::optional<std::vector<std::string>> CsvReader::next_row() {
    if (in_.peek() == std::ifstream::traits_type::eof()) return std::nullopt;
    ++row_;

    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;

    int ci;
    while ((ci = in_.get()) != std::ifstream::traits_type::eof()) {
        const char c = static_cast<char>(ci);
        if (quoted) {
            if (c == '"') {
                if (in_.peek() == '"') {
                    field.push_back('"');
                    in_.get();
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        if (c == '"') {
            if (!field.empty())
                throw DataError(path_ + ": stray quote mid-field at row " + std::to_string(row_));
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            was_quoted = false;
        } else if (c == '\n') {
            break;
        } else if (c == '\r') {
            if (in_.peek() == '\n') in_.get();
            break;
        } else {
            field.push_back(c);
        }
    }
    if (quoted) throw DataError(path_ + ": unterminated quote at row " + std::to_string(row_));

    fields.push_back(std::move(field));
    if (fields.size() == 1 && fields[0].empty() && !was_quoted) {
        // blank line (commonly a trailing newline): skip to the next record
        return next_row();
    }
    return fields;
}

std::string csv_escape(const std::string& field) {
    bool needs_quotes = false;
    for (const char c : field)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') needs_quotes = true;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

} // namespace streamodt

#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace ptchron {

/// RFC 4180 reader. Fields may be quoted and contain embedded commas,
/// quotes ("" escape) and newlines, which edit logs rely on heavily since
/// inserted text routinely spans lines.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    /// Reads one record. Returns nullopt at end of input.
    /// `line` receives the 1-based line number the record started on.
    std::optional<std::vector<std::string>> next(size_t& line);

private:
    std::istream& in_;
    size_t line_ = 0;
};

std::string csv_quote(const std::string& field);

}  // namespace ptchron

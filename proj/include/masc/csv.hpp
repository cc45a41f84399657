#pragma once

#include <string>
#include <vector>

namespace masc {

/// Parsed CSV contents: header row plus data rows, all as strings.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column_index(const std::string& name) const;
};

/// Reads an RFC-4180 CSV file (quoted fields, embedded commas/newlines,
/// doubled quotes). The first record is the header.
CsvTable read_csv(const std::string& path);

/// Quotes a field when it contains a comma, quote, or newline.
std::string csv_escape(const std::string& field);

} // namespace masc

#include "masc/csv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace masc {

int CsvTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open CSV file: " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    CsvTable table;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool record_has_data = false;

    auto end_field = [&]() {
        record.push_back(field);
        field.clear();
    };
    auto end_record = [&]() {
        end_field();
        if (table.header.empty()) {
            table.header = std::move(record);
        } else {
            table.rows.push_back(std::move(record));
        }
        record.clear();
        record_has_data = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            in_quotes = true;
            record_has_data = true;
        } else if (c == ',') {
            end_field();
            record_has_data = true;
        } else if (c == '\r') {
            // handled with the following \n; bare \r also terminates
            if (i + 1 < text.size() && text[i + 1] == '\n') continue;
            if (record_has_data || !field.empty() || !record.empty()) end_record();
        } else if (c == '\n') {
            if (record_has_data || !field.empty() || !record.empty()) end_record();
        } else {
            field.push_back(c);
            record_has_data = true;
        }
    }
    if (record_has_data || !field.empty() || !record.empty()) end_record();

    if (in_quotes) {
        throw std::runtime_error("unterminated quoted field in CSV file: " + path);
    }
    if (table.header.empty()) {
        throw std::runtime_error("empty CSV file: " + path);
    }
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (table.rows[r].size() != table.header.size()) {
            throw std::runtime_error(path + ": row " + std::to_string(r + 2) + " has " +
                                     std::to_string(table.rows[r].size()) + " fields, expected " +
                                     std::to_string(table.header.size()));
        }
    }
    return table;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

} // namespace masc
